#include "gedspan/spans.hpp"

#include <gtest/gtest.h>

#include "gedspan/annotation.hpp"
#include "gedspan/error.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace gedspan {
namespace {

using testing::Rng;

SpanSet S(std::vector<ErrorSpan> spans, std::size_t len = 20) {
  return SpanSet::Make(std::move(spans), len);
}

std::vector<ErrorSpan> V(const SpanSet& s) { return s.spans(); }

TEST(SpanSet, MakeSortsAndMergesAdjacent) {
  EXPECT_EQ(V(S({{5, 7}, {0, 2}})), (std::vector<ErrorSpan>{{0, 2}, {5, 7}}));
  EXPECT_EQ(V(S({{0, 2}, {2, 4}})), (std::vector<ErrorSpan>{{0, 4}}));
  EXPECT_EQ(V(S({{3, 3}, {3, 3}})), (std::vector<ErrorSpan>{{3, 3}}));
  EXPECT_EQ(V(S({{3, 5}, {3, 3}, {5, 5}})),
            (std::vector<ErrorSpan>{{3, 3}, {3, 5}, {5, 5}}));
}

TEST(SpanSet, MakeRejectsInvalid) {
  EXPECT_THROW(S({{0, 4}, {2, 6}}), InvalidInput);
  EXPECT_THROW(S({{0, 4}, {0, 4}}), InvalidInput);
  EXPECT_THROW(S({{5, 3}}), InvalidInput);
  EXPECT_THROW(S({{0, 21}}), InvalidInput);
  EXPECT_THROW(S({{0, 4}, {2, 2}}), InvalidInput);
}

TEST(SpanSet, NormalizeMergesAndDropsInteriorPoints) {
  const auto s = SpanSet::Normalize({{0, 4}, {2, 6}, {3, 3}, {6, 6}, {8, 9}}, 10);
  EXPECT_EQ(V(s), (std::vector<ErrorSpan>{{0, 6}, {6, 6}, {8, 9}}));
  EXPECT_THROW(SpanSet::Normalize({{0, 11}}, 10), InvalidInput);
}

TEST(SpanSet, NormalizeIsFixpoint) {
  Rng rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t len = rng() % 30;
    std::vector<ErrorSpan> raw;
    for (int k = 0; k < 8; ++k) {
      const std::size_t s = rng() % (len + 1);
      const std::size_t e = s + rng() % (len - s + 1);
      raw.push_back({s, e});
    }
    const SpanSet once = SpanSet::Normalize(raw, len);
    EXPECT_EQ(SpanSet::Normalize(once.spans(), len), once);
    EXPECT_EQ(SpanSet::Make(once.spans(), len), once);
  }
}

TEST(SpanAlgebra, UnionExamples) {
  const std::vector<SpanSet> a{S({{0, 4}}), S({{2, 6}})};
  EXPECT_EQ(V(SpanUnion(a)), (std::vector<ErrorSpan>{{0, 6}}));
  const std::vector<SpanSet> b{S({{0, 4}}), S({{0, 4}})};
  EXPECT_EQ(V(SpanUnion(b)), (std::vector<ErrorSpan>{{0, 4}}));
  const std::vector<SpanSet> c{S({{3, 3}}), S({})};
  EXPECT_EQ(V(SpanUnion(c)), (std::vector<ErrorSpan>{{3, 3}}));
}

TEST(SpanAlgebra, IntersectionExamples) {
  const std::vector<SpanSet> a{S({{0, 4}}), S({{2, 6}})};
  EXPECT_EQ(V(SpanIntersection(a)), (std::vector<ErrorSpan>{{2, 4}}));
  const std::vector<SpanSet> b{S({{0, 4}}), S({})};
  EXPECT_TRUE(SpanIntersection(b).empty());
  const std::vector<SpanSet> c{S({{3, 3}}), S({{3, 3}})};
  EXPECT_EQ(V(SpanIntersection(c)), (std::vector<ErrorSpan>{{3, 3}}));
  const std::vector<SpanSet> d{S({{3, 3}}), S({{4, 4}})};
  EXPECT_TRUE(SpanIntersection(d).empty());
}

TEST(SpanAlgebra, UnionSwallowsPointInsideRegion) {
  const std::vector<SpanSet> sets{S({{3, 3}}), S({{1, 5}})};
  EXPECT_EQ(V(SpanUnion(sets)), (std::vector<ErrorSpan>{{1, 5}}));
}

TEST(SpanAlgebra, RejectsMismatchedLengthsAndEmptyList) {
  const std::vector<SpanSet> sets{SpanSet(5), SpanSet(6)};
  EXPECT_THROW(SpanUnion(sets), InvalidInput);
  EXPECT_THROW(SpanIntersection(sets), InvalidInput);
  EXPECT_THROW(SpanUnion(std::span<const SpanSet>{}), InvalidInput);
}

TEST(SpanAlgebra, AgreesWithCharacterSetOracle) {
  Rng rng(11);
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t len = rng() % 25;
    std::vector<SpanSet> sets;
    const std::size_t n = 1 + rng() % 3;
    for (std::size_t k = 0; k < n; ++k) sets.push_back(testing::RandomSpanSet(rng, len));
    EXPECT_EQ(V(SpanUnion(sets)), testing::FromCharSet(testing::UnionOracle(sets)));
    EXPECT_EQ(V(SpanIntersection(sets)),
              testing::FromCharSet(testing::IntersectionOracle(sets)));
  }
}

TEST(Serialization, AnnotatedExamples) {
  EXPECT_EQ(ToAnnotated("ab cd ef", S({{3, 5}}, 8)), "ab $cd$ ef");
  EXPECT_EQ(ToAnnotated("abc", S({{3, 3}}, 3)), "abc$$");
  EXPECT_EQ(ToAnnotated("abc", S({}, 3)), "abc");
  EXPECT_EQ(ToAnnotated("ab cd ef", S({{3, 3}, {3, 5}, {5, 5}}, 8)), "ab $$$cd$$$ ef");
  EXPECT_THROW(ToAnnotated("abcd", S({}, 3)), InvalidInput);
}

TEST(Serialization, AnnotatedCountsCodepoints) {
  // "আমি ভাত" is 7 scalar values; the second word is [4, 7).
  EXPECT_EQ(ToAnnotated("আমি ভাত", S({{4, 7}}, 7)), "আমি $ভাত$");
}

TEST(Serialization, SpanListExamples) {
  EXPECT_EQ(ToSpanListString(S({{0, 4}, {10, 14}})), "[(0, 4), (10, 14)]");
  EXPECT_EQ(ToSpanListString(S({})), "[]");
  EXPECT_EQ(ToSpanListString(S({{3, 3}})), "[(3, 3)]");
}

TEST(Serialization, SpanListParse) {
  EXPECT_EQ(ParseSpanListString("[(0, 4), (10, 14)]"),
            (std::vector<ErrorSpan>{{0, 4}, {10, 14}}));
  EXPECT_EQ(ParseSpanListString(" [ ] "), std::vector<ErrorSpan>{});
  EXPECT_EQ(ParseSpanListString("[(3,3)]"), (std::vector<ErrorSpan>{{3, 3}}));
  EXPECT_THROW(ParseSpanListString("[(1, 2)"), InvalidInput);
  EXPECT_THROW(ParseSpanListString("[(1, -2)]"), InvalidInput);
  EXPECT_THROW(ParseSpanListString("[(1, 2)] x"), InvalidInput);
}

TEST(Serialization, SpanListRoundTrip) {
  Rng rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const SpanSet s = testing::RandomSpanSet(rng, rng() % 40, 8);
    EXPECT_EQ(SpanSet::Make(ParseSpanListString(ToSpanListString(s)), s.text_len()), s);
  }
}

TEST(Serialization, ModeNames) {
  EXPECT_EQ(ParseSerializationMode("annotated"), SerializationMode::kAnnotatedText);
  EXPECT_EQ(ParseSerializationMode("spanlist"), SerializationMode::kSpanListString);
  EXPECT_THROW(ParseSerializationMode("json"), InvalidInput);
  EXPECT_EQ(ToString(SerializationMode::kSpanListString), "spanlist");
}

}  // namespace
}  // namespace gedspan
