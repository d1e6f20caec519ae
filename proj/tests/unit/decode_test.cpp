#include "gedspan/decode.hpp"

#include <gtest/gtest.h>

#include "gedspan/error.hpp"
#include "gedspan/utf8.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace gedspan {
namespace {

using L = TokenLabel;
using testing::Rng;

ClassProbs OneHot(L l) {
  ClassProbs p{0, 0, 0, 0};
  p[static_cast<std::size_t>(l)] = 1.0;
  return p;
}

TEST(ApplyThreshold, Examples) {
  const ClassProbs p{0.25, 0.40, 0.20, 0.15};
  EXPECT_EQ(ApplyThreshold(p, 0.5), L::kO);
  EXPECT_EQ(ApplyThreshold(p, 0.3), L::kB);
  EXPECT_EQ(ApplyThreshold(p, 0.0), L::kB);
  EXPECT_EQ(ApplyThreshold({0.1, 0.1, 0.1, 0.7}, 0.0), L::kM);
}

TEST(ApplyThreshold, ThresholdIsInclusive) {
  EXPECT_EQ(ApplyThreshold({0.2, 0.0, 0.8, 0.0}, 0.8), L::kI);
}

TEST(ApplyThreshold, TiesPreferEarlierClass) {
  EXPECT_EQ(ApplyThreshold({0.25, 0.25, 0.25, 0.25}, 0.0), L::kO);
  EXPECT_EQ(ApplyThreshold({0.0, 0.5, 0.5, 0.0}, 0.0), L::kB);
  EXPECT_EQ(ApplyThreshold({0.0, 0.2, 0.4, 0.4}, 0.0), L::kI);
}

TEST(ApplyThreshold, RejectsBadInput) {
  EXPECT_THROW(ApplyThreshold({0.5, 0.5, 0.5, 0.0}, 0.5), InvalidInput);
  EXPECT_THROW(ApplyThreshold({-0.1, 0.6, 0.5, 0.0}, 0.5), InvalidInput);
  EXPECT_THROW(ApplyThreshold({1.0, 0.0, 0.0, 0.0}, 1.5), InvalidInput);
  EXPECT_NO_THROW(ApplyThreshold({0.999995, 0.0, 0.0, 0.0}, 0.5));
}

TEST(DecodeSpans, Examples) {
  PredictionDoc a{"a", "ab cd ef",
                  {{0, 2, OneHot(L::kO)}, {3, 5, OneHot(L::kB)}, {6, 8, OneHot(L::kI)}}};
  EXPECT_EQ(DecodeSpans(a, {.threshold = 0.0}).spans(), (std::vector<ErrorSpan>{{3, 8}}));
  PredictionDoc b{"b", "abc", {{0, 3, OneHot(L::kM)}}};
  EXPECT_EQ(DecodeSpans(b, {.threshold = 0.0}).spans(), (std::vector<ErrorSpan>{{3, 3}}));
  PredictionDoc c{"c", "ab cd", {{0, 2, OneHot(L::kO)}, {3, 5, OneHot(L::kO)}}};
  EXPECT_TRUE(DecodeSpans(c, {.threshold = 0.0}).empty());
}

TEST(DecodeSpans, RunsBreakOnBAndNonErrorTokens) {
  PredictionDoc d{"d", "ab cd ef gh",
                  {{0, 2, OneHot(L::kB)},
                   {3, 5, OneHot(L::kB)},
                   {6, 8, OneHot(L::kO)},
                   {9, 11, OneHot(L::kI)}}};
  EXPECT_EQ(DecodeSpans(d, {.threshold = 0.0}).spans(),
            (std::vector<ErrorSpan>{{0, 2}, {3, 5}, {9, 11}}));
  EXPECT_EQ(DecodeSpans(d, {.threshold = 0.0, .strict_inside = true}).spans(),
            (std::vector<ErrorSpan>{{0, 2}, {3, 5}}));
}

TEST(DecodeSpans, ThresholdSuppressesWeakErrors) {
  PredictionDoc d{"d", "ab cd", {{0, 2, {0.3, 0.7, 0.0, 0.0}}, {3, 5, {0.1, 0.0, 0.9, 0.0}}}};
  EXPECT_EQ(DecodeSpans(d, {.threshold = 0.5}).spans(), (std::vector<ErrorSpan>{{0, 5}}));
  EXPECT_EQ(DecodeSpans(d, {.threshold = 0.8}).spans(), (std::vector<ErrorSpan>{{3, 5}}));
  EXPECT_TRUE(DecodeSpans(d, {.threshold = 0.95}).empty());
}

TEST(DecodeSpans, OffsetsAreCodepoints) {
  PredictionDoc d{"d", "আমি ভাত", {{4, 7, OneHot(L::kB)}}};
  const SpanSet s = DecodeSpans(d);
  EXPECT_EQ(s.text_len(), 7u);
  EXPECT_EQ(s.spans(), (std::vector<ErrorSpan>{{4, 7}}));
}

TEST(DecodeSpans, ValidatesDocument) {
  PredictionDoc out_of_range{"x", "abc", {{0, 4, OneHot(L::kO)}}};
  EXPECT_THROW(DecodeSpans(out_of_range), InvalidInput);
  PredictionDoc overlapping{"x", "abcd", {{0, 2, OneHot(L::kO)}, {1, 3, OneHot(L::kO)}}};
  EXPECT_THROW(DecodeSpans(overlapping), InvalidInput);
  PredictionDoc empty_token{"x", "abc", {{1, 1, OneHot(L::kO)}}};
  EXPECT_THROW(DecodeSpans(empty_token), InvalidInput);
  PredictionDoc bad_probs{"x", "abc", {{0, 1, {0.5, 0.0, 0.0, 0.0}}}};
  EXPECT_THROW(DecodeSpans(bad_probs), InvalidInput);
}

TEST(DecodeSpans, ThresholdMonotone) {
  Rng rng(41);
  for (int trial = 0; trial < 2000; ++trial) {
    const PredictionDoc doc = testing::RandomPredictionDoc(rng, 40);
    const double t1 = static_cast<double>(rng() % 101) / 100.0;
    const double t2 = std::min(1.0, t1 + static_cast<double>(rng() % 50) / 100.0);
    for (bool strict : {false, true}) {
      const auto lo = testing::ToCharSet(DecodeSpans(doc, {t1, strict}));
      const auto hi = testing::ToCharSet(DecodeSpans(doc, {t2, strict}));
      ASSERT_TRUE(testing::IsSubset(hi, lo));
    }
  }
}

TEST(DecodeSpans, RelabelReproducesThresholdedLabels) {
  Rng rng(43);
  for (int trial = 0; trial < 2000; ++trial) {
    const PredictionDoc doc = testing::RandomPredictionDoc(rng, 40);
    const double t = static_cast<double>(rng() % 101) / 100.0;
    std::vector<TokenOffset> tokens;
    std::vector<L> expected;
    bool in_run = false;
    for (const auto& tp : doc.tokens) {
      tokens.push_back({tp.start, tp.end});
      L l = ApplyThreshold(tp.probs, t);
      if (l == L::kI && !in_run) l = L::kB;
      in_run = l == L::kB || l == L::kI;
      expected.push_back(l);
    }
    const SpanSet spans = DecodeSpans(doc, {.threshold = t});
    std::vector<L> got;
    try {
      got = LabelTokens(spans, tokens);
    } catch (const LabelingError&) {
      FAIL() << "decoded insertion point without a carrier";
    }
    // Tokens separated by no gap merge into one run, and an M token
    // directly before a region loses its point to the region start only
    // when the point is swallowed; compare on the runs that stay apart.
    for (std::size_t k = 0; k < tokens.size(); ++k) {
      const bool touches_prev = k > 0 && tokens[k - 1].end == tokens[k].start;
      if (touches_prev && expected[k] == L::kB &&
          (expected[k - 1] == L::kB || expected[k - 1] == L::kI)) {
        expected[k] = L::kI;
      }
    }
    ASSERT_EQ(got, expected);
  }
}

}  // namespace
}  // namespace gedspan
