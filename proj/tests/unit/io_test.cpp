#include "gedspan/io.hpp"

#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "gedspan/error.hpp"
#include "generators.hpp"

namespace gedspan::io {
namespace {

TEST(Csv, QuotingRoundTrip) {
  testing::Rng rng(81);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<CsvRow> rows;
    for (int r = 0; r < 4; ++r) {
      CsvRow row;
      for (int c = 0; c < 3; ++c) {
        std::string f = testing::RandomText(rng, 8);
        if (rng() % 3 == 0) f += ",\"x\"\n";
        row.push_back(f);
      }
      rows.push_back(row);
    }
    std::ostringstream out;
    for (const auto& r : rows) WriteCsvRow(out, r);
    const auto parsed = ParseCsv(out.str());
    ASSERT_EQ(parsed.size(), rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) ASSERT_EQ(parsed[k].fields, rows[k]);
  }
}

TEST(Csv, LineNumbersAndErrors) {
  const auto rows = ParseCsv("a,b\n\"x\ny\",z\nc,d\n");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1].line, 2u);
  EXPECT_EQ(rows[2].line, 4u);
  EXPECT_THROW(ParseCsv("a,\"b\n"), DataError);
  EXPECT_THROW(ParseCsv("a,\"b\"c\n"), DataError);
}

TEST(Corpus, CsvAndPlainLines) {
  const auto csv = ParseCorpus("id,text\n7,\"hello, world\"\n8,আমি\n");
  ASSERT_EQ(csv.size(), 2u);
  EXPECT_EQ(csv[0].id, "7");
  EXPECT_EQ(csv[0].text, "hello, world");
  const auto plain = ParseCorpus("first line\r\nsecond\n");
  ASSERT_EQ(plain.size(), 2u);
  EXPECT_EQ(plain[1].id, "2");
  EXPECT_EQ(plain[1].text, "second");
  EXPECT_EQ(ParseCorpus(FormatCorpus(csv))[0].text, "hello, world");
  EXPECT_THROW(ParseCorpus("id,text\n1,a,b\n"), DataError);
}

TEST(SpansCsv, RoundTrip) {
  const std::vector<PredictedDoc> docs{{"a", SpanSet::Make({{0, 4}, {6, 6}}, 8)},
                                       {"b", SpanSet(3)}};
  const std::string text = FormatSpansCsv(docs);
  EXPECT_EQ(text, "id,spans\na,\"[(0, 4), (6, 6)]\"\nb,[]\n");
  const auto parsed = ParseSpansCsv(text);
  ASSERT_EQ(parsed.size(), 2u);
  EXPECT_EQ(parsed[0].spans, docs[0].spans.spans());
  EXPECT_TRUE(parsed[1].spans.empty());
}

TEST(SpansCsv, Errors) {
  EXPECT_THROW(ParseSpansCsv("id,text\n"), DataError);
  try {
    ParseSpansCsv("id,spans\na,[]\nb,\"[(1,\"\n", "p.csv");
    FAIL();
  } catch (const DataError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.source(), "p.csv");
  }
}

TEST(Predictions, ParseAndFormat) {
  const std::string line =
      R"({"id":"d1","text":"ab cd","tokens":[{"start":0,"end":2,"probs":{"O":0.9,"B":0.1,"I":0,"M":0}},)"
      R"({"start":3,"end":5,"probs":{"O":0,"B":1,"I":0,"M":0}}]})";
  const auto docs = ParsePredictions(line + "\n\n");
  ASSERT_EQ(docs.size(), 1u);
  EXPECT_EQ(docs[0].id, "d1");
  ASSERT_EQ(docs[0].tokens.size(), 2u);
  EXPECT_DOUBLE_EQ(docs[0].tokens[0].probs[1], 0.1);
  const auto again = ParsePredictions(FormatPrediction(docs[0]));
  EXPECT_EQ(again[0].tokens[1].end, 5u);
}

TEST(Predictions, SchemaViolationsCarryLineNumbers) {
  const std::string good = R"({"id":"a","text":"x","tokens":[]})";
  const std::vector<std::string> bad = {
      R"({"id":"b","text":"x"})",
      R"({"id":"b","text":"x","tokens":[{"start":0,"end":1,"probs":{"O":1,"B":0,"I":0}}]})",
      R"({"id":"b","text":"x","tokens":[{"start":0,"end":2,"probs":{"O":1,"B":0,"I":0,"M":0}}]})",
      R"({"id":"b","text":"x","tokens":[{"start":-1,"end":1,"probs":{"O":1,"B":0,"I":0,"M":0}}]})",
      R"({"id":"b","text":"x","tokens":[{"start":0,"end":1,"probs":{"O":0.5,"B":0,"I":0,"M":0}}]})",
      R"({"id":3,"text":"x","tokens":[]})",
      "not json",
  };
  for (const auto& b : bad) {
    try {
      ParsePredictions(good + "\n" + b + "\n", "p.jsonl");
      FAIL() << b;
    } catch (const DataError& e) {
      EXPECT_EQ(e.line(), 2u) << b;
      EXPECT_NE(std::string(e.what()).find("p.jsonl:2"), std::string::npos);
    }
  }
}

TEST(LabeledDocJson, Schema) {
  const auto doc = MakeLabeledDoc("5", "ab $cd$ ef$$");
  const auto j = nlohmann::json::parse(FormatLabeledDoc(doc));
  EXPECT_EQ(j["id"], "5");
  EXPECT_EQ(j["text"], "ab cd ef");
  EXPECT_EQ(j["token_offsets"], nlohmann::json::parse("[[0,2],[3,5],[6,8]]"));
  EXPECT_EQ(j["labels"], nlohmann::json::parse(R"(["O","B","M"])"));
  EXPECT_EQ(j["proxy_label"], 0);
}

TEST(Report, Formats) {
  EvalReport r;
  r.per_doc = {{"a", 2}, {"b,c", 0}};
  r.mean_distance = 1.0;
  r.serialization = SerializationMode::kSpanListString;
  EXPECT_EQ(FormatReportCsv(r), "id,distance\na,2\n\"b,c\",0\n");
  const auto j = nlohmann::json::parse(FormatReportSummary(r));
  EXPECT_DOUBLE_EQ(j["mean"].get<double>(), 1.0);
  EXPECT_EQ(j["count"], 2);
  EXPECT_EQ(j["serialization"], "spanlist");
}

}  // namespace
}  // namespace gedspan::io
