#pragma once

// File formats shared by the command-line tool and the tests.
//
// Corpus:      CSV with header `id,text`, or plain UTF-8 with one text per
//              line (ids are 1-based line numbers).
// Spans CSV:   header `id,spans`; spans column holds "[(s, e), ...]".
// Predictions: JSONL, one object per document:
//              {"id": str, "text": str, "tokens": [{"start": int, "end": int,
//               "probs": {"O": f, "B": f, "I": f, "M": f}}]}
// Labels:      JSONL, {"id", "text", "token_offsets": [[s, e], ...],
//              "labels": ["O"|"B"|"I"|"M", ...], "proxy_label": 0|1}
// All offsets count Unicode scalar values.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "gedspan/annotation.hpp"
#include "gedspan/decode.hpp"
#include "gedspan/eval.hpp"
#include "gedspan/spans.hpp"

namespace gedspan::io {

using CsvRow = std::vector<std::string>;

// RFC 4180: quoted fields may contain commas, quotes ("") and newlines.
// Returns rows with their 1-based starting line numbers.
struct CsvRecord {
  std::size_t line = 0;
  CsvRow fields;
};
std::vector<CsvRecord> ParseCsv(std::string_view contents,
                                const std::string& source = "<csv>");
std::string CsvEscape(std::string_view field);
void WriteCsvRow(std::ostream& out, const CsvRow& row);

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view contents);

struct CorpusRecord {
  std::string id;
  std::string text;
};

std::vector<CorpusRecord> ParseCorpus(std::string_view contents,
                                      const std::string& source = "<corpus>");
std::vector<CorpusRecord> LoadCorpus(const std::filesystem::path& path);
std::string FormatCorpus(const std::vector<CorpusRecord>& records);

struct SpanRecord {
  std::string id;
  std::vector<ErrorSpan> spans;
};

std::vector<SpanRecord> ParseSpansCsv(std::string_view contents,
                                      const std::string& source = "<spans>");
std::vector<SpanRecord> LoadSpansCsv(const std::filesystem::path& path);
std::string FormatSpansCsv(const std::vector<PredictedDoc>& docs);

// Schema violations raise DataError with the offending line number.
std::vector<PredictionDoc> ParsePredictions(std::string_view contents,
                                            const std::string& source = "<predictions>");
std::vector<PredictionDoc> LoadPredictions(const std::filesystem::path& path);
std::string FormatPrediction(const PredictionDoc& doc);

std::string FormatLabeledDoc(const LabeledDoc& doc);

// `id,distance` rows.
std::string FormatReportCsv(const EvalReport& report);
// {"mean": f, "count": n, "serialization": "annotated"|"spanlist"}
std::string FormatReportSummary(const EvalReport& report);

}  // namespace gedspan::io
