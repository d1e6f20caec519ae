#include "gedspan/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gedspan/error.hpp"
#include "gedspan/utf8.hpp"

namespace gedspan::io {

using nlohmann::json;

std::vector<CsvRecord> ParseCsv(std::string_view contents,
                                const std::string& source) {
  std::vector<CsvRecord> rows;
  std::size_t line = 1;
  std::size_t i = 0;
  const std::size_t n = contents.size();
  if (contents.substr(0, 3) == "\xEF\xBB\xBF") i = 3;
  while (i < n) {
    CsvRecord rec{line, {}};
    std::string field;
    bool done = false;
    while (!done) {
      if (i < n && contents[i] == '"') {
        const std::size_t open_line = line;
        ++i;
        while (true) {
          if (i >= n) throw DataError(source, open_line, "unterminated quoted field");
          if (contents[i] == '"') {
            if (i + 1 < n && contents[i + 1] == '"') {
              field.push_back('"');
              i += 2;
              continue;
            }
            ++i;
            break;
          }
          if (contents[i] == '\n') ++line;
          field.push_back(contents[i++]);
        }
        if (i < n && contents[i] != ',' && contents[i] != '\n' && contents[i] != '\r') {
          throw DataError(source, line, "unexpected character after quoted field");
        }
      } else {
        while (i < n && contents[i] != ',' && contents[i] != '\n' && contents[i] != '\r') {
          field.push_back(contents[i++]);
        }
      }
      rec.fields.push_back(std::move(field));
      field.clear();
      if (i < n && contents[i] == ',') {
        ++i;
        continue;
      }
      if (i < n && contents[i] == '\r') ++i;
      if (i < n && contents[i] == '\n') ++i;
      ++line;
      done = true;
    }
    if (rec.fields.size() == 1 && rec.fields[0].empty()) continue;  // blank line
    rows.push_back(std::move(rec));
  }
  return rows;
}

std::string CsvEscape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void WriteCsvRow(std::ostream& out, const CsvRow& row) {
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (k > 0) out << ',';
    out << CsvEscape(row[k]);
  }
  out << '\n';
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path.string(), 0, "cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError(path.string(), 0, "cannot open file for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw DataError(path.string(), 0, "write failed");
}

namespace {

void CheckUtf8(std::string_view s, const std::string& source, std::size_t line) {
  try {
    utf8::Decode(s);
  } catch (const InvalidInput& e) {
    throw DataError(source, line, e.what());
  }
}

bool LooksLikeCsvHeader(std::string_view contents, std::string_view header) {
  if (contents.substr(0, 3) == "\xEF\xBB\xBF") contents.remove_prefix(3);
  const std::size_t nl = contents.find('\n');
  std::string_view first = contents.substr(0, nl);
  if (!first.empty() && first.back() == '\r') first.remove_suffix(1);
  return first == header;
}

}  // namespace

std::vector<CorpusRecord> ParseCorpus(std::string_view contents,
                                      const std::string& source) {
  std::vector<CorpusRecord> out;
  if (LooksLikeCsvHeader(contents, "id,text")) {
    const auto rows = ParseCsv(contents, source);
    for (std::size_t k = 1; k < rows.size(); ++k) {
      const auto& r = rows[k];
      if (r.fields.size() != 2) {
        throw DataError(source, r.line,
                        "expected 2 fields (id,text), got " +
                            std::to_string(r.fields.size()));
      }
      CheckUtf8(r.fields[1], source, r.line);
      out.push_back({r.fields[0], r.fields[1]});
    }
    return out;
  }
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < contents.size()) {
    std::size_t nl = contents.find('\n', pos);
    if (nl == std::string_view::npos) nl = contents.size();
    std::string_view line = contents.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    CheckUtf8(line, source, line_no);
    out.push_back({std::to_string(line_no), std::string(line)});
  }
  return out;
}

std::vector<CorpusRecord> LoadCorpus(const std::filesystem::path& path) {
  return ParseCorpus(ReadFile(path), path.string());
}

std::string FormatCorpus(const std::vector<CorpusRecord>& records) {
  std::ostringstream out;
  out << "id,text\n";
  for (const auto& r : records) WriteCsvRow(out, {r.id, r.text});
  return out.str();
}

std::vector<SpanRecord> ParseSpansCsv(std::string_view contents,
                                      const std::string& source) {
  const auto rows = ParseCsv(contents, source);
  if (rows.empty() || rows[0].fields != CsvRow{"id", "spans"}) {
    throw DataError(source, 1, "expected header 'id,spans'");
  }
  std::vector<SpanRecord> out;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const auto& r = rows[k];
    if (r.fields.size() != 2) {
      throw DataError(source, r.line, "expected 2 fields (id,spans)");
    }
    try {
      out.push_back({r.fields[0], ParseSpanListString(r.fields[1])});
    } catch (const InvalidInput& e) {
      throw DataError(source, r.line, e.what());
    }
  }
  return out;
}

std::vector<SpanRecord> LoadSpansCsv(const std::filesystem::path& path) {
  return ParseSpansCsv(ReadFile(path), path.string());
}

std::string FormatSpansCsv(const std::vector<PredictedDoc>& docs) {
  std::ostringstream out;
  out << "id,spans\n";
  for (const auto& d : docs) WriteCsvRow(out, {d.id, ToSpanListString(d.spans)});
  return out.str();
}

namespace {

std::size_t Offset(const json& v, const char* what) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw InvalidInput(std::string("'") + what +
                       "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

PredictionDoc PredictionFromJson(const json& j) {
  if (!j.is_object()) throw InvalidInput("record is not a JSON object");
  if (!j.contains("id") || !j["id"].is_string()) {
    throw InvalidInput("missing string field 'id'");
  }
  if (!j.contains("text") || !j["text"].is_string()) {
    throw InvalidInput("missing string field 'text'");
  }
  if (!j.contains("tokens") || !j["tokens"].is_array()) {
    throw InvalidInput("missing array field 'tokens'");
  }
  PredictionDoc doc;
  doc.id = j["id"].get<std::string>();
  doc.text = j["text"].get<std::string>();
  for (const auto& t : j["tokens"]) {
    if (!t.is_object() || !t.contains("start") || !t.contains("end") ||
        !t.contains("probs") || !t["probs"].is_object()) {
      throw InvalidInput("token needs 'start', 'end' and 'probs'");
    }
    TokenPrediction tp;
    tp.start = Offset(t["start"], "start");
    tp.end = Offset(t["end"], "end");
    const auto& probs = t["probs"];
    for (TokenLabel label : kAllLabels) {
      const std::string key(ToString(label));
      if (!probs.contains(key) || !probs[key].is_number()) {
        throw InvalidInput("probs is missing class '" + key + "'");
      }
      tp.probs[static_cast<std::size_t>(label)] = probs[key].get<double>();
    }
    doc.tokens.push_back(tp);
  }
  ValidatePredictionDoc(doc);
  return doc;
}

}  // namespace

std::vector<PredictionDoc> ParsePredictions(std::string_view contents,
                                            const std::string& source) {
  std::vector<PredictionDoc> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < contents.size()) {
    std::size_t nl = contents.find('\n', pos);
    if (nl == std::string_view::npos) nl = contents.size();
    const std::string_view line = contents.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      out.push_back(PredictionFromJson(json::parse(line)));
    } catch (const json::exception& e) {
      throw DataError(source, line_no, e.what());
    } catch (const InvalidInput& e) {
      throw DataError(source, line_no, e.what());
    }
  }
  return out;
}

std::vector<PredictionDoc> LoadPredictions(const std::filesystem::path& path) {
  return ParsePredictions(ReadFile(path), path.string());
}

std::string FormatPrediction(const PredictionDoc& doc) {
  json tokens = json::array();
  for (const auto& t : doc.tokens) {
    json probs = json::object();
    for (TokenLabel label : kAllLabels) {
      probs[std::string(ToString(label))] =
          t.probs[static_cast<std::size_t>(label)];
    }
    tokens.push_back({{"start", t.start}, {"end", t.end}, {"probs", probs}});
  }
  json j = {{"id", doc.id}, {"text", doc.text}, {"tokens", tokens}};
  return j.dump();
}

std::string FormatLabeledDoc(const LabeledDoc& doc) {
  json offsets = json::array();
  for (const auto& t : doc.tokens) offsets.push_back({t.start, t.end});
  json labels = json::array();
  for (TokenLabel l : doc.token_labels) labels.push_back(std::string(ToString(l)));
  json j = {{"id", doc.id},
            {"text", doc.clean_text},
            {"token_offsets", offsets},
            {"labels", labels},
            {"proxy_label", doc.proxy_label}};
  return j.dump();
}

std::string FormatReportCsv(const EvalReport& report) {
  std::ostringstream out;
  out << "id,distance\n";
  for (const auto& d : report.per_doc) {
    WriteCsvRow(out, {d.id, std::to_string(d.distance)});
  }
  return out.str();
}

std::string FormatReportSummary(const EvalReport& report) {
  json j = {{"mean", report.mean_distance},
            {"count", report.per_doc.size()},
            {"serialization", std::string(ToString(report.serialization))}};
  return j.dump() + "\n";
}

}  // namespace gedspan::io
