// Python bindings. Spans cross the boundary as lists of (start, end) tuples;
// offsets count Unicode code points, like Python's str indexing.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <map>

#include "gedspan/gedspan.hpp"

namespace py = pybind11;
using namespace gedspan;

namespace {

using SpanList = std::vector<std::pair<std::size_t, std::size_t>>;

SpanList ToList(const SpanSet& s) {
  SpanList out;
  for (const auto& sp : s) out.emplace_back(sp.start, sp.end);
  return out;
}

SpanSet FromList(const SpanList& spans, std::size_t text_len) {
  std::vector<ErrorSpan> v;
  for (const auto& [s, e] : spans) v.push_back({s, e});
  return SpanSet::Normalize(std::move(v), text_len);
}

std::size_t Len(const std::string& text) { return utf8::Length(text); }

PredictionDoc DocFromDict(const py::dict& d) {
  PredictionDoc doc;
  doc.id = d["id"].cast<std::string>();
  doc.text = d["text"].cast<std::string>();
  for (const auto& t : d["tokens"].cast<py::list>()) {
    const auto tok = t.cast<py::dict>();
    TokenPrediction p;
    p.start = tok["start"].cast<std::size_t>();
    p.end = tok["end"].cast<std::size_t>();
    const auto probs = tok["probs"].cast<py::dict>();
    for (TokenLabel l : kAllLabels) {
      p.probs[static_cast<std::size_t>(l)] = probs[py::str(std::string(ToString(l)))].cast<double>();
    }
    doc.tokens.push_back(p);
  }
  ValidatePredictionDoc(doc);
  return doc;
}

std::vector<SpanSet> Sets(const std::vector<SpanList>& lists, std::size_t text_len) {
  std::vector<SpanSet> sets;
  for (const auto& l : lists) sets.push_back(FromList(l, text_len));
  return sets;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Span-level grammatical error detection core";

  static py::exception<Error> base(m, "GedspanError", PyExc_ValueError);
  static py::exception<ParseError> parse_error(m, "AnnotationParseError", base.ptr());
  static py::exception<DataError> data_error(m, "DataError", base.ptr());
  static py::exception<EvaluationError> eval_error(m, "EvaluationError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      parse_error(e.what());
    } catch (const DataError& e) {
      data_error(e.what());
    } catch (const EvaluationError& e) {
      eval_error(e.what());
    } catch (const Error& e) {
      base(e.what());
    }
  });

  m.def("to_annotated", [](const std::string& text, const SpanList& spans) {
    return ToAnnotated(text, FromList(spans, Len(text)));
  }, py::arg("text"), py::arg("spans"));
  m.def("to_span_list_string", [](const std::string& text, const SpanList& spans) {
    return ToSpanListString(FromList(spans, Len(text)));
  }, py::arg("text"), py::arg("spans"));
  m.def("parse_annotated", [](const std::string& annotated) {
    auto p = ParseAnnotated(annotated);
    return py::make_tuple(p.text, ToList(p.spans));
  }, py::arg("annotated"));

  m.def("span_union", [](const std::vector<SpanList>& sets, std::size_t text_len) {
    return ToList(SpanUnion(Sets(sets, text_len)));
  }, py::arg("sets"), py::arg("text_len"));
  m.def("span_intersection", [](const std::vector<SpanList>& sets, std::size_t text_len) {
    return ToList(SpanIntersection(Sets(sets, text_len)));
  }, py::arg("sets"), py::arg("text_len"));

  m.def("whitespace_tokens", [](const std::string& text) {
    SpanList out;
    for (const auto& t : WhitespaceTokens(text)) out.emplace_back(t.start, t.end);
    return out;
  }, py::arg("text"));
  m.def("label_tokens", [](const std::string& text, const SpanList& spans,
                           const SpanList& tokens) {
    std::vector<TokenOffset> toks;
    for (const auto& [s, e] : tokens) toks.push_back({s, e});
    ValidateTokens(toks, Len(text));
    std::vector<std::string> out;
    for (TokenLabel l : LabelTokens(FromList(spans, Len(text)), toks)) {
      out.emplace_back(ToString(l));
    }
    return out;
  }, py::arg("text"), py::arg("spans"), py::arg("tokens"));

  py::class_<NormRules>(m, "NormRules")
      .def_static("load", &NormRules::Load, py::arg("path"))
      .def_static("parse", [](const std::string& tsv) { return NormRules::Parse(tsv); },
                  py::arg("tsv"))
      .def("apply", [](const NormRules& r, const std::string& text) {
        return Normalize(text, r);
      }, py::arg("text"));

  m.def("map_spans_to_original", [](const std::string& original,
                                    const std::string& normalized, const SpanList& spans,
                                    const std::string& policy) {
    const AlignmentMap map = Align(original, normalized);
    return ToList(MapSpansToOriginal(FromList(spans, Len(normalized)), map,
                                     ParseEdgePolicy(policy)));
  }, py::arg("original"), py::arg("normalized"), py::arg("spans"),
     py::arg("policy") = "expand");
  m.def("align", [](const std::string& original, const std::string& normalized) {
    const AlignmentMap map = Align(original, normalized);
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j <= map.normalized_length(); ++j) out.push_back(map.Map(j));
    return out;
  }, py::arg("original"), py::arg("normalized"));

  m.def("decode_spans", [](const py::dict& doc, double threshold, bool strict_inside) {
    return ToList(DecodeSpans(DocFromDict(doc), {threshold, strict_inside}));
  }, py::arg("doc"), py::arg("threshold") = kDefaultThreshold,
     py::arg("strict_inside") = false);

  m.def("detect_space_before_punct", [](const std::string& text, bool include_punct) {
    return ToList(DetectSpaceBeforePunct(text, {include_punct}));
  }, py::arg("text"), py::arg("include_punct") = true);
  m.def("detect_missing_end_punct", [](const std::string& text) {
    return ToList(DetectMissingEndPunct(text));
  }, py::arg("text"));

  m.def("levenshtein", [](const std::string& a, const std::string& b) {
    return Levenshtein(a, b);
  }, py::arg("a"), py::arg("b"));
  m.def("evaluate", [](const std::vector<std::pair<std::string, SpanList>>& preds,
                       const std::vector<std::pair<std::string, std::string>>& gold,
                       const std::string& mode) {
    std::vector<GoldDoc> g;
    std::map<std::string, std::size_t> lengths;
    for (const auto& [id, annotated] : gold) {
      auto parsed = ParseAnnotated(annotated);
      lengths[id] = Len(parsed.text);
      g.push_back({id, std::move(parsed.text), std::move(parsed.spans)});
    }
    std::vector<PredictedDoc> p;
    for (const auto& [id, spans] : preds) {
      const auto it = lengths.find(id);
      p.push_back({id, FromList(spans, it == lengths.end() ? 0 : it->second)});
    }
    const EvalReport r = Evaluate(p, g, ParseSerializationMode(mode));
    py::dict per_doc;
    for (const auto& d : r.per_doc) per_doc[py::str(d.id)] = d.distance;
    return py::make_tuple(r.mean_distance, per_doc);
  }, py::arg("preds"), py::arg("gold"), py::arg("mode") = "annotated");

  m.def("stratified_split", [](const std::vector<std::size_t>& keys, double ratio,
                               std::uint64_t seed) {
    auto s = StratifiedSplitIndices(keys, ratio, seed);
    return py::make_tuple(s.train, s.dev);
  }, py::arg("keys"), py::arg("ratio"), py::arg("seed"));

  m.def("run_pipeline", [](std::vector<std::filesystem::path> predictions,
                           std::optional<std::filesystem::path> gold,
                           std::optional<std::filesystem::path> original,
                           std::optional<std::filesystem::path> rules, double threshold,
                           const std::string& ensemble, bool space_fix, bool end_fix,
                           const std::string& mode, unsigned jobs) {
    PipelineConfig c;
    c.prediction_paths = std::move(predictions);
    c.gold_path = std::move(gold);
    c.original_path = std::move(original);
    c.rules_path = std::move(rules);
    c.threshold = threshold;
    c.ensemble = ParseEnsembleMode(ensemble);
    c.fixes.space = space_fix;
    c.fixes.end = end_fix;
    c.serialization = ParseSerializationMode(mode);
    c.jobs = jobs;
    PipelineResult r;
    {
      py::gil_scoped_release release;
      r = RunPipeline(c);
    }
    py::list docs;
    for (std::size_t k = 0; k < r.docs.size(); ++k) {
      docs.append(py::make_tuple(r.docs[k].id, r.texts[k], ToList(r.docs[k].spans)));
    }
    py::object mean = py::none();
    if (r.report) mean = py::float_(r.report->mean_distance);
    return py::make_tuple(docs, mean);
  }, py::arg("predictions"), py::arg("gold") = py::none(),
     py::arg("original") = py::none(), py::arg("rules") = py::none(),
     py::arg("threshold") = kDefaultThreshold, py::arg("ensemble") = "intersection",
     py::arg("space_fix") = false, py::arg("end_fix") = false,
     py::arg("mode") = "annotated", py::arg("jobs") = 1u);
}
