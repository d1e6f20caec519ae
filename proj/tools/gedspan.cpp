// Command-line front end. Exit codes: 0 success, 1 usage, 2 data error.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gedspan/gedspan.hpp"

namespace fs = std::filesystem;
using namespace gedspan;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void Emit(const std::optional<fs::path>& out, const std::string& contents) {
  if (out) {
    io::WriteFile(*out, contents);
  } else {
    std::cout << contents;
  }
}

// Option values that are parsed after CLI11 is done.
struct Shared {
  std::string ensemble = "intersection";
  std::string mode = "annotated";
  std::string edge_policy = "expand";
  std::string missing_anchor = "as-is";
  double threshold = kDefaultThreshold;
  bool strict_inside = false;
  bool space_fix = false;
  bool end_fix = false;
  bool spell_fix = false;
  bool exclude_punct = false;
  std::optional<fs::path> lexicon;
  std::optional<fs::path> gazetteer;
  std::optional<fs::path> rules;
  std::optional<fs::path> out;
  std::optional<fs::path> report;
  std::optional<fs::path> summary;
  std::vector<fs::path> preds;
  fs::path in;
  std::optional<fs::path> gold;
  std::optional<fs::path> original;
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  double ratio = 0.8;
  bool no_missing = false;
  std::optional<fs::path> train_out;
  std::optional<fs::path> dev_out;
  fs::path raw, dictionary, titles;
};

// Wraps the library parser so bad names count as usage errors.
template <typename F>
auto Usage(F&& parse) {
  try {
    return parse();
  } catch (const InvalidInput& e) {
    throw UsageError(e.what());
  }
}

RuleFixes Fixes(const Shared& o) {
  RuleFixes f;
  f.space = o.space_fix;
  f.end = o.end_fix;
  f.spelling = o.spell_fix;
  f.space_options.include_punct = !o.exclude_punct;
  if (f.spelling && !o.lexicon) throw UsageError("--spell-fix needs --lexicon");
  return f;
}

void CheckThreshold(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw UsageError("--threshold must lie in [0, 1]");
}

void WriteReport(const Shared& o, const EvalReport& report) {
  if (o.report) io::WriteFile(*o.report, io::FormatReportCsv(report));
  const std::string summary = io::FormatReportSummary(report);
  if (o.summary) {
    io::WriteFile(*o.summary, summary);
  } else {
    std::cerr << summary << "\n";
  }
}

int RunNormalize(const Shared& o) {
  if (!o.rules) throw UsageError("normalize needs --rules");
  const NormRules rules = NormRules::Load(*o.rules);
  const std::string contents = io::ReadFile(o.in);
  auto records = io::ParseCorpus(contents, o.in.string());
  for (auto& r : records) r.text = Normalize(r.text, rules);
  // Keep the input layout: CSV stays CSV, plain lines stay plain lines.
  const auto csv = io::ParseCsv(contents.substr(0, contents.find('\n') + 1));
  if (!csv.empty() && csv[0].fields == io::CsvRow{"id", "text"}) {
    Emit(o.out, io::FormatCorpus(records));
  } else {
    std::string out;
    for (const auto& r : records) out += r.text + "\n";
    Emit(o.out, out);
  }
  return 0;
}

int RunLabel(const Shared& o) {
  const MissingAnchor anchor = Usage([&] { return ParseMissingAnchor(o.missing_anchor); });
  std::string out;
  for (const auto& r : io::LoadCorpus(o.in)) {
    try {
      out += io::FormatLabeledDoc(MakeLabeledDoc(r.id, r.text, anchor));
    } catch (const ParseError& e) {
      throw DataError(o.in.string(), 0, "document " + r.id + ": " + e.what());
    } catch (const LabelingError& e) {
      throw DataError(o.in.string(), 0, "document " + r.id + ": " + e.what());
    }
    out += "\n";
  }
  Emit(o.out, out);
  return 0;
}

std::vector<PredictedDoc> DecodeSets(const Shared& o) {
  if (o.preds.empty()) throw UsageError("at least one --pred file is required");
  CheckThreshold(o.threshold);
  PipelineConfig config;
  config.threshold = o.threshold;
  config.strict_inside = o.strict_inside;
  config.ensemble = Usage([&] { return ParseEnsembleMode(o.ensemble); });
  config.prediction_paths = o.preds;
  config.jobs = o.jobs;
  return RunPipeline(config).docs;
}

int RunDecode(const Shared& o) {
  if (o.preds.size() != 1) throw UsageError("decode takes exactly one --pred file");
  Emit(o.out, io::FormatSpansCsv(DecodeSets(o)));
  return 0;
}

int RunEnsemble(const Shared& o) {
  Emit(o.out, io::FormatSpansCsv(DecodeSets(o)));
  return 0;
}

int RunRules(const Shared& o) {
  const RuleFixes fixes = Fixes(o);
  const Lexicon lexicon = o.lexicon ? Lexicon(LoadWordSet(*o.lexicon)) : Lexicon();
  const Gazetteer gazetteer =
      o.gazetteer ? Gazetteer(LoadWordSet(*o.gazetteer)) : Gazetteer();
  std::vector<PredictedDoc> docs;
  for (const auto& r : io::LoadCorpus(o.in)) {
    docs.push_back({r.id, ApplyRuleFixes(r.text, fixes, lexicon, gazetteer)});
  }
  Emit(o.out, io::FormatSpansCsv(docs));
  return 0;
}

int RunLexicon(const Shared& o) {
  const WordSet raw = LoadWordSet(o.raw);
  const WordSet dict = o.dictionary.empty() ? WordSet{} : LoadWordSet(o.dictionary);
  const WordSet titles = o.titles.empty() ? WordSet{} : LoadWordSet(o.titles);
  const Lexicon lexicon = BuildLexicon(raw, dict, titles);
  std::vector<std::string> words(lexicon.words().begin(), lexicon.words().end());
  std::sort(words.begin(), words.end());
  std::string out;
  for (const auto& w : words) out += w + "\n";
  Emit(o.out, out);
  return 0;
}

int RunEvaluate(const Shared& o) {
  if (o.preds.size() != 1) throw UsageError("evaluate takes exactly one --pred spans CSV");
  if (!o.gold) throw UsageError("evaluate needs --gold");
  const SerializationMode mode = Usage([&] { return ParseSerializationMode(o.mode); });
  const auto gold = LoadGold(*o.gold);
  std::map<std::string, std::size_t> lengths;
  for (const auto& g : gold) lengths[g.id] = utf8::Length(g.text);
  const std::string source = o.preds[0].string();
  std::vector<PredictedDoc> preds;
  for (auto& r : io::LoadSpansCsv(o.preds[0])) {
    const auto it = lengths.find(r.id);
    // Unknown ids are reported together by Evaluate.
    const std::size_t len = it == lengths.end() ? 0 : it->second;
    if (it == lengths.end()) {
      preds.push_back({r.id, SpanSet(0)});
      continue;
    }
    try {
      preds.push_back({r.id, SpanSet::Make(std::move(r.spans), len)});
    } catch (const InvalidInput& e) {
      throw DataError(source, 0, "document " + r.id + ": " + e.what());
    }
  }
  WriteReport(o, Evaluate(preds, gold, mode, o.jobs));
  return 0;
}

int RunSplit(const Shared& o) {
  if (!(o.ratio > 0.0 && o.ratio < 1.0)) {
    throw UsageError("--ratio must lie strictly between 0 and 1");
  }
  if (!o.train_out || !o.dev_out) throw UsageError("split needs --train and --dev");
  const auto records = io::LoadCorpus(o.in);
  std::vector<std::size_t> keys;
  for (const auto& r : records) {
    try {
      keys.push_back(ParseAnnotated(r.text).spans.size());
    } catch (const Error& e) {
      throw DataError(o.in.string(), 0, "document " + r.id + ": " + e.what());
    }
  }
  const SplitIndices split = StratifiedSplitIndices(keys, o.ratio, o.seed);
  std::vector<io::CorpusRecord> train, dev;
  for (std::size_t k : split.train) train.push_back(records[k]);
  for (std::size_t k : split.dev) dev.push_back(records[k]);
  io::WriteFile(*o.train_out, io::FormatCorpus(train));
  io::WriteFile(*o.dev_out, io::FormatCorpus(dev));
  return 0;
}

int RunPipelineCommand(const Shared& o) {
  if (o.preds.empty()) throw UsageError("at least one --pred file is required");
  CheckThreshold(o.threshold);
  PipelineConfig config;
  config.rules_path = o.rules;
  config.threshold = o.threshold;
  config.strict_inside = o.strict_inside;
  config.ensemble = Usage([&] { return ParseEnsembleMode(o.ensemble); });
  config.serialization = Usage([&] { return ParseSerializationMode(o.mode); });
  config.edge_policy = Usage([&] { return ParseEdgePolicy(o.edge_policy); });
  config.fixes = Fixes(o);
  config.lexicon_path = o.lexicon;
  config.gazetteer_path = o.gazetteer;
  config.seed = o.seed;
  config.jobs = o.jobs;
  config.prediction_paths = o.preds;
  config.original_path = o.original;
  config.gold_path = o.gold;
  const PipelineResult result = RunPipeline(config);
  Emit(o.out, io::FormatSpansCsv(result.docs));
  if (result.report) WriteReport(o, *result.report);
  return 0;
}

int RunBaseline(const Shared& o) {
  const Lexicon lexicon = o.lexicon ? Lexicon(LoadWordSet(*o.lexicon)) : Lexicon();
  BaselineOptions options;
  options.emit_missing = !o.no_missing;
  std::string out;
  for (const auto& r : io::LoadCorpus(o.in)) {
    out += io::FormatPrediction(BaselinePredict(r.id, r.text, lexicon, options));
    out += "\n";
  }
  Emit(o.out, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Span-level grammatical error detection toolkit"};
  app.set_config("--config", "", "Read options from a TOML/INI key=value file");
  app.require_subcommand(1);
  Shared o;

  auto add_out = [&](CLI::App* c) {
    c->add_option("-o,--out", o.out, "Output file (default: stdout)");
  };
  auto add_in = [&](CLI::App* c, const std::string& what) {
    c->add_option("-i,--in", o.in, what)->required()->check(CLI::ExistingFile);
  };
  auto add_decode = [&](CLI::App* c) {
    c->add_option("-p,--pred", o.preds, "Prediction JSONL file (repeatable)")
        ->check(CLI::ExistingFile);
    c->add_option("-t,--threshold", o.threshold, "Confidence threshold in [0, 1]")
        ->capture_default_str();
    c->add_flag("--strict-inside", o.strict_inside, "Drop I tokens that do not follow B/I");
    c->add_option("-j,--jobs", o.jobs, "Worker threads")->capture_default_str();
  };
  auto add_fixes = [&](CLI::App* c) {
    c->add_flag("--space-fix", o.space_fix, "Flag whitespace before . , ? !");
    c->add_flag("--end-fix", o.end_fix, "Flag missing terminal punctuation");
    c->add_flag("--spell-fix", o.spell_fix, "Flag lexicon misspellings (needs --lexicon)");
    c->add_flag("--exclude-punct", o.exclude_punct,
                "Space fix covers only the whitespace, not the mark");
    c->add_option("--lexicon", o.lexicon, "Misspelling lexicon, one word per line")
        ->check(CLI::ExistingFile);
    c->add_option("--gazetteer", o.gazetteer, "Named entities never flagged")
        ->check(CLI::ExistingFile);
  };
  auto add_report = [&](CLI::App* c) {
    c->add_option("--mode", o.mode, "Serialization for scoring: annotated|spanlist")
        ->capture_default_str();
    c->add_option("--report", o.report, "Per-document distances CSV");
    c->add_option("--summary", o.summary, "Summary JSON (default: stderr)");
  };

  std::map<CLI::App*, std::function<int(const Shared&)>> handlers;

  auto* normalize = app.add_subcommand("normalize", "Apply a normalization rule table");
  add_in(normalize, "Corpus (lines or id,text CSV)");
  normalize->add_option("-r,--rules", o.rules, "Rule table TSV")->check(CLI::ExistingFile);
  add_out(normalize);
  handlers[normalize] = RunNormalize;

  auto* label = app.add_subcommand("label", "Annotated corpus to token labels (JSONL)");
  add_in(label, "$-annotated corpus");
  label->add_option("--missing-anchor", o.missing_anchor,
                    "Where $$ next to whitespace attaches: as-is|before-space|after-space")
      ->capture_default_str();
  add_out(label);
  handlers[label] = RunLabel;

  auto* decode = app.add_subcommand("decode", "Threshold-decode one prediction file");
  add_decode(decode);
  add_out(decode);
  handlers[decode] = RunDecode;

  auto* ensemble = app.add_subcommand("ensemble", "Decode and combine prediction files");
  add_decode(ensemble);
  ensemble->add_option("--ensemble", o.ensemble, "union|intersection")->capture_default_str();
  add_out(ensemble);
  handlers[ensemble] = RunEnsemble;

  auto* rules = app.add_subcommand("rules", "Run the rule detectors over a corpus");
  add_in(rules, "Corpus (lines or id,text CSV)");
  add_fixes(rules);
  add_out(rules);
  handlers[rules] = RunRules;

  auto* lexicon = app.add_subcommand("lexicon", "Build a misspelling lexicon");
  lexicon->add_option("--raw", o.raw, "Candidate misspellings")
      ->required()
      ->check(CLI::ExistingFile);
  lexicon->add_option("--dictionary", o.dictionary, "Valid words to remove")
      ->check(CLI::ExistingFile);
  lexicon->add_option("--titles", o.titles, "Title words to remove")
      ->check(CLI::ExistingFile);
  add_out(lexicon);
  handlers[lexicon] = RunLexicon;

  auto* evaluate = app.add_subcommand("evaluate", "Score a spans CSV against gold");
  evaluate->add_option("-p,--pred", o.preds, "Spans CSV (id,spans)")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate->add_option("-g,--gold", o.gold, "$-annotated gold corpus")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate->add_option("-j,--jobs", o.jobs, "Worker threads")->capture_default_str();
  add_report(evaluate);
  handlers[evaluate] = RunEvaluate;

  auto* split = app.add_subcommand("split", "Stratified train/test split");
  add_in(split, "$-annotated corpus");
  split->add_option("--ratio", o.ratio, "Training fraction")->capture_default_str();
  split->add_option("--seed", o.seed, "Shuffle seed")->capture_default_str();
  split->add_option("--train", o.train_out, "Training corpus output")->required();
  split->add_option("--dev", o.dev_out, "Held-out corpus output")->required();
  handlers[split] = RunSplit;

  auto* pipeline = app.add_subcommand("pipeline", "Decode, ensemble, fix, map back, score");
  add_decode(pipeline);
  add_fixes(pipeline);
  add_report(pipeline);
  pipeline->add_option("--ensemble", o.ensemble, "union|intersection")
      ->capture_default_str();
  pipeline->add_option("-r,--rules", o.rules,
                       "Rule table used to normalize the originals (checked)")
      ->check(CLI::ExistingFile);
  pipeline->add_option("--original", o.original, "Original texts, before normalization")
      ->check(CLI::ExistingFile);
  pipeline->add_option("-g,--gold", o.gold, "$-annotated gold corpus")
      ->check(CLI::ExistingFile);
  pipeline->add_option("--edge-policy", o.edge_policy, "expand|contract")
      ->capture_default_str();
  pipeline->add_option("--seed", o.seed, "Recorded seed")->capture_default_str();
  add_out(pipeline);
  handlers[pipeline] = RunPipelineCommand;

  auto* baseline = app.add_subcommand("baseline", "Toy predictor emitting prediction JSONL");
  add_in(baseline, "Corpus (lines or id,text CSV)");
  baseline->add_option("--lexicon", o.lexicon, "Misspelling lexicon")
      ->check(CLI::ExistingFile);
  baseline->add_flag("--no-missing", o.no_missing, "Never predict missing end punctuation");
  add_out(baseline);
  handlers[baseline] = RunBaseline;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    for (auto& [cmd, run] : handlers) {
      if (cmd->parsed()) return run(o);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
