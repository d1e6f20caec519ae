#pragma once

// End-to-end flow: decode each prediction set at the threshold, ensemble,
// map back onto the original text, add rule-detector spans, and optionally
// evaluate against gold.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gedspan/decode.hpp"
#include "gedspan/eval.hpp"
#include "gedspan/io.hpp"
#include "gedspan/normalize.hpp"
#include "gedspan/rules.hpp"
#include "gedspan/spans.hpp"

namespace gedspan {

enum class EnsembleMode { kUnion, kIntersection };

EnsembleMode ParseEnsembleMode(std::string_view name);
std::string_view ToString(EnsembleMode mode);

SpanSet Ensemble(std::span<const SpanSet> sets, EnsembleMode mode);

struct RuleFixes {
  bool space = false;
  bool end = false;
  bool spelling = false;
  SpaceRuleOptions space_options;
};

// Union of the enabled detectors over `text`.
SpanSet ApplyRuleFixes(std::string_view text, const RuleFixes& fixes,
                       const Lexicon& lexicon, const Gazetteer& gazetteer);

struct PipelineConfig {
  std::optional<std::filesystem::path> rules_path;
  double threshold = kDefaultThreshold;
  bool strict_inside = false;
  EnsembleMode ensemble = EnsembleMode::kIntersection;
  SerializationMode serialization = SerializationMode::kAnnotatedText;
  EdgePolicy edge_policy = EdgePolicy::kExpand;
  RuleFixes fixes;
  std::optional<std::filesystem::path> lexicon_path;
  std::optional<std::filesystem::path> gazetteer_path;
  std::uint64_t seed = 0;
  unsigned jobs = 1;

  std::vector<std::filesystem::path> prediction_paths;
  // Original (pre-normalization) texts; falls back to the gold text, then to
  // the prediction text.
  std::optional<std::filesystem::path> original_path;
  // `$`-annotated gold corpus.
  std::optional<std::filesystem::path> gold_path;
};

// Throws InvalidInput unless the threshold lies in [0, 1].
void ValidateConfig(const PipelineConfig& config);

struct PipelineResult {
  std::vector<PredictedDoc> docs;       // spans over the original texts
  std::vector<std::string> texts;       // original text per doc
  std::optional<EvalReport> report;
};

struct PipelineInputs {
  // One entry per model/checkpoint; every set must hold the same ids with
  // the same texts.
  std::vector<std::vector<PredictionDoc>> prediction_sets;
  std::vector<io::CorpusRecord> originals;
  std::vector<GoldDoc> gold;
  std::optional<NormRules> rules;
  Lexicon lexicon;
  Gazetteer gazetteer;
};

// Output order follows the first prediction set. Throws InvalidInput on an
// empty prediction set list, DataError on id or text mismatches.
PipelineResult RunPipeline(const PipelineConfig& config,
                           const PipelineInputs& inputs);

// Loads every file named in `config`, then runs the in-memory pipeline.
PipelineResult RunPipeline(const PipelineConfig& config);

std::vector<GoldDoc> LoadGold(const std::filesystem::path& path);
std::vector<GoldDoc> GoldFromCorpus(const std::vector<io::CorpusRecord>& records,
                                    const std::string& source);

}  // namespace gedspan
