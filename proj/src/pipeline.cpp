#include "gedspan/pipeline.hpp"

#include <unordered_map>

#include "gedspan/annotation.hpp"
#include "gedspan/error.hpp"
#include "gedspan/utf8.hpp"
#include "parallel.hpp"

namespace gedspan {

EnsembleMode ParseEnsembleMode(std::string_view name) {
  if (name == "union") return EnsembleMode::kUnion;
  if (name == "intersection") return EnsembleMode::kIntersection;
  throw InvalidInput("unknown ensemble mode '" + std::string(name) +
                     "' (expected union or intersection)");
}

std::string_view ToString(EnsembleMode mode) {
  return mode == EnsembleMode::kUnion ? "union" : "intersection";
}

SpanSet Ensemble(std::span<const SpanSet> sets, EnsembleMode mode) {
  return mode == EnsembleMode::kUnion ? SpanUnion(sets) : SpanIntersection(sets);
}

SpanSet ApplyRuleFixes(std::string_view text, const RuleFixes& fixes,
                       const Lexicon& lexicon, const Gazetteer& gazetteer) {
  std::vector<SpanSet> found{SpanSet(utf8::Length(text))};
  if (fixes.space) found.push_back(DetectSpaceBeforePunct(text, fixes.space_options));
  if (fixes.end) found.push_back(DetectMissingEndPunct(text));
  if (fixes.spelling) found.push_back(DetectSpelling(text, lexicon, gazetteer));
  return SpanUnion(found);
}

void ValidateConfig(const PipelineConfig& config) {
  if (!(config.threshold >= 0.0 && config.threshold <= 1.0)) {
    throw InvalidInput("threshold must lie in [0, 1]");
  }
}

std::vector<GoldDoc> GoldFromCorpus(const std::vector<io::CorpusRecord>& records,
                                    const std::string& source) {
  std::vector<GoldDoc> gold;
  gold.reserve(records.size());
  for (std::size_t k = 0; k < records.size(); ++k) {
    try {
      auto parsed = ParseAnnotated(records[k].text);
      gold.push_back({records[k].id, std::move(parsed.text), std::move(parsed.spans)});
    } catch (const ParseError& e) {
      throw DataError(source, 0, "record '" + records[k].id + "': " + e.what());
    }
  }
  return gold;
}

std::vector<GoldDoc> LoadGold(const std::filesystem::path& path) {
  return GoldFromCorpus(io::LoadCorpus(path), path.string());
}

PipelineResult RunPipeline(const PipelineConfig& config,
                           const PipelineInputs& inputs) {
  ValidateConfig(config);
  const auto& sets = inputs.prediction_sets;
  if (sets.empty()) throw InvalidInput("no prediction files given");

  const auto& primary = sets.front();
  // Per set: id -> doc.
  std::vector<std::unordered_map<std::string_view, const PredictionDoc*>> index(sets.size());
  for (std::size_t s = 0; s < sets.size(); ++s) {
    for (const auto& d : sets[s]) {
      if (!index[s].emplace(d.id, &d).second) {
        throw DataError("prediction set " + std::to_string(s + 1), 0,
                        "duplicate document id '" + d.id + "'");
      }
    }
    if (sets[s].size() != primary.size()) {
      throw DataError("prediction set " + std::to_string(s + 1), 0,
                      "holds " + std::to_string(sets[s].size()) +
                          " documents, the first set holds " +
                          std::to_string(primary.size()));
    }
  }
  std::unordered_map<std::string_view, const std::string*> originals;
  for (const auto& r : inputs.originals) originals.emplace(r.id, &r.text);
  std::unordered_map<std::string_view, const std::string*> gold_texts;
  for (const auto& g : inputs.gold) gold_texts.emplace(g.id, &g.text);

  PipelineResult result;
  result.docs.resize(primary.size());
  result.texts.resize(primary.size());
  const DecodeOptions decode{config.threshold, config.strict_inside};

  detail::ParallelFor(primary.size(), config.jobs, [&](std::size_t k) {
    const PredictionDoc& first = primary[k];
    std::vector<SpanSet> decoded;
    decoded.reserve(sets.size());
    for (std::size_t s = 0; s < sets.size(); ++s) {
      auto it = index[s].find(first.id);
      if (it == index[s].end()) {
        throw DataError("prediction set " + std::to_string(s + 1), 0,
                        "missing document id '" + first.id + "'");
      }
      if (it->second->text != first.text) {
        throw DataError("prediction set " + std::to_string(s + 1), 0,
                        "document '" + first.id +
                            "' has a different text than in the first set");
      }
      decoded.push_back(DecodeSpans(*it->second, decode));
    }
    SpanSet model = Ensemble(decoded, config.ensemble);

    std::string original = first.text;
    if (auto it = originals.find(first.id); it != originals.end()) {
      original = *it->second;
    } else if (auto g = gold_texts.find(first.id); g != gold_texts.end()) {
      original = *g->second;
    }
    if (inputs.rules && Normalize(original, *inputs.rules) != first.text) {
      throw DataError("", 0, "document '" + first.id +
                                 "': prediction text is not the normalized "
                                 "original text");
    }
    if (original != first.text) {
      model = MapSpansToOriginal(model, Align(original, first.text),
                                 config.edge_policy);
    }
    const SpanSet fixes =
        ApplyRuleFixes(original, config.fixes, inputs.lexicon, inputs.gazetteer);
    const std::array<SpanSet, 2> parts{model, fixes};
    result.docs[k] = {first.id, SpanUnion(parts)};
    result.texts[k] = std::move(original);
  });

  if (!inputs.gold.empty()) {
    result.report = Evaluate(result.docs, inputs.gold, config.serialization, config.jobs);
  }
  return result;
}

PipelineResult RunPipeline(const PipelineConfig& config) {
  ValidateConfig(config);
  if (config.prediction_paths.empty()) {
    throw InvalidInput("no prediction files given");
  }
  PipelineInputs inputs;
  for (const auto& p : config.prediction_paths) {
    inputs.prediction_sets.push_back(io::LoadPredictions(p));
  }
  if (config.original_path) inputs.originals = io::LoadCorpus(*config.original_path);
  if (config.gold_path) inputs.gold = LoadGold(*config.gold_path);
  if (config.rules_path) inputs.rules = NormRules::Load(*config.rules_path);
  if (config.lexicon_path) inputs.lexicon = Lexicon(LoadWordSet(*config.lexicon_path));
  if (config.gazetteer_path) {
    inputs.gazetteer = Gazetteer(LoadWordSet(*config.gazetteer_path));
  }
  if (config.fixes.spelling && !config.lexicon_path) {
    throw InvalidInput("--spell-fix needs --lexicon");
  }
  return RunPipeline(config, inputs);
}

}  // namespace gedspan
