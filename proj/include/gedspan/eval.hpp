#pragma once

// Levenshtein-distance evaluation and stratified train/dev splitting.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gedspan/annotation.hpp"
#include "gedspan/spans.hpp"

namespace gedspan {

// Unit-cost edit distance over codepoints; O(|a|*|b|) time, O(min) space.
std::size_t Levenshtein(std::u32string_view a, std::u32string_view b);
std::size_t Levenshtein(std::string_view a, std::string_view b);

struct DocDistance {
  std::string id;
  std::size_t distance = 0;
};

struct EvalReport {
  std::vector<DocDistance> per_doc;
  double mean_distance = 0.0;
  SerializationMode serialization = SerializationMode::kAnnotatedText;
};

struct PredictedDoc {
  std::string id;
  SpanSet spans;
};

struct GoldDoc {
  std::string id;
  std::string text;
  SpanSet spans;
};

// Serializes each prediction and its gold record with `mode` and takes the
// distance. per_doc follows prediction order. Throws EvaluationError listing
// every prediction id missing from `gold`, InvalidInput when a prediction
// indexes a text of a different length than its gold record.
EvalReport Evaluate(std::span<const PredictedDoc> preds,
                    std::span<const GoldDoc> gold, SerializationMode mode,
                    unsigned jobs = 1);

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> dev;
};

// Stratified split over arbitrary stratum keys.
//
// Items are grouped by key. Each group is shuffled with a Fisher-Yates pass
// driven by std::mt19937_64 seeded with `seed`, drawing indices by rejection
// sampling on the raw 64-bit output so the permutation is identical on every
// platform. Group g of size n receives floor(n * ratio) training items; the
// remaining round(N * ratio) - sum(floor) slots go to the groups with the
// largest fractional parts (ties: smaller key first). Both outputs list
// indices in ascending order.
SplitIndices StratifiedSplitIndices(std::span<const std::size_t> keys,
                                    double ratio, std::uint64_t seed);

// Strata are the number of error spans per document.
std::pair<std::vector<LabeledDoc>, std::vector<LabeledDoc>> StratifiedSplit(
    std::span<const LabeledDoc> docs, double ratio, std::uint64_t seed);

}  // namespace gedspan
