#pragma once

// Per-token class probabilities -> character-offset error spans.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "gedspan/annotation.hpp"
#include "gedspan/spans.hpp"

namespace gedspan {

// Probabilities in (O, B, I, M) order.
using ClassProbs = std::array<double, 4>;

inline constexpr double kProbSumTolerance = 1e-5;
inline constexpr double kDefaultThreshold = 0.8;

struct TokenPrediction {
  std::size_t start = 0;
  std::size_t end = 0;
  ClassProbs probs{1.0, 0.0, 0.0, 0.0};
};

struct PredictionDoc {
  std::string id;
  std::string text;
  std::vector<TokenPrediction> tokens;
};

// Throws InvalidInput on negative entries or a sum off 1 by more than
// kProbSumTolerance.
void ValidateProbs(const ClassProbs& probs);

// Throws InvalidInput when offsets are empty, out of range, unsorted or
// overlapping, or any probability vector is malformed.
void ValidatePredictionDoc(const PredictionDoc& doc);

// Argmax class (ties resolve O, B, I, M in that order); an error class whose
// probability is below `threshold` falls back to O.
TokenLabel ApplyThreshold(const ClassProbs& probs, double threshold);

struct DecodeOptions {
  double threshold = kDefaultThreshold;
  // Drop I tokens that do not continue a B/I run instead of opening a span.
  bool strict_inside = false;
};

// Maximal B/I runs become one region from the first token's start to the
// last token's end; M tokens add an insertion point at their end offset.
SpanSet DecodeSpans(const PredictionDoc& doc, const DecodeOptions& options = {});

}  // namespace gedspan
