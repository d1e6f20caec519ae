#include "gedspan/decode.hpp"

#include <cmath>

#include "gedspan/error.hpp"
#include "gedspan/utf8.hpp"

namespace gedspan {

void ValidateProbs(const ClassProbs& probs) {
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw InvalidInput("class probabilities must be finite and non-negative");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbSumTolerance) {
    throw InvalidInput("class probabilities sum to " + std::to_string(sum) +
                       ", not 1");
  }
}

void ValidatePredictionDoc(const PredictionDoc& doc) {
  const std::size_t text_len = utf8::Length(doc.text);
  std::size_t prev_end = 0;
  for (std::size_t k = 0; k < doc.tokens.size(); ++k) {
    const auto& t = doc.tokens[k];
    if (t.start >= t.end || t.end > text_len) {
      throw InvalidInput("doc '" + doc.id + "' token " + std::to_string(k) +
                         " has empty or out-of-range offsets (" +
                         std::to_string(t.start) + ", " +
                         std::to_string(t.end) + ")");
    }
    if (k > 0 && t.start < prev_end) {
      throw InvalidInput("doc '" + doc.id + "' token " + std::to_string(k) +
                         " overlaps or precedes the previous token");
    }
    prev_end = t.end;
    try {
      ValidateProbs(t.probs);
    } catch (const InvalidInput& e) {
      throw InvalidInput("doc '" + doc.id + "' token " + std::to_string(k) +
                         ": " + e.what());
    }
  }
}

TokenLabel ApplyThreshold(const ClassProbs& probs, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw InvalidInput("threshold must lie in [0, 1]");
  }
  ValidateProbs(probs);
  std::size_t best = 0;
  for (std::size_t c = 1; c < probs.size(); ++c) {
    if (probs[c] > probs[best]) best = c;
  }
  if (best != 0 && probs[best] < threshold) return TokenLabel::kO;
  return static_cast<TokenLabel>(best);
}

SpanSet DecodeSpans(const PredictionDoc& doc, const DecodeOptions& options) {
  ValidatePredictionDoc(doc);
  std::vector<ErrorSpan> spans;
  bool in_run = false;
  for (const auto& t : doc.tokens) {
    switch (ApplyThreshold(t.probs, options.threshold)) {
      case TokenLabel::kB:
        spans.push_back({t.start, t.end});
        in_run = true;
        break;
      case TokenLabel::kI:
        if (in_run) {
          spans.back().end = t.end;
        } else if (!options.strict_inside) {
          spans.push_back({t.start, t.end});
          in_run = true;
        }
        break;
      case TokenLabel::kM:
        spans.push_back({t.end, t.end});
        in_run = false;
        break;
      case TokenLabel::kO:
        in_run = false;
        break;
    }
  }
  return SpanSet::Normalize(std::move(spans), utf8::Length(doc.text));
}

}  // namespace gedspan
