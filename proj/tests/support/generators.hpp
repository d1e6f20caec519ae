#pragma once

// Random inputs for property tests.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gedspan/decode.hpp"
#include "gedspan/normalize.hpp"
#include "gedspan/spans.hpp"

namespace gedspan::testing {

using Rng = std::mt19937_64;

// Mixed ASCII, Bangla, punctuation, whitespace and zero-width characters;
// never contains '$'.
std::u32string RandomChars(Rng& rng, std::size_t max_len);
std::string RandomText(Rng& rng, std::size_t max_len);

// Random canonical span set over a text of `text_len` characters.
SpanSet RandomSpanSet(Rng& rng, std::size_t text_len, std::size_t max_spans = 6);

// Random rule table over the RandomChars alphabet. kShrinking only yields
// deletions, 1:1 substitutions and n:1 contractions.
enum class RuleShapes { kAny, kShrinking };
NormRules RandomRules(Rng& rng, std::size_t max_rules, RuleShapes shapes);

// Random document with whitespace-ish tokens and random probability vectors.
PredictionDoc RandomPredictionDoc(Rng& rng, std::size_t max_len);

}  // namespace gedspan::testing
