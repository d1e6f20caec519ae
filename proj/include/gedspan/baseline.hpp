#pragma once

// A dictionary-driven stand-in for a trained token classifier, so the whole
// pipeline can run without model checkpoints.

#include <string>
#include <string_view>

#include "gedspan/decode.hpp"
#include "gedspan/rules.hpp"

namespace gedspan {

struct BaselineOptions {
  // Put M on the last token when the text lacks terminal punctuation.
  bool emit_missing = true;
};

// Whitespace tokens; a token containing a lexicon word gets B with
// probability 1, the last token may get M, everything else is O.
PredictionDoc BaselinePredict(std::string id, std::string_view text,
                              const Lexicon& lexicon,
                              const BaselineOptions& options = {});

}  // namespace gedspan
