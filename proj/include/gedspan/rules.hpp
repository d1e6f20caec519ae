#pragma once

// Deterministic detectors for errors token classifiers tend to miss.

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "gedspan/spans.hpp"

namespace gedspan {

using WordSet = std::unordered_set<std::string>;

// One word per line, UTF-8, `#` comment lines and blank lines skipped,
// surrounding whitespace trimmed. Throws DataError.
WordSet LoadWordSet(const std::filesystem::path& path);
WordSet ParseWordSet(std::string_view contents,
                     const std::string& source = "<words>");

// Known misspellings, matched exactly and case-sensitively.
class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(WordSet words) : words_(std::move(words)) {}

  bool Contains(std::string_view word) const {
    return words_.contains(std::string(word));
  }
  const WordSet& words() const noexcept { return words_; }
  std::size_t size() const noexcept { return words_.size(); }

 private:
  WordSet words_;
};

// Named-entity words that must never be reported as misspellings.
class Gazetteer {
 public:
  Gazetteer() = default;
  explicit Gazetteer(WordSet words) : words_(std::move(words)) {}

  bool Contains(std::string_view word) const {
    return words_.contains(std::string(word));
  }
  const WordSet& words() const noexcept { return words_; }

 private:
  WordSet words_;
};

// raw_errors minus dictionary words minus title words.
Lexicon BuildLexicon(const WordSet& raw_errors, const WordSet& dictionary,
                     const WordSet& title_words);

struct SpaceRuleOptions {
  // Whether the span also covers the punctuation mark after the spaces.
  bool include_punct = true;
};

// Whitespace run directly before one of . , ? !
SpanSet DetectSpaceBeforePunct(std::string_view text,
                               const SpaceRuleOptions& options = {});

// Insertion point at the end when the last non-space character is not one of
// . ! ? or the danda.
SpanSet DetectMissingEndPunct(std::string_view text);

// Word tokens (maximal runs of non-space, non-punctuation characters) that
// are in the lexicon and not in the gazetteer.
SpanSet DetectSpelling(std::string_view text, const Lexicon& lexicon,
                       const Gazetteer& gazetteer);

struct WordToken {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string text;
};

std::vector<WordToken> WordTokens(std::string_view text);

bool IsTerminalPunct(char32_t cp);

}  // namespace gedspan
