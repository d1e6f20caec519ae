#pragma once

// Gold-corpus handling: `$`-annotated text, OBIM token labels, and the
// document-level proxy label used as an auxiliary training target.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gedspan/spans.hpp"

namespace gedspan {

enum class TokenLabel : unsigned char { kO = 0, kB = 1, kI = 2, kM = 3 };

inline constexpr std::array<TokenLabel, 4> kAllLabels = {
    TokenLabel::kO, TokenLabel::kB, TokenLabel::kI, TokenLabel::kM};

std::string_view ToString(TokenLabel label);
TokenLabel ParseTokenLabel(std::string_view name);

// Character offsets of one token, end-exclusive.
struct TokenOffset {
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const TokenOffset&, const TokenOffset&) = default;
};

// Throws InvalidInput unless 0 <= start < end <= text_len for every token and
// tokens are sorted and non-overlapping.
void ValidateTokens(std::span<const TokenOffset> tokens, std::size_t text_len);

// Maximal runs of non-whitespace characters. Used when no model tokenizer is
// available.
std::vector<TokenOffset> WhitespaceTokens(std::string_view text);

struct ParsedAnnotation {
  std::string text;
  SpanSet spans;
};

// "ab $cd$ ef" -> ("ab cd ef", {(3, 5)}); "$$" marks an insertion point.
// Every `$` is markup; there is no escape. Throws ParseError.
ParsedAnnotation ParseAnnotated(std::string_view annotated);

// Where an insertion point that touches whitespace is anchored when a corpus
// is loaded. kAsIs keeps the annotator's position.
enum class MissingAnchor { kAsIs, kBeforeWhitespace, kAfterWhitespace };

MissingAnchor ParseMissingAnchor(std::string_view name);

SpanSet AnchorInsertionPoints(std::string_view text, const SpanSet& spans,
                              MissingAnchor anchor);

// OBIM labels for `tokens`. The first token overlapping a region is B, the
// following tokens of the same region are I; the last token starting before
// an insertion point carries M unless it is already B or I. Throws
// LabelingError when an insertion point precedes every token.
std::vector<TokenLabel> LabelTokens(const SpanSet& spans,
                                    std::span<const TokenOffset> tokens);

// 1 iff more than 30% of the characters lie inside error regions.
int DocProxyLabel(std::size_t text_len, const SpanSet& spans);

struct LabeledDoc {
  std::string id;
  std::string clean_text;
  SpanSet spans;
  std::vector<TokenOffset> tokens;
  std::vector<TokenLabel> token_labels;
  int proxy_label = 0;
};

// Parses the annotation, tokenizes on whitespace, and labels.
LabeledDoc MakeLabeledDoc(std::string id, std::string_view annotated,
                          MissingAnchor anchor = MissingAnchor::kAsIs);

}  // namespace gedspan
