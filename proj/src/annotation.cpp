#include "gedspan/annotation.hpp"

#include <algorithm>

#include "gedspan/error.hpp"
#include "gedspan/utf8.hpp"

namespace gedspan {

std::string_view ToString(TokenLabel label) {
  switch (label) {
    case TokenLabel::kO:
      return "O";
    case TokenLabel::kB:
      return "B";
    case TokenLabel::kI:
      return "I";
    case TokenLabel::kM:
      return "M";
  }
  return "?";
}

TokenLabel ParseTokenLabel(std::string_view name) {
  if (name == "O") return TokenLabel::kO;
  if (name == "B") return TokenLabel::kB;
  if (name == "I") return TokenLabel::kI;
  if (name == "M") return TokenLabel::kM;
  throw InvalidInput("unknown token label '" + std::string(name) + "'");
}

void ValidateTokens(std::span<const TokenOffset> tokens, std::size_t text_len) {
  std::size_t prev_end = 0;
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    const auto& t = tokens[k];
    if (t.start >= t.end || t.end > text_len) {
      throw InvalidInput("token " + std::to_string(k) + " (" +
                         std::to_string(t.start) + ", " +
                         std::to_string(t.end) + ") is empty or out of range");
    }
    if (k > 0 && t.start < prev_end) {
      throw InvalidInput("token " + std::to_string(k) +
                         " overlaps or precedes the previous token");
    }
    prev_end = t.end;
  }
}

std::vector<TokenOffset> WhitespaceTokens(std::string_view text) {
  const std::u32string chars = utf8::Decode(text);
  std::vector<TokenOffset> out;
  std::size_t p = 0;
  while (p < chars.size()) {
    while (p < chars.size() && utf8::IsSpace(chars[p])) ++p;
    if (p == chars.size()) break;
    const std::size_t start = p;
    while (p < chars.size() && !utf8::IsSpace(chars[p])) ++p;
    out.push_back({start, p});
  }
  return out;
}

ParsedAnnotation ParseAnnotated(std::string_view annotated) {
  const std::u32string chars = utf8::Decode(annotated);
  std::u32string clean;
  clean.reserve(chars.size());
  std::vector<ErrorSpan> spans;
  bool inside = false;
  std::size_t open_clean = 0;
  std::size_t open_at = 0;

  for (std::size_t i = 0; i < chars.size(); ++i) {
    if (chars[i] != U'$') {
      clean.push_back(chars[i]);
      continue;
    }
    if (inside) {
      spans.push_back({open_clean, clean.size()});
      inside = false;
    } else if (i + 1 < chars.size() && chars[i + 1] == U'$') {
      spans.push_back({clean.size(), clean.size()});
      ++i;
    } else {
      inside = true;
      open_clean = clean.size();
      open_at = i;
    }
  }
  if (inside) {
    throw ParseError(ParseError::Kind::kUnbalanced, open_at,
                     "unbalanced '$' at offset " + std::to_string(open_at));
  }

  ParsedAnnotation out;
  try {
    out.spans = SpanSet::Make(std::move(spans), clean.size());
  } catch (const InvalidInput& e) {
    // Only an insertion point between two touching regions gets here; the
    // regions merge and the point ends up nested inside.
    throw ParseError(ParseError::Kind::kNested, 0,
                     std::string("nested annotation: ") + e.what());
  }
  out.text = utf8::Encode(clean);
  return out;
}

MissingAnchor ParseMissingAnchor(std::string_view name) {
  if (name == "as-is") return MissingAnchor::kAsIs;
  if (name == "before-space") return MissingAnchor::kBeforeWhitespace;
  if (name == "after-space") return MissingAnchor::kAfterWhitespace;
  throw InvalidInput("unknown missing-anchor policy '" + std::string(name) +
                     "' (expected as-is, before-space or after-space)");
}

SpanSet AnchorInsertionPoints(std::string_view text, const SpanSet& spans,
                              MissingAnchor anchor) {
  if (anchor == MissingAnchor::kAsIs) return spans;
  const std::u32string chars = utf8::Decode(text);
  if (chars.size() != spans.text_len()) {
    throw InvalidInput("text length does not match span set");
  }
  std::vector<ErrorSpan> moved;
  moved.reserve(spans.size());
  for (auto s : spans) {
    if (s.empty()) {
      std::size_t q = s.start;
      if (anchor == MissingAnchor::kBeforeWhitespace) {
        while (q > 0 && utf8::IsSpace(chars[q - 1])) --q;
      } else {
        while (q < chars.size() && utf8::IsSpace(chars[q])) ++q;
      }
      s = {q, q};
    }
    moved.push_back(s);
  }
  return SpanSet::Normalize(std::move(moved), spans.text_len());
}

std::vector<TokenLabel> LabelTokens(const SpanSet& spans,
                                    std::span<const TokenOffset> tokens) {
  ValidateTokens(tokens, spans.text_len());
  std::vector<TokenLabel> labels(tokens.size(), TokenLabel::kO);

  std::vector<ErrorSpan> regions;
  std::vector<std::size_t> points;
  for (const auto& s : spans) {
    if (s.empty()) {
      points.push_back(s.start);
    } else {
      regions.push_back(s);
    }
  }

  // Regions and tokens are both sorted; walk them together. A region that
  // overlapped the previous token makes this token a continuation.
  std::size_t r = 0;
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    const auto& t = tokens[k];
    while (r < regions.size() && regions[r].end <= t.start) ++r;
    bool overlaps = false;
    bool continues = false;
    for (std::size_t j = r; j < regions.size() && regions[j].start < t.end;
         ++j) {
      overlaps = true;
      if (k > 0 && regions[j].start < tokens[k - 1].end) continues = true;
    }
    if (overlaps) labels[k] = continues ? TokenLabel::kI : TokenLabel::kB;
  }

  for (std::size_t q : points) {
    // Last token that starts before q: it ends at or before q, or q falls
    // inside it.
    auto it = std::partition_point(
        tokens.begin(), tokens.end(),
        [q](const TokenOffset& t) { return t.start < q; });
    if (it == tokens.begin()) {
      throw LabelingError("insertion point " + std::to_string(q) +
                          " has no preceding token to carry the M label");
    }
    const auto k = static_cast<std::size_t>(it - tokens.begin()) - 1;
    if (labels[k] == TokenLabel::kO) labels[k] = TokenLabel::kM;
  }
  return labels;
}

int DocProxyLabel(std::size_t text_len, const SpanSet& spans) {
  if (text_len == 0) throw InvalidInput("proxy label of an empty text");
  // covered / text_len > 0.30, kept in integers.
  return spans.CoveredLength() * 10 > text_len * 3 ? 1 : 0;
}

LabeledDoc MakeLabeledDoc(std::string id, std::string_view annotated,
                          MissingAnchor anchor) {
  ParsedAnnotation parsed = ParseAnnotated(annotated);
  LabeledDoc doc;
  doc.id = std::move(id);
  doc.spans = AnchorInsertionPoints(parsed.text, parsed.spans, anchor);
  doc.clean_text = std::move(parsed.text);
  doc.tokens = WhitespaceTokens(doc.clean_text);
  doc.token_labels = LabelTokens(doc.spans, doc.tokens);
  doc.proxy_label =
      doc.spans.text_len() == 0 ? 0 : DocProxyLabel(doc.spans.text_len(), doc.spans);
  return doc;
}

}  // namespace gedspan
