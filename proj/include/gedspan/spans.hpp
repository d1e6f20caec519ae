#pragma once

// Character-offset error spans and the span-set algebra used for ensembling.
//
// Offsets count Unicode scalar values from the start of the text. A span with
// start == end is an insertion point ("content missing after"); every other
// span marks a contiguous error region [start, end).

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gedspan {

struct ErrorSpan {
  std::size_t start = 0;
  std::size_t end = 0;

  bool empty() const noexcept { return start == end; }
  std::size_t length() const noexcept { return end - start; }

  friend auto operator<=>(const ErrorSpan&, const ErrorSpan&) = default;
};

// A canonical, immutable set of spans over a text of known length.
//
// Invariants: spans are sorted by (start, end); non-empty spans are pairwise
// disjoint and never adjacent (adjacent runs are merged); every end is at most
// text_len; an empty span never lies strictly inside a non-empty one.
class SpanSet {
 public:
  SpanSet() = default;
  explicit SpanSet(std::size_t text_len) : text_len_(text_len) {}

  // Validating constructor. Rejects reversed or out-of-range spans, any
  // overlap between non-empty spans, and empty spans strictly inside a
  // non-empty one. Adjacent spans are merged and duplicate insertion points
  // collapse.
  static SpanSet Make(std::vector<ErrorSpan> spans, std::size_t text_len);

  // Lenient constructor: overlapping and adjacent spans are merged, empty
  // spans swallowed by a region are dropped. Range checks still apply.
  static SpanSet Normalize(std::vector<ErrorSpan> spans, std::size_t text_len);

  const std::vector<ErrorSpan>& spans() const noexcept { return spans_; }
  std::size_t text_len() const noexcept { return text_len_; }
  std::size_t size() const noexcept { return spans_.size(); }
  bool empty() const noexcept { return spans_.empty(); }
  auto begin() const noexcept { return spans_.begin(); }
  auto end() const noexcept { return spans_.end(); }

  // Number of characters covered by non-empty spans.
  std::size_t CoveredLength() const noexcept;
  // Per-character membership mask of length text_len.
  std::vector<bool> CoverageMask() const;

  friend bool operator==(const SpanSet&, const SpanSet&) = default;

 private:
  std::vector<ErrorSpan> spans_;
  std::size_t text_len_ = 0;
};

enum class SerializationMode { kAnnotatedText, kSpanListString };

// Accepts "annotated" and "spanlist".
SerializationMode ParseSerializationMode(std::string_view name);
std::string_view ToString(SerializationMode mode);

// Character-membership union / intersection, re-segmented into maximal runs.
// Insertion points survive a union unless swallowed by a region, and survive
// an intersection only when every input has one at the same position.
SpanSet SpanUnion(std::span<const SpanSet> sets);
SpanSet SpanIntersection(std::span<const SpanSet> sets);

// "ab $cd$ ef" style rendering; insertion points render as "$$".
std::string ToAnnotated(std::string_view text, const SpanSet& spans);

// "[(0, 4), (10, 14)]"; the empty set renders as "[]".
std::string ToSpanListString(const SpanSet& spans);
std::vector<ErrorSpan> ParseSpanListString(std::string_view rendered);

std::string Serialize(std::string_view text, const SpanSet& spans,
                      SerializationMode mode);

}  // namespace gedspan
