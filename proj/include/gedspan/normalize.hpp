#pragma once

// Table-driven text normalization and the reverse mapping of spans found on
// normalized text back onto the original text.

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gedspan/spans.hpp"

namespace gedspan {

struct NormRule {
  std::u32string pattern;
  std::u32string replacement;
};

// An ordered list of literal rewrites. Applied in a single left-to-right
// pass: at each position the longest matching pattern wins, earlier rules
// win ties, and replaced text is never rescanned.
class NormRules {
 public:
  NormRules() = default;
  // Throws InvalidInput on an empty pattern.
  explicit NormRules(std::vector<NormRule> rules);

  // TSV: `pattern<TAB>replacement`, `#` comment lines, blank lines ignored.
  // Escapes: \uXXXX, \UXXXXXXXX, \t, \n, \\. Throws DataError.
  static NormRules Parse(std::string_view tsv,
                         const std::string& source = "<rules>");
  static NormRules Load(const std::filesystem::path& path);

  const std::vector<NormRule>& rules() const noexcept { return rules_; }
  bool empty() const noexcept { return rules_.empty(); }

  std::u32string Apply(std::u32string_view text) const;

 private:
  std::vector<NormRule> rules_;
  // First codepoint -> rule indices, longest pattern first, then table order.
  std::unordered_map<char32_t, std::vector<std::size_t>> by_first_;
};

std::string Normalize(std::string_view text, const NormRules& rules);

// Monotone map from normalized-text boundaries to original-text boundaries,
// derived from a minimum edit script.
//
// Each normalized boundary j may correspond to a run of original boundaries
// when original characters were deleted there; Lower(j)/Upper(j) are the ends
// of that run. MapToOriginal() is the single-valued view: Lower(j) except at
// the final boundary, which maps to the original length.
class AlignmentMap {
 public:
  AlignmentMap() = default;
  AlignmentMap(std::vector<std::size_t> lower, std::vector<std::size_t> upper);

  static AlignmentMap Identity(std::size_t length);

  std::size_t normalized_length() const noexcept { return lower_.size() - 1; }
  std::size_t original_length() const noexcept { return upper_.back(); }

  std::size_t Lower(std::size_t j) const { return lower_.at(j); }
  std::size_t Upper(std::size_t j) const { return upper_.at(j); }
  std::size_t Map(std::size_t j) const;
  std::vector<std::size_t> MapToOriginal() const;

 private:
  std::vector<std::size_t> lower_{0};
  std::vector<std::size_t> upper_{0};
};

// Unit-cost codepoint alignment. The edit script is traced back from the end
// of both strings; among equal-cost moves it prefers match, then
// substitution, then deletion of an original character, then insertion.
AlignmentMap Align(std::u32string_view original, std::u32string_view normalized);
AlignmentMap Align(std::string_view original, std::string_view normalized);

// kExpand maps a region's edges outward over original characters deleted at
// the boundary; kContract maps them inward.
enum class EdgePolicy { kExpand, kContract };

EdgePolicy ParseEdgePolicy(std::string_view name);

// Region (s, e) -> (Lower(s), Upper(e)) under kExpand; insertion point s ->
// Map(s). The result is re-normalized over the original length. A region made
// only of inserted characters collapses to an insertion point.
SpanSet MapSpansToOriginal(const SpanSet& spans, const AlignmentMap& alignment,
                           EdgePolicy policy = EdgePolicy::kExpand);

}  // namespace gedspan
