#include "gedspan/normalize.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "gedspan/error.hpp"
#include "gedspan/utf8.hpp"

namespace gedspan {

namespace {

int HexValue(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::u32string Unescape(std::string_view field, const std::string& source,
                        std::size_t line) {
  std::string bytes;
  std::size_t i = 0;
  while (i < field.size()) {
    if (field[i] != '\\') {
      bytes.push_back(field[i++]);
      continue;
    }
    if (i + 1 >= field.size()) {
      throw DataError(source, line, "dangling backslash");
    }
    const char kind = field[i + 1];
    if (kind == 't' || kind == 'n' || kind == '\\') {
      bytes.push_back(kind == 't' ? '\t' : kind == 'n' ? '\n' : '\\');
      i += 2;
      continue;
    }
    if (kind != 'u' && kind != 'U') {
      throw DataError(source, line,
                      std::string("unknown escape \\") + kind);
    }
    const std::size_t digits = kind == 'u' ? 4 : 8;
    if (i + 2 + digits > field.size()) {
      throw DataError(source, line, "truncated \\u escape");
    }
    char32_t cp = 0;
    for (std::size_t k = 0; k < digits; ++k) {
      const int h = HexValue(field[i + 2 + k]);
      if (h < 0) throw DataError(source, line, "bad hex digit in escape");
      cp = cp * 16 + static_cast<char32_t>(h);
    }
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      throw DataError(source, line, "escape is not a Unicode scalar value");
    }
    utf8::AppendCodepoint(bytes, cp);
    i += 2 + digits;
  }
  try {
    return utf8::Decode(bytes);
  } catch (const InvalidInput& e) {
    throw DataError(source, line, e.what());
  }
}

}  // namespace

NormRules::NormRules(std::vector<NormRule> rules) : rules_(std::move(rules)) {
  for (std::size_t k = 0; k < rules_.size(); ++k) {
    if (rules_[k].pattern.empty()) {
      throw InvalidInput("normalization rule " + std::to_string(k) +
                         " has an empty pattern");
    }
    by_first_[rules_[k].pattern.front()].push_back(k);
  }
  for (auto& [first, indices] : by_first_) {
    std::stable_sort(indices.begin(), indices.end(),
                     [this](std::size_t a, std::size_t b) {
                       return rules_[a].pattern.size() >
                              rules_[b].pattern.size();
                     });
  }
}

NormRules NormRules::Parse(std::string_view tsv, const std::string& source) {
  std::vector<NormRule> rules;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= tsv.size()) {
    std::size_t nl = tsv.find('\n', pos);
    if (nl == std::string_view::npos) nl = tsv.size();
    std::string_view line = tsv.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw DataError(source, line_no, "expected pattern<TAB>replacement");
    }
    NormRule rule{Unescape(line.substr(0, tab), source, line_no),
                  Unescape(line.substr(tab + 1), source, line_no)};
    if (rule.pattern.empty()) {
      throw DataError(source, line_no, "empty pattern");
    }
    rules.push_back(std::move(rule));
  }
  return NormRules(std::move(rules));
}

NormRules NormRules::Load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path.string(), 0, "cannot open rules file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str(), path.string());
}

std::u32string NormRules::Apply(std::u32string_view text) const {
  if (rules_.empty()) return std::u32string(text);
  std::u32string out;
  out.reserve(text.size());
  std::size_t p = 0;
  while (p < text.size()) {
    const NormRule* hit = nullptr;
    if (auto it = by_first_.find(text[p]); it != by_first_.end()) {
      for (std::size_t k : it->second) {
        const auto& pat = rules_[k].pattern;
        if (text.substr(p, pat.size()) == pat) {
          hit = &rules_[k];
          break;
        }
      }
    }
    if (hit != nullptr) {
      out += hit->replacement;
      p += hit->pattern.size();
    } else {
      out.push_back(text[p++]);
    }
  }
  return out;
}

std::string Normalize(std::string_view text, const NormRules& rules) {
  if (rules.empty()) return std::string(text);
  return utf8::Encode(rules.Apply(utf8::Decode(text)));
}

AlignmentMap::AlignmentMap(std::vector<std::size_t> lower,
                           std::vector<std::size_t> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty() || lower_.size() != upper_.size()) {
    throw InvalidInput("alignment bounds must be non-empty and equal length");
  }
}

AlignmentMap AlignmentMap::Identity(std::size_t length) {
  std::vector<std::size_t> map(length + 1);
  for (std::size_t j = 0; j <= length; ++j) map[j] = j;
  return AlignmentMap(map, map);
}

std::size_t AlignmentMap::Map(std::size_t j) const {
  return j == normalized_length() ? upper_.at(j) : lower_.at(j);
}

std::vector<std::size_t> AlignmentMap::MapToOriginal() const {
  std::vector<std::size_t> out(lower_);
  out.back() = upper_.back();
  return out;
}

AlignmentMap Align(std::u32string_view original,
                   std::u32string_view normalized) {
  const std::size_t n = original.size();
  const std::size_t m = normalized.size();

  // Equal trailing characters are always matched by the traceback, so the
  // common suffix is aligned directly.
  std::size_t suffix = 0;
  while (suffix < n && suffix < m &&
         original[n - 1 - suffix] == normalized[m - 1 - suffix]) {
    ++suffix;
  }
  const std::u32string_view a = original.substr(0, n - suffix);
  const std::u32string_view b = normalized.substr(0, m - suffix);
  const std::size_t rows = a.size() + 1;
  const std::size_t cols = b.size() + 1;

  // The backward move out of each cell is fixed once its distance is known,
  // so only two distance rows are kept alongside the move table.
  enum Move : std::uint8_t { kMatch, kSubstitute, kDelete, kInsert };
  std::vector<std::uint8_t> moves(rows * cols);
  std::vector<std::uint32_t> prev(cols);
  std::vector<std::uint32_t> cur(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    prev[j] = static_cast<std::uint32_t>(j);
    moves[j] = kInsert;
  }
  for (std::size_t i = 1; i < rows; ++i) {
    cur[0] = static_cast<std::uint32_t>(i);
    moves[i * cols] = kDelete;
    for (std::size_t j = 1; j < cols; ++j) {
      const bool same = a[i - 1] == b[j - 1];
      const std::uint32_t diag = prev[j - 1] + (same ? 0 : 1);
      const std::uint32_t best = std::min({diag, prev[j] + 1, cur[j - 1] + 1});
      cur[j] = best;
      Move mv;
      if (same && prev[j - 1] == best) {
        mv = kMatch;
      } else if (prev[j - 1] + 1 == best) {
        mv = kSubstitute;
      } else if (prev[j] + 1 == best) {
        mv = kDelete;
      } else {
        mv = kInsert;
      }
      moves[i * cols + j] = mv;
    }
    std::swap(prev, cur);
  }

  std::vector<std::size_t> lower(m + 1, n);
  std::vector<std::size_t> upper(m + 1, 0);
  auto visit = [&](std::size_t nj, std::size_t oi) {
    lower[nj] = std::min(lower[nj], oi);
    upper[nj] = std::max(upper[nj], oi);
  };
  for (std::size_t k = 0; k <= suffix; ++k) visit(m - k, n - k);

  // Every cell (i, j) on the traced path pairs normalized boundary j with
  // original boundary i.
  std::size_t i = a.size();
  std::size_t j = b.size();
  visit(j, i);
  while (i > 0 || j > 0) {
    switch (moves[i * cols + j]) {
      case kMatch:
      case kSubstitute:
        --i, --j;
        break;
      case kDelete:
        --i;
        break;
      case kInsert:
        --j;
        break;
    }
    visit(j, i);
  }
  return AlignmentMap(std::move(lower), std::move(upper));
}

AlignmentMap Align(std::string_view original, std::string_view normalized) {
  return Align(utf8::Decode(original), utf8::Decode(normalized));
}

EdgePolicy ParseEdgePolicy(std::string_view name) {
  if (name == "expand") return EdgePolicy::kExpand;
  if (name == "contract") return EdgePolicy::kContract;
  throw InvalidInput("unknown edge policy '" + std::string(name) +
                     "' (expected expand or contract)");
}

SpanSet MapSpansToOriginal(const SpanSet& spans, const AlignmentMap& alignment,
                           EdgePolicy policy) {
  if (spans.text_len() != alignment.normalized_length()) {
    throw InvalidInput("spans index a text of length " +
                       std::to_string(spans.text_len()) +
                       " but the alignment covers " +
                       std::to_string(alignment.normalized_length()));
  }
  std::vector<ErrorSpan> mapped;
  mapped.reserve(spans.size());
  for (const auto& s : spans) {
    if (s.empty()) {
      const std::size_t q = alignment.Map(s.start);
      mapped.push_back({q, q});
    } else if (policy == EdgePolicy::kExpand) {
      mapped.push_back({alignment.Lower(s.start), alignment.Upper(s.end)});
    } else {
      mapped.push_back({alignment.Upper(s.start), alignment.Lower(s.end)});
    }
  }
  return SpanSet::Normalize(std::move(mapped), alignment.original_length());
}

}  // namespace gedspan
