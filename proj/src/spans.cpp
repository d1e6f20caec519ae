#include "gedspan/spans.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "gedspan/error.hpp"
#include "gedspan/utf8.hpp"

namespace gedspan {

namespace {

void CheckRange(const std::vector<ErrorSpan>& spans, std::size_t text_len) {
  for (const auto& s : spans) {
    if (s.start > s.end) {
      throw InvalidInput("span (" + std::to_string(s.start) + ", " +
                         std::to_string(s.end) + ") has start > end");
    }
    if (s.end > text_len) {
      throw InvalidInput("span (" + std::to_string(s.start) + ", " +
                         std::to_string(s.end) + ") exceeds text length " +
                         std::to_string(text_len));
    }
  }
}

// Splits into sorted regions and sorted, de-duplicated insertion points.
void Partition(const std::vector<ErrorSpan>& spans,
               std::vector<ErrorSpan>& regions,
               std::vector<std::size_t>& points) {
  for (const auto& s : spans) {
    if (s.empty()) {
      points.push_back(s.start);
    } else {
      regions.push_back(s);
    }
  }
  std::sort(regions.begin(), regions.end());
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
}

bool StrictlyInside(const std::vector<ErrorSpan>& regions, std::size_t p) {
  // First region with start >= p; the candidate container is the one before.
  auto it = std::lower_bound(
      regions.begin(), regions.end(), p,
      [](const ErrorSpan& r, std::size_t v) { return r.start < v; });
  if (it == regions.begin()) return false;
  --it;
  return it->start < p && p < it->end;
}

std::vector<ErrorSpan> Merge(const std::vector<ErrorSpan>& regions,
                             std::vector<std::size_t> points) {
  std::vector<ErrorSpan> out;
  out.reserve(regions.size() + points.size());
  std::size_t pi = 0;
  for (const auto& r : regions) {
    while (pi < points.size() && points[pi] <= r.start) {
      out.push_back({points[pi], points[pi]});
      ++pi;
    }
    out.push_back(r);
  }
  for (; pi < points.size(); ++pi) out.push_back({points[pi], points[pi]});
  return out;
}

// Intervals of `a` intersected with intervals of `b`, both sorted & disjoint.
std::vector<ErrorSpan> IntersectRegions(const std::vector<ErrorSpan>& a,
                                        const std::vector<ErrorSpan>& b) {
  std::vector<ErrorSpan> out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const std::size_t lo = std::max(a[i].start, b[j].start);
    const std::size_t hi = std::min(a[i].end, b[j].end);
    if (lo < hi) out.push_back({lo, hi});
    if (a[i].end < b[j].end) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

void CheckSameLength(std::span<const SpanSet> sets) {
  if (sets.empty()) throw InvalidInput("span set list is empty");
  for (const auto& s : sets) {
    if (s.text_len() != sets.front().text_len()) {
      throw InvalidInput("span sets index texts of different lengths (" +
                         std::to_string(sets.front().text_len()) + " vs " +
                         std::to_string(s.text_len()) + ")");
    }
  }
}

}  // namespace

SpanSet SpanSet::Make(std::vector<ErrorSpan> spans, std::size_t text_len) {
  CheckRange(spans, text_len);
  std::vector<ErrorSpan> regions;
  std::vector<std::size_t> points;
  Partition(spans, regions, points);

  std::vector<ErrorSpan> merged;
  for (const auto& r : regions) {
    if (!merged.empty() && r.start < merged.back().end) {
      throw InvalidInput("overlapping spans (" +
                         std::to_string(merged.back().start) + ", " +
                         std::to_string(merged.back().end) + ") and (" +
                         std::to_string(r.start) + ", " +
                         std::to_string(r.end) + ")");
    }
    if (!merged.empty() && r.start == merged.back().end) {
      merged.back().end = r.end;
    } else {
      merged.push_back(r);
    }
  }
  for (std::size_t p : points) {
    if (StrictlyInside(merged, p)) {
      throw InvalidInput("insertion point " + std::to_string(p) +
                         " lies inside an error span");
    }
  }
  SpanSet out(text_len);
  out.spans_ = Merge(merged, std::move(points));
  return out;
}

SpanSet SpanSet::Normalize(std::vector<ErrorSpan> spans, std::size_t text_len) {
  CheckRange(spans, text_len);
  std::vector<ErrorSpan> regions;
  std::vector<std::size_t> points;
  Partition(spans, regions, points);

  std::vector<ErrorSpan> merged;
  for (const auto& r : regions) {
    if (!merged.empty() && r.start <= merged.back().end) {
      merged.back().end = std::max(merged.back().end, r.end);
    } else {
      merged.push_back(r);
    }
  }
  std::erase_if(points,
                [&](std::size_t p) { return StrictlyInside(merged, p); });
  SpanSet out(text_len);
  out.spans_ = Merge(merged, std::move(points));
  return out;
}

std::size_t SpanSet::CoveredLength() const noexcept {
  std::size_t n = 0;
  for (const auto& s : spans_) n += s.length();
  return n;
}

std::vector<bool> SpanSet::CoverageMask() const {
  std::vector<bool> mask(text_len_, false);
  for (const auto& s : spans_) {
    for (std::size_t p = s.start; p < s.end; ++p) mask[p] = true;
  }
  return mask;
}

SerializationMode ParseSerializationMode(std::string_view name) {
  if (name == "annotated") return SerializationMode::kAnnotatedText;
  if (name == "spanlist") return SerializationMode::kSpanListString;
  throw InvalidInput("unknown serialization mode '" + std::string(name) +
                     "' (expected annotated or spanlist)");
}

std::string_view ToString(SerializationMode mode) {
  return mode == SerializationMode::kAnnotatedText ? "annotated" : "spanlist";
}

SpanSet SpanUnion(std::span<const SpanSet> sets) {
  CheckSameLength(sets);
  std::vector<ErrorSpan> all;
  for (const auto& s : sets) all.insert(all.end(), s.begin(), s.end());
  return SpanSet::Normalize(std::move(all), sets.front().text_len());
}

SpanSet SpanIntersection(std::span<const SpanSet> sets) {
  CheckSameLength(sets);
  std::vector<ErrorSpan> regions;
  std::vector<std::size_t> points;
  Partition(sets.front().spans(), regions, points);
  for (const auto& s : sets.subspan(1)) {
    std::vector<ErrorSpan> other_regions;
    std::vector<std::size_t> other_points;
    Partition(s.spans(), other_regions, other_points);
    regions = IntersectRegions(regions, other_regions);
    std::vector<std::size_t> common;
    std::set_intersection(points.begin(), points.end(), other_points.begin(),
                          other_points.end(), std::back_inserter(common));
    points = std::move(common);
  }
  std::vector<ErrorSpan> all = std::move(regions);
  for (std::size_t p : points) all.push_back({p, p});
  return SpanSet::Normalize(std::move(all), sets.front().text_len());
}

std::string ToAnnotated(std::string_view text, const SpanSet& spans) {
  const std::u32string chars = utf8::Decode(text);
  if (chars.size() != spans.text_len()) {
    throw InvalidInput("text has " + std::to_string(chars.size()) +
                       " characters but spans index " +
                       std::to_string(spans.text_len()));
  }
  std::string out;
  out.reserve(text.size() + 2 * spans.size());
  const auto& list = spans.spans();
  std::size_t k = 0;
  std::size_t open_end = 0;
  bool open = false;
  for (std::size_t p = 0; p <= chars.size(); ++p) {
    if (open && open_end == p) {
      out.push_back('$');
      open = false;
    }
    // Sorted order puts an insertion point (p, p) before a region (p, e).
    while (k < list.size() && list[k].start == p) {
      if (list[k].empty()) {
        out += "$$";
      } else {
        out.push_back('$');
        open = true;
        open_end = list[k].end;
      }
      ++k;
    }
    if (p < chars.size()) utf8::AppendCodepoint(out, chars[p]);
  }
  return out;
}

std::string ToSpanListString(const SpanSet& spans) {
  std::string out = "[";
  bool first = true;
  for (const auto& s : spans) {
    if (!first) out += ", ";
    first = false;
    out += "(" + std::to_string(s.start) + ", " + std::to_string(s.end) + ")";
  }
  out += "]";
  return out;
}

std::vector<ErrorSpan> ParseSpanListString(std::string_view rendered) {
  std::size_t pos = 0;
  auto fail = [&](const char* what) -> void {
    throw InvalidInput(std::string(what) + " at position " +
                       std::to_string(pos) + " in span list '" +
                       std::string(rendered) + "'");
  };
  auto skip_ws = [&] {
    while (pos < rendered.size() &&
           std::isspace(static_cast<unsigned char>(rendered[pos]))) {
      ++pos;
    }
  };
  auto expect = [&](char c) {
    skip_ws();
    if (pos >= rendered.size() || rendered[pos] != c) {
      fail((std::string("expected '") + c + "'").c_str());
    }
    ++pos;
  };
  auto number = [&]() -> std::size_t {
    skip_ws();
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(rendered.data() + pos,
                                     rendered.data() + rendered.size(), value);
    if (ec != std::errc()) fail("expected a non-negative integer");
    pos = static_cast<std::size_t>(ptr - rendered.data());
    return value;
  };

  std::vector<ErrorSpan> out;
  expect('[');
  skip_ws();
  if (pos < rendered.size() && rendered[pos] == ']') {
    ++pos;
  } else {
    while (true) {
      expect('(');
      const std::size_t s = number();
      expect(',');
      const std::size_t e = number();
      expect(')');
      out.push_back({s, e});
      skip_ws();
      if (pos < rendered.size() && rendered[pos] == ',') {
        ++pos;
        continue;
      }
      expect(']');
      break;
    }
  }
  skip_ws();
  if (pos != rendered.size()) fail("trailing characters");
  return out;
}

std::string Serialize(std::string_view text, const SpanSet& spans,
                      SerializationMode mode) {
  return mode == SerializationMode::kAnnotatedText ? ToAnnotated(text, spans)
                                                   : ToSpanListString(spans);
}

}  // namespace gedspan
