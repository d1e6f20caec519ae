#include "gedspan/rules.hpp"

#include <fstream>
#include <sstream>

#include "gedspan/error.hpp"
#include "gedspan/utf8.hpp"

namespace gedspan {

namespace {

bool IsSpacedPunct(char32_t cp) {
  return cp == U'.' || cp == U',' || cp == U'?' || cp == U'!';
}

std::string_view Trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

}  // namespace

bool IsTerminalPunct(char32_t cp) {
  return cp == U'.' || cp == U'!' || cp == U'?' || cp == 0x0964;
}

WordSet ParseWordSet(std::string_view contents, const std::string& source) {
  WordSet out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < contents.size()) {
    std::size_t nl = contents.find('\n', pos);
    if (nl == std::string_view::npos) nl = contents.size();
    const std::string_view line = Trim(contents.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    try {
      utf8::Decode(line);
    } catch (const InvalidInput& e) {
      throw DataError(source, line_no, e.what());
    }
    out.emplace(line);
  }
  return out;
}

WordSet LoadWordSet(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path.string(), 0, "cannot open word list");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseWordSet(buffer.str(), path.string());
}

Lexicon BuildLexicon(const WordSet& raw_errors, const WordSet& dictionary,
                     const WordSet& title_words) {
  WordSet kept;
  for (const auto& w : raw_errors) {
    if (!dictionary.contains(w) && !title_words.contains(w)) kept.insert(w);
  }
  return Lexicon(std::move(kept));
}

SpanSet DetectSpaceBeforePunct(std::string_view text,
                               const SpaceRuleOptions& options) {
  const std::u32string chars = utf8::Decode(text);
  std::vector<ErrorSpan> spans;
  std::size_t p = 0;
  while (p < chars.size()) {
    if (!utf8::IsSpace(chars[p])) {
      ++p;
      continue;
    }
    const std::size_t run = p;
    while (p < chars.size() && utf8::IsSpace(chars[p])) ++p;
    if (p < chars.size() && IsSpacedPunct(chars[p])) {
      spans.push_back({run, options.include_punct ? p + 1 : p});
    }
  }
  return SpanSet::Normalize(std::move(spans), chars.size());
}

SpanSet DetectMissingEndPunct(std::string_view text) {
  const std::u32string chars = utf8::Decode(text);
  std::size_t last = chars.size();
  while (last > 0 && utf8::IsSpace(chars[last - 1])) --last;
  if (last == 0 || IsTerminalPunct(chars[last - 1])) {
    return SpanSet(chars.size());
  }
  return SpanSet::Make({{chars.size(), chars.size()}}, chars.size());
}

std::vector<WordToken> WordTokens(std::string_view text) {
  const std::u32string chars = utf8::Decode(text);
  std::vector<WordToken> out;
  std::size_t p = 0;
  auto is_break = [](char32_t c) { return utf8::IsSpace(c) || utf8::IsPunct(c); };
  while (p < chars.size()) {
    if (is_break(chars[p])) {
      ++p;
      continue;
    }
    const std::size_t start = p;
    while (p < chars.size() && !is_break(chars[p])) ++p;
    out.push_back({start, p,
                   utf8::Encode(std::u32string_view(chars).substr(start, p - start))});
  }
  return out;
}

SpanSet DetectSpelling(std::string_view text, const Lexicon& lexicon,
                       const Gazetteer& gazetteer) {
  std::vector<ErrorSpan> spans;
  const auto words = WordTokens(text);
  for (const auto& w : words) {
    if (lexicon.Contains(w.text) && !gazetteer.Contains(w.text)) {
      spans.push_back({w.start, w.end});
    }
  }
  return SpanSet::Normalize(std::move(spans), utf8::Length(text));
}

}  // namespace gedspan
