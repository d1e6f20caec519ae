#include "gedspan/baseline.hpp"

#include "gedspan/annotation.hpp"
#include "gedspan/utf8.hpp"

namespace gedspan {

namespace {

ClassProbs OneHot(TokenLabel label) {
  ClassProbs p{0.0, 0.0, 0.0, 0.0};
  p[static_cast<std::size_t>(label)] = 1.0;
  return p;
}

}  // namespace

PredictionDoc BaselinePredict(std::string id, std::string_view text,
                              const Lexicon& lexicon,
                              const BaselineOptions& options) {
  PredictionDoc doc;
  doc.id = std::move(id);
  doc.text = std::string(text);

  const auto tokens = WhitespaceTokens(text);
  const auto words = WordTokens(text);
  std::size_t w = 0;
  for (const auto& t : tokens) {
    TokenLabel label = TokenLabel::kO;
    while (w < words.size() && words[w].end <= t.start) ++w;
    for (std::size_t k = w; k < words.size() && words[k].start < t.end; ++k) {
      if (lexicon.Contains(words[k].text)) label = TokenLabel::kB;
    }
    doc.tokens.push_back({t.start, t.end, OneHot(label)});
  }
  if (options.emit_missing && !doc.tokens.empty() &&
      !DetectMissingEndPunct(text).empty() &&
      doc.tokens.back().probs[0] == 1.0) {
    doc.tokens.back().probs = OneHot(TokenLabel::kM);
  }
  return doc;
}

}  // namespace gedspan
