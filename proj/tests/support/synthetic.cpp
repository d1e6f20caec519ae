#include "synthetic.hpp"

#include <random>

#include "gedspan/annotation.hpp"
#include "gedspan/utf8.hpp"

namespace gedspan::testing {

namespace {

const std::vector<std::string> kWords = {
    "আমি", "তুমি", "সে", "বই", "পড়ি", "ভাত", "খাই", "বাড়ি", "যাব", "আজ",
    "কাল", "স্কুলে", "নদী", "গান", "শুনি", "the", "river", "school", "today", "book"};
const std::vector<std::string> kMisspellings = {"আমী", "তুমী", "বাড়ী", "স্কুলএ",
                                                "teh", "rivr", "scool"};

std::size_t Pick(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

bool Chance(std::mt19937_64& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

}  // namespace

SyntheticCorpus MakeSyntheticCorpus(std::size_t docs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SyntheticCorpus corpus;
  corpus.misspellings = WordSet(kMisspellings.begin(), kMisspellings.end());
  for (std::size_t d = 0; d < docs; ++d) {
    std::string annotated;
    const std::size_t words = 4 + Pick(rng, 8);
    for (std::size_t w = 0; w < words; ++w) {
      if (w > 0) {
        if (Chance(rng, 0.15)) {
          // Mid-sentence comma, sometimes with a stray space before it.
          if (Chance(rng, 0.5)) {
            annotated += "$ ,$";
          } else {
            annotated += ",";
          }
        }
        annotated += " ";
      }
      if (Chance(rng, 0.12)) {
        annotated += "$" + kMisspellings[Pick(rng, kMisspellings.size())] + "$";
      } else {
        annotated += kWords[Pick(rng, kWords.size())];
      }
    }
    const double end = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    if (end < 0.3) {
      annotated += "$$";                       // missing terminal mark
    } else if (end < 0.5) {
      annotated += Chance(rng, 0.5) ? "$ .$" : "$ ?$";  // space before the mark
    } else {
      annotated += Chance(rng, 0.5) ? "।" : ".";
    }
    auto parsed = ParseAnnotated(annotated);
    corpus.gold.push_back({"d" + std::to_string(d), std::move(parsed.text),
                           std::move(parsed.spans)});
    corpus.annotated.push_back(std::move(annotated));
  }
  return corpus;
}

std::vector<PredictionDoc> NoisyPredictions(const SyntheticCorpus& corpus,
                                            std::size_t false_positives,
                                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<PredictionDoc> out;
  for (const auto& g : corpus.gold) {
    PredictionDoc doc;
    doc.id = g.id;
    doc.text = g.text;
    const auto tokens = WordTokens(g.text);
    std::vector<bool> error(tokens.size(), false);
    std::vector<std::size_t> correct;
    for (std::size_t k = 0; k < tokens.size(); ++k) {
      for (const auto& s : g.spans) {
        if (s.start == tokens[k].start && s.end == tokens[k].end) error[k] = true;
      }
      if (!error[k]) correct.push_back(k);
    }
    for (std::size_t f = 0; f < false_positives && !correct.empty(); ++f) {
      const std::size_t pick = Pick(rng, correct.size());
      error[correct[pick]] = true;
      correct.erase(correct.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    for (std::size_t k = 0; k < tokens.size(); ++k) {
      const ClassProbs probs = error[k] ? ClassProbs{0.05, 0.9, 0.03, 0.02}
                                        : ClassProbs{0.9, 0.05, 0.03, 0.02};
      doc.tokens.push_back({tokens[k].start, tokens[k].end, probs});
    }
    out.push_back(std::move(doc));
  }
  return out;
}

}  // namespace gedspan::testing
