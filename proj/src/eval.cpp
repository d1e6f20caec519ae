#include "gedspan/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <unordered_map>

#include "gedspan/error.hpp"
#include "gedspan/utf8.hpp"
#include "parallel.hpp"

namespace gedspan {

std::size_t Levenshtein(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  // b is the shorter string; one row of |b| + 1 cells.
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({up + 1, row[j - 1] + 1,
                         diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

std::size_t Levenshtein(std::string_view a, std::string_view b) {
  return Levenshtein(utf8::Decode(a), utf8::Decode(b));
}

EvalReport Evaluate(std::span<const PredictedDoc> preds,
                    std::span<const GoldDoc> gold, SerializationMode mode,
                    unsigned jobs) {
  std::unordered_map<std::string_view, const GoldDoc*> by_id;
  for (const auto& g : gold) by_id.emplace(g.id, &g);

  std::vector<const GoldDoc*> matched(preds.size());
  std::vector<std::string> missing;
  for (std::size_t k = 0; k < preds.size(); ++k) {
    auto it = by_id.find(preds[k].id);
    if (it == by_id.end()) {
      missing.push_back(preds[k].id);
    } else {
      matched[k] = it->second;
    }
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& id : missing) list += (list.empty() ? "" : ", ") + id;
    throw EvaluationError(missing, "no gold record for: " + list);
  }
  for (std::size_t k = 0; k < preds.size(); ++k) {
    if (preds[k].spans.text_len() != matched[k]->spans.text_len()) {
      throw InvalidInput("doc '" + preds[k].id +
                         "': prediction and gold index texts of different "
                         "lengths");
    }
  }

  EvalReport report;
  report.serialization = mode;
  report.per_doc.resize(preds.size());
  detail::ParallelFor(preds.size(), jobs, [&](std::size_t k) {
    const GoldDoc& g = *matched[k];
    report.per_doc[k] = {
        preds[k].id, Levenshtein(Serialize(g.text, preds[k].spans, mode),
                                 Serialize(g.text, g.spans, mode))};
  });

  double total = 0.0;
  for (const auto& d : report.per_doc) total += static_cast<double>(d.distance);
  report.mean_distance =
      report.per_doc.empty() ? 0.0 : total / static_cast<double>(report.per_doc.size());
  return report;
}

namespace {

// Uniform draw from [0, bound) by rejection on the raw engine output.
std::uint64_t Below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

SplitIndices StratifiedSplitIndices(std::span<const std::size_t> keys,
                                    double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw InvalidInput("split ratio must lie strictly between 0 and 1");
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t k = 0; k < keys.size(); ++k) groups[keys[k]].push_back(k);

  constexpr double kEps = 1e-9;
  struct Quota {
    std::vector<std::size_t>* members;
    std::size_t train;
    double remainder;
  };
  std::vector<Quota> quotas;
  std::size_t assigned = 0;
  for (auto& [key, members] : groups) {
    const double exact = static_cast<double>(members.size()) * ratio;
    const auto floor = static_cast<std::size_t>(std::floor(exact + kEps));
    quotas.push_back({&members, floor, exact - static_cast<double>(floor)});
    assigned += floor;
  }
  const auto target = static_cast<std::size_t>(
      std::floor(static_cast<double>(keys.size()) * ratio + 0.5 + kEps));
  std::vector<std::size_t> order(quotas.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return quotas[a].remainder > quotas[b].remainder + kEps;
  });
  for (std::size_t k = 0; k < order.size() && assigned < target; ++k) {
    auto& q = quotas[order[k]];
    if (q.remainder > kEps && q.train < q.members->size()) {
      ++q.train;
      ++assigned;
    }
  }

  std::mt19937_64 rng(seed);
  SplitIndices out;
  for (auto& q : quotas) {
    auto& m = *q.members;
    for (std::size_t i = m.size(); i > 1; --i) {
      std::swap(m[i - 1], m[Below(rng, i)]);
    }
    out.train.insert(out.train.end(), m.begin(), m.begin() + q.train);
    out.dev.insert(out.dev.end(), m.begin() + q.train, m.end());
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.dev.begin(), out.dev.end());
  return out;
}

std::pair<std::vector<LabeledDoc>, std::vector<LabeledDoc>> StratifiedSplit(
    std::span<const LabeledDoc> docs, double ratio, std::uint64_t seed) {
  std::vector<std::size_t> keys;
  keys.reserve(docs.size());
  for (const auto& d : docs) keys.push_back(d.spans.size());
  const SplitIndices idx = StratifiedSplitIndices(keys, ratio, seed);
  std::pair<std::vector<LabeledDoc>, std::vector<LabeledDoc>> out;
  for (std::size_t k : idx.train) out.first.push_back(docs[k]);
  for (std::size_t k : idx.dev) out.second.push_back(docs[k]);
  return out;
}

}  // namespace gedspan
