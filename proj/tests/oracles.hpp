// Brute-force reference implementations, independent of the engine code
// paths they check: the CN oracle scans raw sequences, the CF oracle runs
// dense double loops, the overlap oracle replays the metric definition.
#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "seqnav/corpus.hpp"

namespace oracles {

using seqnav::Corpus;
using seqnav::ItemIdx;
using seqnav::UserIdx;
using seqnav::UserItemMatrix;

// ---- CN: direct sequence scanning -----------------------------------

inline std::optional<std::map<ItemIdx, double>> cn_successors(
    const Corpus& corpus, std::span<const ItemIdx> pattern,
    std::optional<UserIdx> exclude) {
  std::map<ItemIdx, std::uint64_t> counts;
  std::uint64_t total = 0;
  for (const auto& seq : corpus.sequences) {
    if (exclude && seq.user == *exclude) continue;
    const auto& items = seq.items;
    if (items.size() <= pattern.size()) continue;
    for (std::size_t pos = 0; pos + pattern.size() < items.size(); ++pos) {
      bool match = true;
      for (std::size_t k = 0; k < pattern.size(); ++k)
        if (items[pos + k] != pattern[k]) {
          match = false;
          break;
        }
      if (match) {
        ++counts[items[pos + pattern.size()]];
        ++total;
      }
    }
  }
  if (total == 0) return std::nullopt;
  std::map<ItemIdx, double> probs;
  for (const auto& [item, count] : counts)
    probs[item] =
        static_cast<double>(count) / static_cast<double>(total);
  return probs;
}

struct CnOracleResult {
  std::map<ItemIdx, double> probs;
  std::uint32_t matched_order = 0;  // 0 = popularity fallback
  bool is_empty = false;
};

inline CnOracleResult cn_recommend(const Corpus& corpus,
                                   std::span<const ItemIdx> history,
                                   std::optional<UserIdx> exclude,
                                   std::uint32_t max_order) {
  CnOracleResult result;
  auto n_max = static_cast<std::uint32_t>(
      std::min<std::size_t>(max_order, history.size()));
  for (std::uint32_t n = n_max; n >= 1; --n) {
    auto suffix = history.subspan(history.size() - n, n);
    auto probs = cn_successors(corpus, suffix, exclude);
    if (probs) {
      result.probs = std::move(*probs);
      result.matched_order = n;
      return result;
    }
  }
  std::map<ItemIdx, std::uint64_t> counts;
  std::uint64_t total = 0;
  for (const auto& seq : corpus.sequences) {
    if (exclude && seq.user == *exclude) continue;
    for (ItemIdx item : seq.items) {
      ++counts[item];
      ++total;
    }
  }
  if (total == 0) {
    result.is_empty = true;
    return result;
  }
  for (const auto& [item, count] : counts)
    result.probs[item] =
        static_cast<double>(count) / static_cast<double>(total);
  return result;
}

// ---- CF: dense double loops ------------------------------------------

inline std::vector<std::vector<double>> to_dense(const UserItemMatrix& m) {
  std::vector<std::vector<double>> dense(
      m.rows.size(), std::vector<double>(m.item_count, 0.0));
  for (std::size_t u = 0; u < m.rows.size(); ++u)
    for (const auto& e : m.rows[u]) dense[u][e.item] = e.value;
  return dense;
}

inline double cf_cosine(const std::vector<double>& a,
                        const std::vector<double>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

struct CfOracleResult {
  std::map<ItemIdx, double> probs;
  bool is_empty = false;
  std::string reason;
};

inline CfOracleResult cf_recommend(const UserItemMatrix& m, UserIdx target) {
  CfOracleResult result;
  if (m.rows.size() <= 1) {
    result.is_empty = true;
    result.reason = "NoNeighbors";
    return result;
  }
  auto dense = to_dense(m);
  std::vector<double> scores(m.item_count, 0.0);
  for (UserIdx v = 0; v < dense.size(); ++v) {
    if (v == target) continue;
    double sim = cf_cosine(dense[target], dense[v]);
    for (std::size_t i = 0; i < m.item_count; ++i)
      scores[i] += sim * dense[v][i];
  }
  for (std::size_t i = 0; i < m.item_count; ++i)
    if (dense[target][i] > 0.0) scores[i] = 0.0;
  double total = 0.0;
  for (double s : scores) total += s;
  if (total <= 0.0) {
    result.is_empty = true;
    result.reason = "NoCandidates";
    return result;
  }
  for (std::size_t i = 0; i < m.item_count; ++i)
    if (scores[i] > 0.0)
      result.probs[static_cast<ItemIdx>(i)] = scores[i] / total;
  return result;
}

// ---- metric ------------------------------------------------------------

inline double overlap(const std::map<ItemIdx, double>& probs,
                      const std::map<ItemIdx, std::uint32_t>& future) {
  std::uint64_t total = 0;
  for (const auto& [item, count] : future) total += count;
  double score = 0.0;
  for (const auto& [item, count] : future) {
    auto it = probs.find(item);
    double p = it == probs.end() ? 0.0 : it->second;
    score += p * (static_cast<double>(count) / static_cast<double>(total));
  }
  return score;
}

}  // namespace oracles
