#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "seqnav/corpus.hpp"
#include "seqnav/recommendation.hpp"

namespace seqnav {

// A target's consumption so far. target_user may be absent from the
// corpus (no exclusion applies then); items may contain kUnknownItem.
struct QueryHistory {
  std::string target_user;
  std::vector<ItemIdx> items;
};

// Successor index over train sequences: for every contiguous item n-gram
// (n = 1..max_order) and every position where it occurs, the immediately
// following item is counted per source user. Per-user counts are retained
// so a target's own occurrences can be excluded at query time. Immutable
// after construction; queries are pure reads.
class PatternIndex {
 public:
  PatternIndex(const Corpus& corpus, std::uint32_t max_order);

  std::uint32_t max_order() const noexcept { return max_order_; }

  // Aggregates successor counts of `pattern` across all source users
  // except `exclude` and normalizes by their sum; nullopt when nothing is
  // left. Probabilities are exact count ratios, so results do not depend
  // on aggregation order. Throws PatternTooLong when |pattern| > max_order.
  std::optional<std::vector<std::pair<ItemIdx, double>>> successor_distribution(
      std::span<const ItemIdx> pattern,
      std::optional<UserIdx> exclude = {}) const;

  // Longest-match backoff: try the history suffix of length
  // min(max_order, |history|), then shorter suffixes, then the popularity
  // fallback. The target user's own contributions (including their share
  // of the popularity counts) are always excluded. Throws EmptyHistory.
  RecommendationDistribution recommend(
      const QueryHistory& query, std::optional<std::uint32_t> top_k = {}) const;

  // Total train occurrence count per item.
  const std::vector<std::uint64_t>& popularity() const noexcept {
    return popularity_;
  }

  const Vocabulary& users() const noexcept { return users_; }

 private:
  struct Posting {
    ItemIdx successor;
    UserIdx user;
    std::uint32_t count;
  };

  struct NGramHash {
    std::size_t operator()(const std::vector<ItemIdx>& gram) const noexcept {
      std::size_t h = 0x9e3779b97f4a7c15ull;
      for (ItemIdx x : gram) {
        h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      }
      return h;
    }
  };

  RecommendationDistribution popularity_fallback(
      const std::string& target_token, std::optional<UserIdx> exclude,
      std::optional<std::uint32_t> top_k) const;

  // postings sorted by (successor, user), duplicates merged
  std::unordered_map<std::vector<ItemIdx>, std::vector<Posting>, NGramHash>
      table_;
  std::vector<std::uint64_t> popularity_;          // per item
  std::vector<std::vector<std::pair<ItemIdx, std::uint64_t>>> user_counts_;
  std::uint64_t total_events_ = 0;
  Vocabulary users_;
  std::uint32_t max_order_ = 1;
};

inline PatternIndex build_index(const Corpus& corpus, std::uint32_t max_order) {
  return PatternIndex(corpus, max_order);
}

inline RecommendationDistribution recommend_cn(
    const PatternIndex& index, const QueryHistory& query,
    std::optional<std::uint32_t> top_k = {}) {
  return index.recommend(query, top_k);
}

}  // namespace seqnav
