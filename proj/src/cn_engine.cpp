#include "seqnav/cn_engine.hpp"

#include <algorithm>

#include "seqnav/error.hpp"

namespace seqnav {

PatternIndex::PatternIndex(const Corpus& corpus, std::uint32_t max_order)
    : users_(corpus.users), max_order_(max_order) {
  if (corpus.sequences.empty()) fail("EmptyInput", "empty corpus");
  if (max_order < 1) fail("InvalidArgument", "max_order must be >= 1");

  popularity_.assign(corpus.items.size(), 0);
  user_counts_.resize(corpus.sequences.size());

  for (const auto& seq : corpus.sequences) {
    const auto& items = seq.items;
    for (ItemIdx item : items) ++popularity_[item];
    total_events_ += items.size();

    std::vector<ItemIdx> sorted = items;
    std::sort(sorted.begin(), sorted.end());
    auto& counts = user_counts_[seq.user];
    for (std::size_t i = 0; i < sorted.size();) {
      std::size_t j = i;
      while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
      counts.emplace_back(sorted[i], j - i);
      i = j;
    }

    for (std::uint32_t n = 1; n <= max_order_; ++n) {
      if (items.size() <= n) break;
      for (std::size_t pos = 0; pos + n < items.size(); ++pos) {
        std::vector<ItemIdx> gram(items.begin() + pos, items.begin() + pos + n);
        table_[std::move(gram)].push_back({items[pos + n], seq.user, 1});
      }
    }
  }

  // merge duplicate (successor, user) postings; sorted order also makes
  // query-time aggregation emit items in ascending order
  for (auto& [gram, postings] : table_) {
    std::sort(postings.begin(), postings.end(),
              [](const Posting& a, const Posting& b) {
                if (a.successor != b.successor) return a.successor < b.successor;
                return a.user < b.user;
              });
    std::vector<Posting> merged;
    for (const Posting& p : postings) {
      if (!merged.empty() && merged.back().successor == p.successor &&
          merged.back().user == p.user) {
        merged.back().count += p.count;
      } else {
        merged.push_back(p);
      }
    }
    postings = std::move(merged);
  }
}

std::optional<std::vector<std::pair<ItemIdx, double>>>
PatternIndex::successor_distribution(std::span<const ItemIdx> pattern,
                                     std::optional<UserIdx> exclude) const {
  if (pattern.empty()) fail("InvalidArgument", "empty pattern");
  if (pattern.size() > max_order_)
    fail("PatternTooLong",
         "pattern length " + std::to_string(pattern.size()) +
             " exceeds max_order " + std::to_string(max_order_));

  std::vector<ItemIdx> key(pattern.begin(), pattern.end());
  auto it = table_.find(key);
  if (it == table_.end()) return std::nullopt;

  std::vector<std::pair<ItemIdx, std::uint64_t>> counts;
  std::uint64_t total = 0;
  for (const Posting& p : it->second) {
    if (exclude && p.user == *exclude) continue;
    if (!counts.empty() && counts.back().first == p.successor)
      counts.back().second += p.count;
    else
      counts.emplace_back(p.successor, p.count);
    total += p.count;
  }
  if (total == 0) return std::nullopt;

  std::vector<std::pair<ItemIdx, double>> probs;
  probs.reserve(counts.size());
  for (const auto& [item, count] : counts)
    probs.emplace_back(item,
                       static_cast<double>(count) / static_cast<double>(total));
  return probs;
}

RecommendationDistribution PatternIndex::recommend(
    const QueryHistory& query, std::optional<std::uint32_t> top_k) const {
  if (query.items.empty()) fail("EmptyHistory", "query history is empty");
  std::optional<UserIdx> exclude = users_.find(query.target_user);

  auto n_max = static_cast<std::uint32_t>(
      std::min<std::size_t>(max_order_, query.items.size()));
  for (std::uint32_t n = n_max; n >= 1; --n) {
    std::span<const ItemIdx> suffix(query.items.data() + query.items.size() - n,
                                    n);
    auto probs = successor_distribution(suffix, exclude);
    if (probs) {
      RecommendationDistribution dist;
      dist.target_user = query.target_user;
      dist.provenance = ProvenanceKind::CnOrder;
      dist.matched_order = n;
      dist.probs = std::move(*probs);
      if (top_k) dist.top_items = rank_items(dist.probs, *top_k);
      return dist;
    }
  }
  return popularity_fallback(query.target_user, exclude, top_k);
}

RecommendationDistribution PatternIndex::popularity_fallback(
    const std::string& target_token, std::optional<UserIdx> exclude,
    std::optional<std::uint32_t> top_k) const {
  RecommendationDistribution dist;
  dist.target_user = target_token;
  dist.provenance = ProvenanceKind::CnPopularityFallback;

  std::vector<std::uint64_t> counts = popularity_;
  std::uint64_t total = total_events_;
  if (exclude) {
    for (const auto& [item, count] : user_counts_[*exclude]) {
      counts[item] -= count;
      total -= count;
    }
  }
  if (total == 0) {
    dist.empty_reason = "NoNeighbors";
    return dist;
  }
  for (ItemIdx i = 0; i < counts.size(); ++i)
    if (counts[i] > 0)
      dist.probs.emplace_back(
          i, static_cast<double>(counts[i]) / static_cast<double>(total));
  if (top_k) dist.top_items = rank_items(dist.probs, *top_k);
  return dist;
}

}  // namespace seqnav
