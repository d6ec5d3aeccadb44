#include "seqnav/recommendation.hpp"

#include <algorithm>

namespace seqnav {

double RecommendationDistribution::prob_of(ItemIdx item) const {
  auto it = std::lower_bound(
      probs.begin(), probs.end(), item,
      [](const std::pair<ItemIdx, double>& e, ItemIdx x) { return e.first < x; });
  if (it == probs.end() || it->first != item) return 0.0;
  return it->second;
}

std::string provenance_label(const RecommendationDistribution& dist) {
  if (dist.empty()) return "empty-" + dist.empty_reason;
  switch (dist.provenance) {
    case ProvenanceKind::Cf:
      return "cf";
    case ProvenanceKind::CnOrder:
      return "cn-order-" + std::to_string(dist.matched_order);
    case ProvenanceKind::CnPopularityFallback:
      return "cn-popularity-fallback";
  }
  return "unknown";
}

std::vector<ItemIdx> rank_items(
    const std::vector<std::pair<ItemIdx, double>>& probs, std::uint32_t k) {
  std::vector<std::pair<ItemIdx, double>> ranked = probs;
  std::sort(ranked.begin(), ranked.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second > b.second;
              return a.first < b.first;
            });
  std::vector<ItemIdx> head;
  head.reserve(std::min<std::size_t>(k, ranked.size()));
  for (std::size_t i = 0; i < ranked.size() && i < k; ++i)
    head.push_back(ranked[i].first);
  return head;
}

}  // namespace seqnav
