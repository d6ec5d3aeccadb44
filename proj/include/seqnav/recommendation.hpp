#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "seqnav/corpus.hpp"

namespace seqnav {

enum class ProvenanceKind { Cf, CnOrder, CnPopularityFallback };

// Normalized probability map item -> P(recommend). Either `probs` is a
// proper distribution (sum 1 within 1e-9) or it is empty and
// `empty_reason` says why ("NoCandidates", "NoNeighbors"); the evaluator
// scores empty distributions as 0.
struct RecommendationDistribution {
  std::string target_user;
  std::vector<std::pair<ItemIdx, double>> probs;  // ascending item, > 0
  ProvenanceKind provenance = ProvenanceKind::Cf;
  std::uint32_t matched_order = 0;  // set when provenance == CnOrder
  std::string empty_reason;
  std::vector<ItemIdx> top_items;  // ranked head, only when top_k requested

  bool empty() const noexcept { return probs.empty(); }
  double prob_of(ItemIdx item) const;
};

// "cf", "cn-order-<k>", "cn-popularity-fallback"; empty distributions
// render as "empty-<reason>".
std::string provenance_label(const RecommendationDistribution& dist);

// Ranked head: descending probability, ascending item index on ties.
std::vector<ItemIdx> rank_items(
    const std::vector<std::pair<ItemIdx, double>>& probs, std::uint32_t k);

}  // namespace seqnav
