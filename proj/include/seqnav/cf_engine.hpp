#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seqnav/corpus.hpp"
#include "seqnav/recommendation.hpp"

namespace seqnav {

// Cosine of two user rows. Symmetric, in [0,1] for non-negative vectors.
// Throws ZeroVector if either row is all-zero.
double cosine_similarity(const UserItemMatrix& matrix, UserIdx u, UserIdx v);

// User-based collaborative filtering over an immutable user-item matrix.
// Row norms are cached at construction (model build); each recommend()
// call computes the target's similarity row and the neighbor-weighted
// item scores from scratch, which is the per-query cost being measured.
class CfEngine {
 public:
  explicit CfEngine(UserItemMatrix matrix,
                    std::optional<std::uint32_t> neighborhood = {});

  double similarity(UserIdx u, UserIdx v) const;

  // score(i) = sum over v != target of sim(target, v) * row(v)[i], items
  // already consumed by the target zeroed, rest normalized. Empty result
  // with reason NoNeighbors (no other user) or NoCandidates (no item left
  // with positive score).
  RecommendationDistribution recommend(
      UserIdx target, std::optional<std::uint32_t> top_k = {}) const;

  // Same scoring for an ad-hoc history (a user outside the matrix). The
  // query row is built from the history per the matrix mode; history
  // items are treated as consumed. kUnknownItem entries are dropped.
  RecommendationDistribution recommend_history(
      std::span<const ItemIdx> history, const std::string& target_token,
      std::optional<UserIdx> exclude = {},
      std::optional<std::uint32_t> top_k = {}) const;

  const UserItemMatrix& matrix() const noexcept { return matrix_; }

 private:
  RecommendationDistribution score_query(
      const std::vector<SparseEntry>& query_row,
      const std::vector<SparseEntry>& consumed, std::optional<UserIdx> exclude,
      const std::string& target_token,
      std::optional<std::uint32_t> top_k) const;

  UserItemMatrix matrix_;
  std::vector<double> norms_;
  std::optional<std::uint32_t> neighborhood_;  // top-k neighbors; unset = all
};

}  // namespace seqnav
