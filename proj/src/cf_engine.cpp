#include "seqnav/cf_engine.hpp"

#include <algorithm>
#include <cmath>

#include "seqnav/error.hpp"

namespace seqnav {

namespace {

double dot(const std::vector<SparseEntry>& a,
           const std::vector<SparseEntry>& b) {
  double sum = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].item < b[j].item) {
      ++i;
    } else if (b[j].item < a[i].item) {
      ++j;
    } else {
      sum += a[i].value * b[j].value;
      ++i;
      ++j;
    }
  }
  return sum;
}

double row_norm(const std::vector<SparseEntry>& row) {
  double sum = 0.0;
  for (const auto& e : row) sum += e.value * e.value;
  return std::sqrt(sum);
}

}  // namespace

double cosine_similarity(const UserItemMatrix& matrix, UserIdx u, UserIdx v) {
  const auto& ru = matrix.rows.at(u);
  const auto& rv = matrix.rows.at(v);
  double nu = row_norm(ru);
  double nv = row_norm(rv);
  if (nu == 0.0 || nv == 0.0)
    fail("ZeroVector", "cosine of an all-zero user row");
  return dot(ru, rv) / (nu * nv);
}

CfEngine::CfEngine(UserItemMatrix matrix,
                   std::optional<std::uint32_t> neighborhood)
    : matrix_(std::move(matrix)), neighborhood_(neighborhood) {
  norms_.reserve(matrix_.rows.size());
  for (const auto& row : matrix_.rows) norms_.push_back(row_norm(row));
}

double CfEngine::similarity(UserIdx u, UserIdx v) const {
  if (norms_.at(u) == 0.0 || norms_.at(v) == 0.0)
    fail("ZeroVector", "cosine of an all-zero user row");
  return dot(matrix_.rows[u], matrix_.rows[v]) / (norms_[u] * norms_[v]);
}

RecommendationDistribution CfEngine::recommend(
    UserIdx target, std::optional<std::uint32_t> top_k) const {
  const auto& row = matrix_.rows.at(target);
  return score_query(row, row, target, std::string(), top_k);
}

RecommendationDistribution CfEngine::recommend_history(
    std::span<const ItemIdx> history, const std::string& target_token,
    std::optional<UserIdx> exclude, std::optional<std::uint32_t> top_k) const {
  std::vector<ItemIdx> known(history.begin(), history.end());
  std::erase(known, kUnknownItem);
  std::sort(known.begin(), known.end());
  std::vector<SparseEntry> query_row;
  for (std::size_t i = 0; i < known.size();) {
    std::size_t j = i;
    while (j < known.size() && known[j] == known[i]) ++j;
    double value = matrix_.mode == MatrixMode::Binary
                       ? 1.0
                       : static_cast<double>(j - i);
    query_row.push_back({known[i], value});
    i = j;
  }
  return score_query(query_row, query_row, exclude, target_token, top_k);
}

RecommendationDistribution CfEngine::score_query(
    const std::vector<SparseEntry>& query_row,
    const std::vector<SparseEntry>& consumed, std::optional<UserIdx> exclude,
    const std::string& target_token, std::optional<std::uint32_t> top_k) const {
  RecommendationDistribution dist;
  dist.target_user = target_token;
  dist.provenance = ProvenanceKind::Cf;

  std::size_t neighbor_count =
      matrix_.rows.size() - (exclude.has_value() ? 1 : 0);
  if (neighbor_count == 0) {
    dist.empty_reason = "NoNeighbors";
    return dist;
  }
  double query_norm = row_norm(query_row);
  if (query_norm == 0.0) {
    dist.empty_reason = "NoCandidates";
    return dist;
  }

  std::vector<std::pair<UserIdx, double>> sims;
  sims.reserve(neighbor_count);
  for (UserIdx v = 0; v < matrix_.rows.size(); ++v) {
    if (exclude && v == *exclude) continue;
    if (norms_[v] == 0.0) continue;
    double sim = dot(query_row, matrix_.rows[v]) / (query_norm * norms_[v]);
    if (sim > 0.0) sims.emplace_back(v, sim);
  }
  if (neighborhood_ && sims.size() > *neighborhood_) {
    std::sort(sims.begin(), sims.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    sims.resize(*neighborhood_);
    std::sort(sims.begin(), sims.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }

  std::vector<double> scores(matrix_.item_count, 0.0);
  for (const auto& [v, sim] : sims)
    for (const auto& e : matrix_.rows[v]) scores[e.item] += sim * e.value;

  // already-consumed items are removed from the candidate set
  for (const auto& e : consumed) scores[e.item] = 0.0;

  double total = 0.0;
  for (double s : scores) total += s;
  if (total <= 0.0) {
    dist.empty_reason = "NoCandidates";
    return dist;
  }
  for (ItemIdx i = 0; i < scores.size(); ++i)
    if (scores[i] > 0.0) dist.probs.emplace_back(i, scores[i] / total);
  if (top_k) dist.top_items = rank_items(dist.probs, *top_k);
  return dist;
}

}  // namespace seqnav
