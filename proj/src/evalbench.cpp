#include "seqnav/evalbench.hpp"

#include <algorithm>
#include <chrono>

#include "seqnav/error.hpp"

namespace seqnav {

TestConsumption TestConsumption::from_split(const TemporalSplit& split) {
  TestConsumption tc;
  tc.rows.resize(split.test.size());
  for (std::size_t u = 0; u < split.test.size(); ++u) {
    std::vector<ItemIdx> sorted = split.test[u];
    std::sort(sorted.begin(), sorted.end());
    auto& row = tc.rows[u];
    for (std::size_t i = 0; i < sorted.size();) {
      std::size_t j = i;
      while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
      row.emplace_back(sorted[i], static_cast<std::uint32_t>(j - i));
      i = j;
    }
  }
  return tc;
}

double overlap_score(
    const RecommendationDistribution& dist,
    std::span<const std::pair<ItemIdx, std::uint32_t>> future) {
  if (future.empty()) fail("EmptyFuture", "user has no held-out events");
  if (dist.empty()) return 0.0;
  std::uint64_t total = 0;
  for (const auto& [item, count] : future) total += count;
  double score = 0.0;
  for (const auto& [item, count] : future)
    score += dist.prob_of(item) *
             (static_cast<double>(count) / static_cast<double>(total));
  return score;
}

CfRecommender::CfRecommender(const TemporalSplit& split, MatrixMode mode,
                             std::optional<std::uint32_t> neighborhood)
    : split_(split),
      engine_(build_matrix(split.train, mode), neighborhood) {}

RecommendationDistribution CfRecommender::query(UserIdx train_user) const {
  RecommendationDistribution dist = engine_.recommend(train_user);
  dist.target_user = split_.train.users.token(train_user);
  return dist;
}

CnRecommender::CnRecommender(const TemporalSplit& split,
                             std::uint32_t max_order)
    : index_(split.train, max_order) {
  queries_.reserve(split.train.sequences.size());
  for (const auto& seq : split.train.sequences)
    queries_.push_back(
        {split.train.users.token(seq.user), seq.items});
}

RecommendationDistribution CnRecommender::query(UserIdx train_user) const {
  return index_.recommend(queries_.at(train_user));
}

EvalReport evaluate(const TemporalSplit& split, const Recommender& rec) {
  if (split.train.sequences.empty())
    fail("DegenerateSplit", "split has no evaluable user");
  EvalReport report;
  report.engine = rec.name();
  TestConsumption future = TestConsumption::from_split(split);

  for (UserIdx u = 0; u < split.train.sequences.size(); ++u) {
    RecommendationDistribution dist = rec.query(u);
    double score = overlap_score(dist, future.rows[u]);
    const std::string& token = split.train.users.token(u);
    std::string label = provenance_label(dist);
    report.scores.push_back({token, score, label});
    ++report.provenance_histogram[label];
    if (dist.empty()) report.skipped.push_back({token, dist.empty_reason});
    report.aggregate_sum += score;
  }
  report.aggregate_mean =
      report.aggregate_sum / static_cast<double>(report.scores.size());
  for (const auto& ex : split.excluded)
    report.skipped.push_back({ex.user, ex.reason});
  return report;
}

LatencyStats measure_latency(const TemporalSplit& split,
                             const Recommender& rec, std::size_t warmup,
                             std::size_t repetitions) {
  if (repetitions < 1) fail("InvalidArgument", "repetitions must be >= 1");
  std::size_t n_users = split.train.sequences.size();
  if (n_users == 0) fail("NoQueries", "split has no evaluable user");

  using clock = std::chrono::steady_clock;
  std::vector<std::int64_t> samples;
  samples.reserve(repetitions);
  std::size_t sink = 0;  // keeps query results observable
  for (std::size_t s = 0; s < warmup + repetitions; ++s) {
    auto u = static_cast<UserIdx>(s % n_users);
    auto t0 = clock::now();
    RecommendationDistribution dist = rec.query(u);
    auto t1 = clock::now();
    sink += dist.probs.size();
    if (s >= warmup)
      samples.push_back(
          std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0)
              .count());
  }
  (void)sink;

  std::vector<std::int64_t> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  auto rank = [&](double q) {
    auto idx = static_cast<std::size_t>(
        std::max<double>(1.0, std::ceil(q * static_cast<double>(sorted.size()))));
    return sorted[idx - 1];
  };

  LatencyStats stats;
  stats.engine = rec.name();
  stats.count = sorted.size();
  double total = 0.0;
  for (auto ns : sorted) total += static_cast<double>(ns);
  stats.mean_ns = total / static_cast<double>(sorted.size());
  stats.median_ns = rank(0.5);
  stats.p95_ns = rank(0.95);
  stats.min_ns = sorted.front();
  stats.max_ns = sorted.back();
  return stats;
}

}  // namespace seqnav
