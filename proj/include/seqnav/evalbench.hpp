#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "seqnav/cf_engine.hpp"
#include "seqnav/cn_engine.hpp"
#include "seqnav/corpus.hpp"
#include "seqnav/recommendation.hpp"

namespace seqnav {

// Held-out consumption counts per train user (ascending item index).
struct TestConsumption {
  std::vector<std::vector<std::pair<ItemIdx, std::uint32_t>>> rows;

  static TestConsumption from_split(const TemporalSplit& split);
};

// Expected overlap between a recommendation distribution and the user's
// empirical future: sum over future items of P(item) * N(item) / sum N.
// Empty distributions score 0. Throws EmptyFuture.
double overlap_score(
    const RecommendationDistribution& dist,
    std::span<const std::pair<ItemIdx, std::uint32_t>> future);

// Query interface the evaluator and the benchmark drive. Implementations
// must answer with the train user's own data left out of the model, are
// immutable after construction, and safe for concurrent queries.
class Recommender {
 public:
  virtual ~Recommender() = default;
  virtual std::string name() const = 0;
  virtual RecommendationDistribution query(UserIdx train_user) const = 0;
};

// CF over the split's train matrix; the evaluation query is the user's
// full train row, their own row left out of the neighbor sums.
class CfRecommender final : public Recommender {
 public:
  CfRecommender(const TemporalSplit& split, MatrixMode mode,
                std::optional<std::uint32_t> neighborhood = {});

  std::string name() const override { return "cf"; }
  RecommendationDistribution query(UserIdx train_user) const override;
  const CfEngine& engine() const noexcept { return engine_; }

 private:
  const TemporalSplit& split_;
  CfEngine engine_;
};

// CN over the split's train sequences; the evaluation query is the user's
// full train sequence, their own occurrences excluded at match time.
class CnRecommender final : public Recommender {
 public:
  CnRecommender(const TemporalSplit& split, std::uint32_t max_order);

  std::string name() const override { return "cn"; }
  RecommendationDistribution query(UserIdx train_user) const override;
  const PatternIndex& index() const noexcept { return index_; }

 private:
  PatternIndex index_;
  std::vector<QueryHistory> queries_;  // prebuilt per train user
};

struct UserScore {
  std::string user;
  double score = 0.0;
  std::string provenance;
};

struct SkippedUser {
  std::string user;
  std::string reason;
};

struct EvalReport {
  std::string engine;
  std::vector<UserScore> scores;     // one per evaluable user, train order
  double aggregate_sum = 0.0;        // sum of per-user scores
  double aggregate_mean = 0.0;       // aggregate_sum / |scored users|
  std::vector<SkippedUser> skipped;  // split exclusions + empty distributions
  std::map<std::string, std::size_t> provenance_histogram;
};

EvalReport evaluate(const TemporalSplit& split, const Recommender& rec);

// Wall-clock per-query statistics, nanoseconds, post-warmup samples only.
struct LatencyStats {
  std::string engine;
  std::size_t count = 0;
  double mean_ns = 0.0;
  std::int64_t median_ns = 0;
  std::int64_t p95_ns = 0;
  std::int64_t min_ns = 0;
  std::int64_t max_ns = 0;
  std::int64_t build_ns = 0;  // model build cost, measured by the caller
};

// Issues per-user queries round-robin over the evaluable users, discards
// the first `warmup` samples, and reports statistics over the next
// `repetitions`. Strictly single-threaded. Throws NoQueries when the
// split has no evaluable user.
LatencyStats measure_latency(const TemporalSplit& split,
                             const Recommender& rec, std::size_t warmup,
                             std::size_t repetitions);

}  // namespace seqnav
