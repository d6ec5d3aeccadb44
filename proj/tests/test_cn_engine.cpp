#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <sstream>

#include "generators.hpp"
#include "oracles.hpp"
#include "seqnav/cn_engine.hpp"
#include "seqnav/error.hpp"
#include "seqnav/synth.hpp"

using namespace seqnav;

namespace {

// A=[PF,PL,MU,PL], B=[MU,PL,PF], C=[PL,PF,PL]; PF=0, PL=1, MU=2
Corpus worked_example() {
  std::istringstream in(
      "A\tPF\t0\nA\tPL\t1\nA\tMU\t2\nA\tPL\t3\n"
      "B\tMU\t0\nB\tPL\t1\nB\tPF\t2\n"
      "C\tPL\t0\nC\tPF\t1\nC\tPL\t2\n");
  return build_sequences(parse_event_log(in, LogFormat::GenericDelimited));
}

constexpr ItemIdx PF = 0, PL = 1, MU = 2;

std::string error_code(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

void check_matches_oracle(const PatternIndex& index, const Corpus& corpus,
                          const QueryHistory& query, std::uint32_t max_order) {
  RecommendationDistribution dist = index.recommend(query);
  auto exclude = corpus.users.find(query.target_user);
  oracles::CnOracleResult want =
      oracles::cn_recommend(corpus, query.items, exclude, max_order);

  CHECK(dist.empty() == want.is_empty);
  if (want.is_empty) return;
  if (want.matched_order > 0) {
    CHECK(dist.provenance == ProvenanceKind::CnOrder);
    CHECK(dist.matched_order == want.matched_order);
  } else {
    CHECK(dist.provenance == ProvenanceKind::CnPopularityFallback);
  }
  REQUIRE(dist.probs.size() == want.probs.size());
  for (const auto& [item, p] : dist.probs) {
    REQUIRE(want.probs.count(item) == 1);
    CHECK(p == doctest::Approx(want.probs[item]).epsilon(1e-12));
  }
}

}  // namespace

TEST_CASE("successor counts enumerate every occurrence") {
  Corpus corpus = worked_example();
  PatternIndex index(corpus, 2);

  std::vector<ItemIdx> bigram{PF, PL};
  auto after_bigram = index.successor_distribution(bigram);
  REQUIRE(after_bigram.has_value());
  REQUIRE(after_bigram->size() == 1);
  CHECK((*after_bigram)[0].first == MU);
  CHECK((*after_bigram)[0].second == 1.0);

  // the sole (PF, PL) occurrence with a successor belongs to A
  auto excluded = index.successor_distribution(bigram, *corpus.users.find("A"));
  CHECK_FALSE(excluded.has_value());

  std::vector<ItemIdx> unigram{PL};
  auto after_pl = index.successor_distribution(unigram);
  REQUIRE(after_pl.has_value());
  REQUIRE(after_pl->size() == 2);
  CHECK((*after_pl)[0].first == PF);
  CHECK((*after_pl)[0].second == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK((*after_pl)[1].first == MU);
  CHECK((*after_pl)[1].second == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("popularity counts every train event") {
  Corpus corpus = worked_example();
  PatternIndex index(corpus, 2);
  CHECK(index.popularity()[PL] == 5);
  CHECK(index.popularity()[PF] == 3);
  CHECK(index.popularity()[MU] == 2);
}

TEST_CASE("a length-1 sequence contributes popularity but no successors") {
  std::istringstream in("A\tx\t0\n");
  Corpus corpus =
      build_sequences(parse_event_log(in, LogFormat::GenericDelimited));
  PatternIndex index(corpus, 1);
  CHECK(index.popularity()[0] == 1);
  std::vector<ItemIdx> pattern{0};
  CHECK_FALSE(index.successor_distribution(pattern).has_value());
}

TEST_CASE("pattern length is bounded by max_order") {
  Corpus corpus = worked_example();
  PatternIndex index(corpus, 2);
  std::vector<ItemIdx> too_long{PF, PL, MU};
  CHECK(error_code([&] { (void)index.successor_distribution(too_long); }) ==
        "PatternTooLong");
  std::vector<ItemIdx> empty;
  CHECK(error_code([&] { (void)index.successor_distribution(empty); }) ==
        "InvalidArgument");
}

TEST_CASE("an outside user's history matches the longest suffix") {
  Corpus corpus = worked_example();
  PatternIndex index(corpus, 2);
  RecommendationDistribution dist = index.recommend({"D", {PF, PL}});
  CHECK(provenance_label(dist) == "cn-order-2");
  REQUIRE(dist.probs.size() == 1);
  CHECK(dist.probs[0].first == MU);
  CHECK(dist.probs[0].second == 1.0);
}

TEST_CASE("a missed order backs off one step at a time") {
  Corpus corpus = worked_example();
  PatternIndex index(corpus, 2);
  RecommendationDistribution dist = index.recommend({"D", {PF, MU}});
  CHECK(provenance_label(dist) == "cn-order-1");
  REQUIRE(dist.probs.size() == 1);
  CHECK(dist.probs[0].first == PL);
  CHECK(dist.probs[0].second == 1.0);
}

TEST_CASE("an unseen item falls back to popularity") {
  Corpus corpus = worked_example();
  PatternIndex index(corpus, 2);
  RecommendationDistribution dist = index.recommend({"D", {kUnknownItem}});
  CHECK(provenance_label(dist) == "cn-popularity-fallback");
  CHECK(dist.prob_of(PL) == 0.5);
  CHECK(dist.prob_of(PF) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(dist.prob_of(MU) == doctest::Approx(0.2).epsilon(1e-15));

  CHECK(error_code([&] { index.recommend({"D", {}}); }) == "EmptyHistory");
}

TEST_CASE("a known target's own occurrences are excluded") {
  Corpus corpus = worked_example();
  PatternIndex index(corpus, 2);
  RecommendationDistribution dist = index.recommend({"A", {PF, PL}});
  // (PF, PL) only occurs inside A's own sequence, so the match backs off
  // to (PL) with A's successors removed: B and C both continue with PF
  CHECK(provenance_label(dist) == "cn-order-1");
  REQUIRE(dist.probs.size() == 1);
  CHECK(dist.probs[0].first == PF);
  CHECK(dist.probs[0].second == 1.0);
}

TEST_CASE("already-consumed items may be recommended again") {
  Corpus corpus = worked_example();
  PatternIndex index(corpus, 2);
  RecommendationDistribution dist = index.recommend({"C", {PL, PF}});
  CHECK(provenance_label(dist) == "cn-order-1");
  CHECK(dist.prob_of(PL) == 1.0);  // C has heard PL twice already
}

TEST_CASE("excluding the only user empties even the fallback") {
  std::istringstream in("A\tx\t0\nA\ty\t1\n");
  Corpus corpus =
      build_sequences(parse_event_log(in, LogFormat::GenericDelimited));
  PatternIndex index(corpus, 2);
  RecommendationDistribution dist = index.recommend({"A", {0}});
  CHECK(dist.empty());
  CHECK(dist.empty_reason == "NoNeighbors");
}

TEST_CASE("weights never influence cn output") {
  SynthParams params;
  params.users = 6;
  params.items = 8;
  params.seed = 31;
  auto events = synth_events(params);
  auto reweighted = events;
  SplitMix64 rng(77);
  for (auto& ev : reweighted) ev.weight = 1 + rng.next_below(1000);

  Corpus a = build_sequences(events);
  Corpus b = build_sequences(reweighted);
  PatternIndex ia(a, 3), ib(b, 3);
  for (const auto& seq : a.sequences) {
    QueryHistory q{a.users.token(seq.user), seq.items};
    RecommendationDistribution da = ia.recommend(q);
    RecommendationDistribution db = ib.recommend(q);
    CHECK(da.probs == db.probs);
    CHECK(provenance_label(da) == provenance_label(db));
  }
}

TEST_CASE("recommendation equals the sequence-scanning oracle") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Corpus corpus = generators::random_corpus(seed, 8, 6, 10);
    auto max_order =
        static_cast<std::uint32_t>(1 + SplitMix64(seed).next_below(3));
    PatternIndex index(corpus, max_order);

    for (const auto& seq : corpus.sequences) {
      const std::string& token = corpus.users.token(seq.user);
      for (std::size_t len = 1; len <= seq.items.size(); ++len) {
        QueryHistory query{
            token, std::vector<ItemIdx>(seq.items.end() - len, seq.items.end())};
        check_matches_oracle(index, corpus, query, max_order);
        CHECK(index.recommend(query).matched_order <=
              std::min<std::size_t>(max_order, len));
      }
    }

    SplitMix64 rng(seed + 900);
    for (int extra = 0; extra < 3; ++extra) {
      QueryHistory query;
      query.target_user = "outsider";
      std::size_t len = 1 + rng.next_below(6);
      for (std::size_t k = 0; k < len; ++k) {
        bool unknown = rng.next_below(10) == 0;
        query.items.push_back(
            unknown ? kUnknownItem
                    : static_cast<ItemIdx>(rng.next_below(corpus.items.size())));
      }
      check_matches_oracle(index, corpus, query, max_order);
    }
  }
}
