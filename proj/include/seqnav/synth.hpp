#pragma once

#include <cstdint>
#include <vector>

#include "seqnav/corpus.hpp"

namespace seqnav {

// splitmix64; platform-stable so seeded outputs are reproducible
// everywhere, unlike stdlib distributions.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, n)
  std::uint64_t next_below(std::uint64_t n) { return next() % n; }

  // uniform in [0, 1)
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

struct SynthParams {
  std::uint32_t users = 50;
  std::uint32_t items = 25;
  std::uint32_t min_len = 2;
  std::uint32_t max_len = 12;
  // item draw = floor(items * u^bias); 1 = uniform, larger = head-heavier
  double bias = 1.0;
  std::uint64_t seed = 1;
};

// Seeded random event log: users "u0".."uN", items "i0".."iM", ordinal
// per-user timestamps, random weights in [1, 100]. Deterministic given
// the params.
std::vector<InteractionEvent> synth_events(const SynthParams& params);

Corpus synth_corpus(const SynthParams& params);

}  // namespace seqnav
