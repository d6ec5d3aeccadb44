#include "seqnav/synth.hpp"

#include <cmath>

#include "seqnav/error.hpp"

namespace seqnav {

std::vector<InteractionEvent> synth_events(const SynthParams& params) {
  if (params.users < 1 || params.items < 1)
    fail("InvalidArgument", "need at least one user and one item");
  if (params.min_len < 1 || params.min_len > params.max_len)
    fail("InvalidArgument", "need 1 <= min_len <= max_len");
  if (!(params.bias > 0.0)) fail("InvalidArgument", "bias must be > 0");

  SplitMix64 rng(params.seed);
  std::vector<InteractionEvent> events;
  for (std::uint32_t u = 0; u < params.users; ++u) {
    std::uint64_t span = params.max_len - params.min_len + 1;
    std::uint64_t len = params.min_len + rng.next_below(span);
    for (std::uint64_t t = 0; t < len; ++t) {
      double unit = rng.next_unit();
      auto item = static_cast<std::uint32_t>(
          static_cast<double>(params.items) * std::pow(unit, params.bias));
      if (item >= params.items) item = params.items - 1;
      InteractionEvent ev;
      ev.user = "u" + std::to_string(u);
      ev.item = "i" + std::to_string(item);
      ev.timestamp = static_cast<std::int64_t>(t);
      ev.weight = 1 + rng.next_below(100);
      events.push_back(std::move(ev));
    }
  }
  return events;
}

Corpus synth_corpus(const SynthParams& params) {
  return build_sequences(synth_events(params));
}

}  // namespace seqnav
