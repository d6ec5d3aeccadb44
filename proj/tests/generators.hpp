// Seeded random inputs for the oracle-equivalence suites.
#pragma once

#include <vector>

#include "seqnav/corpus.hpp"
#include "seqnav/synth.hpp"

namespace generators {

using seqnav::ItemIdx;
using seqnav::MatrixMode;
using seqnav::SparseEntry;
using seqnav::SplitMix64;
using seqnav::UserItemMatrix;

// Random sparse matrix, up to max_users x max_items, every row nonzero.
inline UserItemMatrix random_matrix(SplitMix64& rng, std::size_t max_users,
                                    std::size_t max_items) {
  UserItemMatrix m;
  m.mode = rng.next_below(2) == 0 ? MatrixMode::Binary : MatrixMode::Count;
  std::size_t users = 1 + rng.next_below(max_users);
  m.item_count = 1 + rng.next_below(max_items);
  m.rows.resize(users);
  for (auto& row : m.rows) {
    for (ItemIdx i = 0; i < m.item_count; ++i) {
      if (rng.next_below(100) < 45) {
        double value = m.mode == MatrixMode::Binary
                           ? 1.0
                           : static_cast<double>(1 + rng.next_below(5));
        row.push_back({i, value});
      }
    }
    if (row.empty()) {
      auto item = static_cast<ItemIdx>(rng.next_below(m.item_count));
      row.push_back({item, 1.0});
    }
  }
  return m;
}

// Random corpus within the oracle-equivalence bounds.
inline seqnav::Corpus random_corpus(std::uint64_t seed, std::uint32_t max_users,
                                    std::uint32_t max_items,
                                    std::uint32_t max_len) {
  SplitMix64 rng(seed);
  seqnav::SynthParams params;
  params.users = 1 + static_cast<std::uint32_t>(rng.next_below(max_users));
  params.items = 1 + static_cast<std::uint32_t>(rng.next_below(max_items));
  params.min_len = 1;
  params.max_len = 1 + static_cast<std::uint32_t>(rng.next_below(max_len));
  params.seed = seed * 0x9e3779b97f4a7c15ull + 1;
  return seqnav::synth_corpus(params);
}

}  // namespace generators
