// Seed-deterministic random profile generators for structured and
// nearly-structured instances.
#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "mwsolve/core.hpp"

namespace mw {

// Thin wrapper with implementation-independent sampling so outputs are
// byte-identical for a seed on every platform (std::uniform_int_distribution
// is not portable across standard libraries).
struct Rng {
  std::mt19937_64 eng;
  explicit Rng(uint64_t seed) : eng(seed) {}
  // Uniform in [lo, hi], inclusive.
  int uniform(int lo, int hi) {
    return lo + static_cast<int>(eng() % static_cast<uint64_t>(hi - lo + 1));
  }
  bool coin() { return eng() & 1; }
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i)
      std::swap(v[i], v[uniform(0, i)]);
  }
};

// models: "sp-approval", "sc-approval", "sp-linear", "sc-linear".
// The structured base has n voters and m alternatives; noise_voters appends
// that many unstructured ballots (new voters), noise_alts injects that many
// unstructured alternatives into every ballot.
PreferenceProfile gen_profile(const std::string& model, int n, int m,
                              uint64_t seed, int noise_voters = 0,
                              int noise_alts = 0);

}  // namespace mw
