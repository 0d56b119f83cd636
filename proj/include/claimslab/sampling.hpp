// Seeded generators for weights and problems. All draws go through Rng so
// identical seeds give identical streams on every platform.
#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "claimslab/core.hpp"

namespace claimslab {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double log_uniform(double lo, double hi);
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  bool chance(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Flat-Dirichlet weight with every component at least `floor` before renormalizing.
WeightVector sample_weight(Rng& rng, std::size_t n, double floor = 1e-3);

/// A wellformed problem with claims on [0, claim_scale]. A share of draws
/// carry exact ties, zero claims and the boundary E = sum(c), because most
/// rule discontinuities live there.
ClaimsProblem sample_wellformed(Rng& rng, std::size_t n, double claim_scale = 10.0);

/// A random permutation of 0..n-1.
std::vector<std::size_t> sample_permutation(Rng& rng, std::size_t n);

/// A weight pair drawn from a mix of unrelated pairs, pairs sharing a
/// direction off two indices and pairs sharing a direction off one index.
std::pair<WeightVector, WeightVector> sample_relation_pair(Rng& rng, std::size_t n);

}  // namespace claimslab
