#include "claimslab/sampling.hpp"

#include <cmath>
#include <numeric>

namespace claimslab {

double Rng::log_uniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

WeightVector sample_weight(Rng& rng, std::size_t n, double floor) {
  std::vector<double> raw(n);
  for (double& x : raw) x = -std::log(1.0 - rng.uniform());
  const double total = sum(raw);
  for (double& x : raw) x = std::max(x / total, floor);
  return WeightVector::normalized(std::move(raw));
}

ClaimsProblem sample_wellformed(Rng& rng, std::size_t n, double claim_scale) {
  std::vector<double> c(n);
  for (double& x : c) x = rng.uniform(0.0, claim_scale);
  if (rng.chance(0.1)) c[rng.index(n)] = 0.0;
  if (rng.chance(0.15)) {
    const std::size_t a = rng.index(n);
    const std::size_t b = rng.index(n);
    c[b] = c[a];
  }
  double total = sum(c);
  if (total == 0.0) {
    c[0] = claim_scale * 0.5;
    total = c[0];
  }
  const double E = rng.chance(0.05) ? total : rng.uniform(0.0, total);
  return ClaimsProblem(E, std::move(c));
}

std::vector<std::size_t> sample_permutation(Rng& rng, std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t k = n; k > 1; --k) std::swap(perm[k - 1], perm[rng.index(k)]);
  return perm;
}

std::pair<WeightVector, WeightVector> sample_relation_pair(Rng& rng, std::size_t n) {
  const std::size_t mode = rng.index(3);
  if (mode == 0 || n < 3) return {sample_weight(rng, n), sample_weight(rng, n)};
  // Shared direction off {i, j} (mode 1) or off {i} (mode 2).
  const std::size_t i = rng.index(n);
  const std::size_t j = mode == 1 ? (i + 1 + rng.index(n - 1)) % n : i;
  std::vector<double> direction(n);
  for (double& x : direction) x = rng.uniform(0.05, 1.0);
  auto build = [&]() {
    std::vector<double> raw(n);
    const double scale = rng.uniform(0.2, 2.0);
    for (std::size_t k = 0; k < n; ++k) {
      raw[k] = (k == i || k == j) ? rng.uniform(0.05, 1.0) : scale * direction[k];
    }
    return WeightVector::normalized(std::move(raw));
  };
  auto u = build();
  auto v = build();
  return {std::move(u), std::move(v)};
}

}  // namespace claimslab
