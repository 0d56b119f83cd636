#include "claimslab/badpairs.hpp"

#include <algorithm>
#include <cmath>

namespace claimslab {

namespace {

// a < b by more than a relative 1e-9 margin; exact ties stay ties after rounding.
bool clearly_less(double a, double b) {
  return a < b - kParallelTol * std::max(std::abs(a), std::abs(b));
}

void require_same_size(const WeightVector& u, const WeightVector& v) {
  if (u.size() != v.size()) throw InputError("weights have different claimant counts");
}

}  // namespace

DMembership d_member(const ClaimsProblem& p, const WeightVector& w) {
  if (p.size() != w.size()) throw InputError("problem and weight have different claimant counts");
  DMembership result;
  if (!is_wellformed(p)) return result;

  const auto& c = p.claims();
  const double E = p.endowment();
  const double tol = kParallelTol * (1.0 + E);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto rest_c = without_index(c, i);
    const auto rest_w = without_index(w.values(), i);
    const auto fit = is_parallel(rest_c, rest_w);
    if (!fit.parallel) continue;
    const double lambda = *fit.scale;
    // A (near) zero c_{-i} is parallel to every weight; only a positive scale counts.
    if (max_abs(rest_c) <= tol) continue;
    const double reduced = lambda * w[i];
    if (reduced < c[i] - tol && E >= sum(rest_c) + reduced - tol) {
      if (result.candidate_count == 0) {
        result.member = true;
        result.witness_index = i;
        result.reduced_claim = reduced;
        result.scale = lambda;
      }
      ++result.candidate_count;
    }
  }
  return result;
}

BPrimeResult is_b_prime(const WeightVector& u, const WeightVector& v) {
  require_same_size(u, v);
  if (u == v) return {true, 0};
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (is_parallel(without_index(u.values(), i), without_index(v.values(), i)).parallel) {
      return {true, i};
    }
  }
  return {};
}

bool is_ij_bad(const WeightVector& u, const WeightVector& v, std::size_t i, std::size_t j) {
  require_same_size(u, v);
  if (i == j || i >= u.size() || j >= u.size()) return false;
  const auto u_rest = without_indices(u.values(), i, j);
  const auto v_rest = without_indices(v.values(), i, j);
  if (!is_parallel(u_rest, v_rest).parallel) return false;
  const double su = sum(u_rest);
  const double sv = sum(v_rest);
  return clearly_less(u[i] * sv, v[i] * su) && clearly_less(v[j] * su, u[j] * sv);
}

BadPairResult is_bad_pair(const WeightVector& u, const WeightVector& v) {
  require_same_size(u, v);
  if (u == v) throw InputError("bad-pair test needs distinct weights");
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < u.size(); ++j) {
      if (is_ij_bad(u, v, i, j)) return {true, std::make_pair(i, j)};
    }
  }
  return {};
}

bool conflicts(const WeightVector& u, const WeightVector& v) {
  if (u == v) return true;
  return is_bad_pair(u, v).bad || is_bad_pair(v, u).bad || is_b_prime(u, v).related;
}

WitnessProblem impossibility_witness(const WeightVector& u, const WeightVector& v, std::size_t i,
                                     std::size_t j) {
  if (!is_ij_bad(u, v, i, j)) {
    throw InputError("(" + std::to_string(i) + "," + std::to_string(j) +
                     ") is not a bad index pair for these weights");
  }
  const std::size_t n = u.size();
  // Scale 1: the untouched claimants claim exactly u on N \ {i, j}.
  std::vector<double> c(n);
  for (std::size_t k = 0; k < n; ++k) c[k] = u[k];
  const auto u_rest = without_indices(u.values(), i, j);
  const auto v_rest = without_indices(v.values(), i, j);
  const double rest_total = sum(u_rest);
  const double u_scale = rest_total / sum(u_rest);
  const double v_scale = rest_total / sum(v_rest);
  c[i] = v[i] * v_scale;
  c[j] = u[j] * u_scale;

  const double total = sum(c);
  const double l_i = (total - c[i]) + u[i] * u_scale;
  const double l_j = (total - c[j]) + v[j] * v_scale;
  const double E = std::max(l_i, l_j);
  if (!(E < total)) throw SolverError("witness construction produced a problem with E >= sum(c)");

  std::vector<double> forced_u = c;
  forced_u[i] = E - (total - c[i]);
  std::vector<double> forced_v = c;
  forced_v[j] = E - (total - c[j]);
  if (forced_u == forced_v) throw SolverError("witness construction produced agreeing forced awards");

  return WitnessProblem{ClaimsProblem(E, std::move(c)),
                        {u, v},
                        {i, j},
                        AwardVector{std::move(forced_u), std::nullopt},
                        AwardVector{std::move(forced_v), std::nullopt},
                        {l_i, l_j}};
}

std::optional<ClaimsProblem> common_d_witness(const WeightVector& u, const WeightVector& v) {
  require_same_size(u, v);
  if (u == v) throw InputError("common D-witness search needs distinct weights");
  const std::size_t n = u.size();
  auto accept = [&](double E, std::vector<double> c) -> std::optional<ClaimsProblem> {
    ClaimsProblem p(E, std::move(c));
    if (d_member(p, u).member && d_member(p, v).member) return p;
    return std::nullopt;
  };

  // u witnesses at i, v witnesses at j: c_{-i} ~ u_{-i} and c_{-j} ~ v_{-j}.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || n < 3) continue;
      const auto fit = is_parallel(without_indices(u.values(), i, j), without_indices(v.values(), i, j));
      if (!fit.parallel || *fit.scale <= 0.0) continue;
      const double s = *fit.scale;  // c = s * v on N \ {i, j}
      std::vector<double> c(u.values());
      c[i] = s * v[i];
      const double total = sum(c);
      const double E = std::max(total - c[i] + u[i], total - c[j] + s * v[j]);
      if (E > total) continue;
      if (auto p = accept(E, std::move(c))) return p;
    }
  }
  // Both witness at the same index i: c_{-i} parallel to u_{-i} and v_{-i}.
  for (std::size_t i = 0; i < n; ++i) {
    const auto fit = is_parallel(without_index(u.values(), i), without_index(v.values(), i));
    if (!fit.parallel) continue;
    const double reduced = std::max(u[i], *fit.scale * v[i]);
    std::vector<double> c(u.values());
    c[i] = 2.0 * reduced;
    const double E = sum(c) - c[i] + reduced;
    if (auto p = accept(E, std::move(c))) return p;
  }
  return std::nullopt;
}

std::vector<WeightVector> greedy_independent_set(std::span<const WeightVector> candidates) {
  std::vector<WeightVector> kept;
  for (const auto& w : candidates) {
    const bool clash = std::any_of(kept.begin(), kept.end(),
                                   [&](const WeightVector& k) { return conflicts(k, w); });
    if (!clash) kept.push_back(w);
  }
  return kept;
}

std::size_t line_intersection_probe(std::span<const WeightVector> S, std::size_t i, std::size_t j,
                                    std::span<const double> p) {
  std::size_t count = 0;
  for (const auto& w : S) {
    if (w.size() < 3 || i == j || i >= w.size() || j >= w.size()) {
      throw InputError("line probe needs |N| >= 3 and distinct in-range indices");
    }
    if (p.size() != w.size() - 2) throw InputError("line direction must live on N \\ {i, j}");
    if (is_parallel(without_indices(w.values(), i, j), p).parallel) ++count;
  }
  return count;
}

}  // namespace claimslab
