// The relation D between problems and weights, the weight relations B (bad
// pairs) and B', the impossibility witness for bad pairs, and finite
// independent sets of weights.
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "claimslab/core.hpp"

namespace claimslab {

/// ((E, c), w) is in D when some claimant i can lower its claim to
/// c'_i < c_i so that (c'_i, c_{-i}) is parallel to w and E still covers it.
struct DMembership {
  bool member = false;
  std::optional<std::size_t> witness_index;
  std::optional<double> reduced_claim;
  std::optional<double> scale;
  // Number of indices that qualify; at most one for |N| >= 3.
  std::size_t candidate_count = 0;
};

DMembership d_member(const ClaimsProblem& p, const WeightVector& w);

struct BPrimeResult {
  bool related = false;
  std::optional<std::size_t> index;
};

/// Some single-coordinate deletion leaves u and v parallel. Equal weights are
/// reported related at index 0.
BPrimeResult is_b_prime(const WeightVector& u, const WeightVector& v);

struct BadPairResult {
  bool bad = false;
  std::optional<std::pair<std::size_t, std::size_t>> indices;
};

/// True iff (u, v) is (i, j)-bad for some ordered pair of distinct indices;
/// returns the lexicographically first. Throws InputError on u == v.
BadPairResult is_bad_pair(const WeightVector& u, const WeightVector& v);

/// Checks the (i, j)-badness inequalities for one ordered index pair.
bool is_ij_bad(const WeightVector& u, const WeightVector& v, std::size_t i, std::size_t j);

/// Symmetric closure of B together with B'; the relation independence avoids.
bool conflicts(const WeightVector& u, const WeightVector& v);

struct WitnessProblem {
  ClaimsProblem problem;
  std::pair<WeightVector, WeightVector> pair;
  std::pair<std::size_t, std::size_t> indices;
  AwardVector forced_award_u;  // what strategy-freedom for u forces
  AwardVector forced_award_v;  // what strategy-freedom for v forces
  std::pair<double, double> thresholds;  // (L_i, L_j)
};

/// The problem on which strategy-freedom for u and for v force different
/// awards. Requires (u, v) to be (i, j)-bad.
WitnessProblem impossibility_witness(const WeightVector& u, const WeightVector& v, std::size_t i,
                                     std::size_t j);

/// Searches for a problem that is D-related to both u and v by solving the
/// parallelism constraints of D directly. Tries distinct witness indices
/// (i, j) first, then a shared index.
std::optional<ClaimsProblem> common_d_witness(const WeightVector& u, const WeightVector& v);

/// Greedy scan keeping each candidate that conflicts with nothing kept so far.
std::vector<WeightVector> greedy_independent_set(std::span<const WeightVector> candidates);

/// Number of members w of S with w_{-i-j} parallel to the direction p.
std::size_t line_intersection_probe(std::span<const WeightVector> S, std::size_t i, std::size_t j,
                                    std::span<const double> p);

}  // namespace claimslab
