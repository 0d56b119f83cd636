// Domain types for claims problems, the rule contract and the shared
// cap-balancing solver used by every separable directional rule.
#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace claimslab {

/// Malformed input: bad vectors, incompatible rule/problem, violated preconditions.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numeric procedure could not satisfy its own postcondition.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Tolerances. Balance and contract tolerances scale with (1 + E).
inline constexpr double kBalanceTol = 1e-12;
inline constexpr double kContractTol = 1e-9;
inline constexpr double kParallelTol = 1e-9;
inline constexpr double kWeightSumTol = 1e-12;

/// An endowment and a nonnegative claims vector. Wellformedness (sum of
/// claims >= endowment) is a query, not a construction requirement.
class ClaimsProblem {
 public:
  ClaimsProblem(double endowment, std::vector<double> claims);

  double endowment() const { return endowment_; }
  const std::vector<double>& claims() const { return claims_; }
  double claim(std::size_t i) const { return claims_.at(i); }
  std::size_t size() const { return claims_.size(); }
  double total_claims() const;

  ClaimsProblem with_claim(std::size_t i, double value) const;
  ClaimsProblem scaled(double factor) const;

  bool operator==(const ClaimsProblem&) const = default;

 private:
  double endowment_;
  std::vector<double> claims_;
};

bool is_wellformed(const ClaimsProblem& p);

/// A strictly positive point of the unit simplex.
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> weights);

  static WeightVector uniform(std::size_t n);
  // Divides a positive vector by its sum.
  static WeightVector normalized(std::vector<double> raw);

  const std::vector<double>& values() const { return weights_; }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::size_t size() const { return weights_.size(); }
  bool is_uniform() const;

  bool operator==(const WeightVector&) const = default;

 private:
  std::vector<double> weights_;
};

struct AwardVector {
  std::vector<double> awards;
  // Balancing scalar, when the rule has one.
  std::optional<double> lambda;
};

struct ContractReport {
  bool passed = true;
  std::optional<int> violated_equation;  // 1 balance, 2 pass-through, 3 claims bound
  std::optional<std::size_t> offending_index;
  double discrepancy = 0.0;
};

double contract_tolerance(const ClaimsProblem& p);

/// Checks the three rule equations in the order (3), (1), (2) and reports the
/// first one violated. `tol` is absolute.
ContractReport check_rule_contract(const AwardVector& output, const ClaimsProblem& p, double tol);
ContractReport check_rule_contract(const AwardVector& output, const ClaimsProblem& p);

/// cap(i, lambda): nondecreasing and continuous in lambda, zero at zero.
using CapFunction = std::function<double(std::size_t, double)>;

struct CapSolution {
  double lambda = 0.0;
  AwardVector awards;
};

/// Finds lambda with sum_i min(c_i, cap(i, lambda)) = E by doubling a bracket
/// from 1 and bisecting. Requires sum of claims > E.
CapSolution solve_cap_lambda(const CapFunction& cap_at, const ClaimsProblem& p);

/// Exact water-filling with caps lambda * coefficient_i (breakpoints c_i / coef_i).
CapSolution water_fill(std::span<const double> coefficients, const ClaimsProblem& p);
CapSolution water_fill(const WeightVector& w, const ClaimsProblem& p);

struct ParallelTest {
  bool parallel = false;
  std::optional<double> scale;
};

/// x is parallel to y if some s >= 0 has |x_k - s y_k| <= rel_tol (1 + |x|_inf)
/// for every k. Empty vectors are parallel (scale 0).
ParallelTest is_parallel(std::span<const double> x, std::span<const double> y,
                         double rel_tol = kParallelTol);

// Small vector helpers shared across modules.
double sum(std::span<const double> v);
double max_abs_diff(std::span<const double> a, std::span<const double> b);
double max_abs(std::span<const double> v);
std::vector<double> without_index(std::span<const double> v, std::size_t i);
std::vector<double> without_indices(std::span<const double> v, std::size_t i, std::size_t j);

/// Shortest round-trip decimal rendering, used in reports and recheck stubs.
std::string format_number(double x);
std::string format_vector(std::span<const double> v);

}  // namespace claimslab
