#include "claimslab/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

namespace claimslab {

namespace {

void require_finite_nonneg(double x, const char* what) {
  if (!std::isfinite(x) || x < 0.0) {
    throw InputError(std::string(what) + " must be finite and nonnegative, got " + format_number(x));
  }
}

}  // namespace

ClaimsProblem::ClaimsProblem(double endowment, std::vector<double> claims)
    : endowment_(endowment), claims_(std::move(claims)) {
  require_finite_nonneg(endowment_, "endowment");
  if (claims_.size() < 2) {
    throw InputError("a claims problem needs at least 2 claimants");
  }
  for (double c : claims_) require_finite_nonneg(c, "claim");
}

double ClaimsProblem::total_claims() const { return sum(claims_); }

ClaimsProblem ClaimsProblem::with_claim(std::size_t i, double value) const {
  auto c = claims_;
  c.at(i) = value;
  return ClaimsProblem(endowment_, std::move(c));
}

ClaimsProblem ClaimsProblem::scaled(double factor) const {
  auto c = claims_;
  for (double& x : c) x *= factor;
  return ClaimsProblem(endowment_ * factor, std::move(c));
}

bool is_wellformed(const ClaimsProblem& p) { return p.total_claims() >= p.endowment(); }

WeightVector::WeightVector(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.size() < 2) throw InputError("a weight needs at least 2 components");
  for (double w : weights_) {
    if (!std::isfinite(w) || w <= 0.0) {
      throw InputError("weights must be strictly positive, got " + format_number(w));
    }
  }
  if (std::abs(sum(weights_) - 1.0) > kWeightSumTol) {
    throw InputError("weights must sum to 1, got " + format_number(sum(weights_)));
  }
}

WeightVector WeightVector::uniform(std::size_t n) {
  return WeightVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

WeightVector WeightVector::normalized(std::vector<double> raw) {
  const double total = sum(raw);
  if (!(total > 0.0)) throw InputError("cannot normalize a vector with nonpositive sum");
  for (double& x : raw) x /= total;
  return WeightVector(std::move(raw));
}

bool WeightVector::is_uniform() const {
  return std::all_of(weights_.begin(), weights_.end(),
                     [&](double w) { return w == weights_.front(); });
}

double contract_tolerance(const ClaimsProblem& p) { return kContractTol * (1.0 + p.endowment()); }

ContractReport check_rule_contract(const AwardVector& output, const ClaimsProblem& p, double tol) {
  const auto& z = output.awards;
  const auto& c = p.claims();
  if (z.size() != c.size()) {
    throw InputError("award vector has " + std::to_string(z.size()) + " entries, problem has " +
                     std::to_string(c.size()));
  }
  ContractReport report;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] > c[i] + tol) {
      report.passed = false;
      report.violated_equation = 3;
      report.offending_index = i;
      report.discrepancy = z[i] - c[i];
      return report;
    }
  }
  const double total = p.total_claims();
  if (total > p.endowment()) {
    const double gap = std::abs(sum(z) - p.endowment());
    if (gap > tol) {
      report.passed = false;
      report.violated_equation = 1;
      report.discrepancy = gap;
    }
    return report;
  }
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double gap = std::abs(z[i] - c[i]);
    if (gap > tol) {
      report.passed = false;
      report.violated_equation = 2;
      report.offending_index = i;
      report.discrepancy = gap;
      return report;
    }
  }
  return report;
}

ContractReport check_rule_contract(const AwardVector& output, const ClaimsProblem& p) {
  return check_rule_contract(output, p, contract_tolerance(p));
}

CapSolution solve_cap_lambda(const CapFunction& cap_at, const ClaimsProblem& p) {
  const auto& c = p.claims();
  const double E = p.endowment();
  if (!(p.total_claims() > E)) {
    throw InputError("solve_cap_lambda requires total claims to exceed the endowment");
  }
  auto filled = [&](double lambda) {
    double s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) s += std::min(c[i], cap_at(i, lambda));
    return s;
  };
  auto awards_at = [&](double lambda) {
    std::vector<double> z(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) z[i] = std::min(c[i], cap_at(i, lambda));
    return z;
  };
  if (E == 0.0) return {0.0, {std::vector<double>(c.size(), 0.0), 0.0}};

  const double tol = kBalanceTol * (1.0 + E);
  constexpr double kMaxBracket = 18446744073709551616.0;  // 2^64
  double lo = 0.0;
  double hi = 1.0;
  while (filled(hi) < E) {
    lo = hi;
    hi *= 2.0;
    if (hi > kMaxBracket) {
      throw SolverError("cap family is not bracketable: cap sum at lambda=2^64 is " +
                        format_number(filled(kMaxBracket)) + " < E=" + format_number(E));
    }
  }
  double best = hi;
  double best_gap = std::abs(filled(hi) - E);
  for (int iter = 0; iter < 200 && best_gap > tol; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double s = filled(mid);
    const double gap = std::abs(s - E);
    if (gap < best_gap) {
      best = mid;
      best_gap = gap;
    }
    if (s < E) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (!std::isfinite(best_gap)) throw SolverError("cap family produced a non-finite cap sum");
  return {best, {awards_at(best), best}};
}

CapSolution water_fill(std::span<const double> coefficients, const ClaimsProblem& p) {
  const auto& c = p.claims();
  const double E = p.endowment();
  if (coefficients.size() != c.size()) throw InputError("coefficient count differs from claimant count");
  if (!(p.total_claims() > E)) throw InputError("water_fill requires total claims to exceed the endowment");

  // Claimants with zero claim (or zero coefficient) never receive anything.
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] > 0.0 && coefficients[i] > 0.0) order.push_back(i);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return c[a] / coefficients[a] < c[b] / coefficients[b];
  });
  std::vector<double> tail_coef(order.size() + 1, 0.0);
  for (std::size_t k = order.size(); k-- > 0;) tail_coef[k] = tail_coef[k + 1] + coefficients[order[k]];

  double saturated = 0.0;
  // Rounding can leave the last breakpoint a hair below E; fall back to it.
  double lambda = order.empty() ? 0.0 : c[order.back()] / coefficients[order.back()];
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t i = order[k];
    const double breakpoint = c[i] / coefficients[i];
    if (saturated + breakpoint * tail_coef[k] >= E) {
      lambda = (E - saturated) / tail_coef[k];
      break;
    }
    saturated += c[i];
  }
  std::vector<double> z(c.size(), 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) z[i] = std::min(c[i], lambda * coefficients[i]);
  return {lambda, {std::move(z), lambda}};
}

CapSolution water_fill(const WeightVector& w, const ClaimsProblem& p) {
  return water_fill(std::span<const double>(w.values()), p);
}

ParallelTest is_parallel(std::span<const double> x, std::span<const double> y, double rel_tol) {
  if (x.size() != y.size()) throw InputError("parallelism test on vectors of different length");
  if (x.empty()) return {true, 0.0};
  double xy = 0.0;
  double yy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    xy += x[k] * y[k];
    yy += y[k] * y[k];
  }
  const double bound = rel_tol * (1.0 + max_abs(x));
  if (yy == 0.0) {
    // Degenerate: only the zero vector is parallel to zero.
    if (max_abs(x) <= bound) return {true, 0.0};
    return {false, std::nullopt};
  }
  const double s = std::max(0.0, xy / yy);
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (std::abs(x[k] - s * y[k]) > bound) return {false, std::nullopt};
  }
  return {true, s};
}

double sum(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0); }

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InputError("vector length mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::vector<double> without_index(std::span<const double> v, std::size_t i) {
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k != i) out.push_back(v[k]);
  }
  return out;
}

std::vector<double> without_indices(std::span<const double> v, std::size_t i, std::size_t j) {
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k != i && k != j) out.push_back(v[k]);
  }
  return out;
}

std::string format_number(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string format_vector(std::span<const double> v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += ',';
    out += format_number(v[k]);
  }
  return out;
}

}  // namespace claimslab
