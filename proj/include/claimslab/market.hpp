// Supplier-retailer model: linear-demand Cournot retailers whose orders are
// rationed by a rule when the supplier's capacity E falls short.
#pragma once

#include <string_view>
#include <vector>

#include "claimslab/core.hpp"
#include "claimslab/rules.hpp"

namespace claimslab {

class CournotMarket {
 public:
  /// Inverse demand P(Q) = intercept - slope * Q.
  CournotMarket(double intercept, double slope, std::vector<double> marginal_costs);

  double intercept() const { return intercept_; }
  double slope() const { return slope_; }
  const std::vector<double>& costs() const { return costs_; }
  std::size_t size() const { return costs_.size(); }

 private:
  double intercept_;
  double slope_;
  std::vector<double> costs_;
};

/// Parses "a=12,b=1,costs=0,0,0".
CournotMarket parse_market(std::string_view text);
std::string to_string(const CournotMarket& m);

/// pi_i(q) = q_i * max(0, P(sum q) - cost_i).
std::vector<double> payoff(const CournotMarket& m, std::span<const double> q);

/// Closed form with exit of high-cost retailers, cross-checked against
/// Gauss-Seidel best responses.
std::vector<double> nash_equilibrium(const CournotMarket& m);

/// Sequential best-response iteration from zero output.
std::vector<double> best_response_equilibrium(const CournotMarket& m, std::size_t max_rounds = 10000);

/// Payoffs of the composed game: orders are first rationed by the rule.
std::vector<double> composed_payoff(const CournotMarket& m, const RuleSpec& rule, double E,
                                    std::span<const double> orders);

struct DeviationReport {
  std::size_t retailer = 0;
  double equilibrium_order = 0.0;
  double best_order = 0.0;
  double equilibrium_payoff = 0.0;
  double best_payoff = 0.0;
  double gain = 0.0;
  AwardVector received;
};

/// Maximizes retailer i's composed payoff over its own order in [0, cap] by a
/// 512-point grid followed by golden-section refinement around the best point.
DeviationReport best_deviation(const CournotMarket& m, const RuleSpec& rule, double E, std::span<const double> base,
                               std::size_t retailer, double search_cap);

struct PreservationReport {
  std::vector<double> equilibrium;
  std::vector<DeviationReport> deviations;
  double cert_tol = 0.0;
  bool preserved = true;
};

/// Deviation search for every retailer at the Nash equilibrium. Requires E at
/// least the equilibrium total. search_cap <= 0 means 10 E.
PreservationReport equilibrium_preservation_report(const CournotMarket& m, const RuleSpec& rule, double E,
                                                   double search_cap = 0.0);

}  // namespace claimslab
