#include "claimslab/market.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace claimslab {

namespace {

constexpr double kNashAgreeTol = 1e-10;
constexpr double kGoldenRatio = 0.6180339887498949;

double parse_real(std::string_view token, std::string_view what) {
  try {
    const auto v = parse_vector(token);
    if (v.size() != 1) throw InputError("");
    return v[0];
  } catch (const InputError&) {
    throw InputError("market field '" + std::string(what) + "' is not a number");
  }
}

}  // namespace

CournotMarket::CournotMarket(double intercept, double slope, std::vector<double> marginal_costs)
    : intercept_(intercept), slope_(slope), costs_(std::move(marginal_costs)) {
  if (costs_.size() < 2) throw InputError("a market needs at least 2 retailers");
  if (!(slope_ > 0.0) || !std::isfinite(slope_)) throw InputError("demand slope must be positive");
  for (double c : costs_) {
    if (!(c >= 0.0) || !std::isfinite(c)) throw InputError("marginal costs must be nonnegative");
  }
  if (!(intercept_ > *std::max_element(costs_.begin(), costs_.end())) || !std::isfinite(intercept_)) {
    throw InputError("demand intercept must exceed every marginal cost");
  }
}

CournotMarket parse_market(std::string_view text) {
  std::optional<double> a, b;
  std::vector<double> costs;
  std::string_view key;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    auto token = text.substr(start, end - start);
    start = end + 1;
    if (const auto eq = token.find('='); eq != std::string_view::npos) {
      key = token.substr(0, eq);
      token = token.substr(eq + 1);
    }
    if (key == "a") {
      a = parse_real(token, key);
    } else if (key == "b") {
      b = parse_real(token, key);
    } else if (key == "costs") {
      costs.push_back(parse_real(token, key));
    } else {
      throw InputError("unknown market field '" + std::string(key) + "'");
    }
  }
  if (!a || !b || costs.empty()) throw InputError("market needs a=..., b=... and costs=...");
  return CournotMarket(*a, *b, std::move(costs));
}

std::string to_string(const CournotMarket& m) {
  return "a=" + format_number(m.intercept()) + ",b=" + format_number(m.slope()) + ",costs=" +
         format_vector(m.costs());
}

std::vector<double> payoff(const CournotMarket& m, std::span<const double> q) {
  if (q.size() != m.size()) throw InputError("quantity vector does not match the number of retailers");
  const double price = m.intercept() - m.slope() * sum(q);
  std::vector<double> out(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] < 0.0) throw InputError("quantities must be nonnegative");
    out[i] = q[i] * std::max(0.0, price - m.costs()[i]);
  }
  return out;
}

std::vector<double> best_response_equilibrium(const CournotMarket& m, std::size_t max_rounds) {
  std::vector<double> q(m.size(), 0.0);
  double total = 0.0;
  for (std::size_t round = 0; round < max_rounds; ++round) {
    double change = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      const double rest = total - q[i];
      const double br = std::max(0.0, (m.intercept() - m.costs()[i] - m.slope() * rest) / (2.0 * m.slope()));
      change = std::max(change, std::abs(br - q[i]));
      total = rest + br;
      q[i] = br;
    }
    if (change <= 1e-14 * (1.0 + total)) return q;
  }
  throw SolverError("best-response iteration did not converge in " + std::to_string(max_rounds) + " rounds");
}

std::vector<double> nash_equilibrium(const CournotMarket& m) {
  const auto& costs = m.costs();
  std::vector<std::size_t> order(costs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return costs[x] < costs[y]; });

  // Admit retailers by increasing cost while they stay profitable at the
  // price of the enlarged active set.
  double cost_sum = 0.0;
  std::size_t active = 0;
  double price = m.intercept();
  for (std::size_t k = 0; k < order.size(); ++k) {
    const double candidate = (m.intercept() + cost_sum + costs[order[k]]) / double(k + 2);
    if (costs[order[k]] >= candidate) break;
    cost_sum += costs[order[k]];
    active = k + 1;
    price = candidate;
  }
  std::vector<double> q(costs.size(), 0.0);
  for (std::size_t k = 0; k < active; ++k) q[order[k]] = (price - costs[order[k]]) / m.slope();

  const auto oracle = best_response_equilibrium(m);
  if (max_abs_diff(q, oracle) > kNashAgreeTol * (1.0 + max_abs(q))) {
    throw SolverError("closed-form equilibrium disagrees with best-response iteration");
  }
  return q;
}

std::vector<double> composed_payoff(const CournotMarket& m, const RuleSpec& rule, double E,
                                    std::span<const double> orders) {
  const ClaimsProblem p(E, std::vector<double>(orders.begin(), orders.end()));
  return payoff(m, allocate(rule, p).awards);
}

DeviationReport best_deviation(const CournotMarket& m, const RuleSpec& rule, double E, std::span<const double> base,
                               std::size_t retailer, double search_cap) {
  if (base.size() != m.size() || retailer >= m.size()) throw InputError("deviation base does not match the market");
  if (!(search_cap > 0.0)) throw InputError("search cap must be positive");
  std::vector<double> orders(base.begin(), base.end());
  auto objective = [&](double t) {
    orders[retailer] = t;
    return composed_payoff(m, rule, E, orders)[retailer];
  };

  DeviationReport r;
  r.retailer = retailer;
  r.equilibrium_order = base[retailer];
  r.equilibrium_payoff = objective(base[retailer]);
  r.best_order = base[retailer];
  r.best_payoff = r.equilibrium_payoff;

  constexpr std::size_t kGrid = 512;
  const double step = search_cap / double(kGrid - 1);
  std::size_t best_k = 0;
  double best_grid = -1.0;
  for (std::size_t k = 0; k < kGrid; ++k) {
    const double v = objective(step * double(k));
    if (v > best_grid) {
      best_grid = v;
      best_k = k;
    }
  }
  if (best_grid > r.best_payoff) {
    r.best_payoff = best_grid;
    r.best_order = step * double(best_k);
  }

  double lo = step * double(best_k == 0 ? 0 : best_k - 1);
  double hi = std::min(search_cap, step * double(best_k + 1));
  double x1 = hi - kGoldenRatio * (hi - lo);
  double x2 = lo + kGoldenRatio * (hi - lo);
  double f1 = objective(x1);
  double f2 = objective(x2);
  for (int it = 0; it < 100 && hi - lo > 1e-12 * (1.0 + search_cap); ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kGoldenRatio * (hi - lo);
      f2 = objective(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kGoldenRatio * (hi - lo);
      f1 = objective(x1);
    }
  }
  for (auto [x, f] : {std::pair{x1, f1}, std::pair{x2, f2}}) {
    if (f > r.best_payoff) {
      r.best_payoff = f;
      r.best_order = x;
    }
  }

  r.gain = std::max(0.0, r.best_payoff - r.equilibrium_payoff);
  orders[retailer] = r.best_order;
  r.received = allocate(rule, ClaimsProblem(E, orders));
  return r;
}

PreservationReport equilibrium_preservation_report(const CournotMarket& m, const RuleSpec& rule, double E,
                                                   double search_cap) {
  PreservationReport out;
  out.equilibrium = nash_equilibrium(m);
  const double total = sum(out.equilibrium);
  if (E < total * (1.0 - 1e-12)) {
    throw InputError("capacity E = " + format_number(E) + " is below the equilibrium total " + format_number(total) +
                     "; the model assumes E covers the Nash equilibrium orders");
  }
  if (search_cap <= 0.0) search_cap = 10.0 * E;
  const auto eq_payoff = payoff(m, out.equilibrium);
  out.cert_tol = 1e-6 * std::max(1.0, *std::max_element(eq_payoff.begin(), eq_payoff.end()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    out.deviations.push_back(best_deviation(m, rule, E, out.equilibrium, i, search_cap));
    if (out.deviations.back().gain > out.cert_tol) out.preserved = false;
  }
  return out;
}

}  // namespace claimslab
