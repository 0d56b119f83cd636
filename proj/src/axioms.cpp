#include "claimslab/axioms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "claimslab/badpairs.hpp"
#include "claimslab/sampling.hpp"

namespace claimslab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::array<double, 3> kClaimScales{1.0, 10.0, 100.0};

double scaled(double tol, double E) { return tol * (1.0 + E); }

std::vector<double> others(std::span<const double> v, std::size_t i) { return without_index(v, i); }

AxiomReport make_report(std::string axiom, const RuleSpec& rule, std::uint64_t seed, double tol) {
  AxiomReport r;
  r.axiom = std::move(axiom);
  r.rule = rule;
  r.seed = seed;
  r.tolerance = tol;
  return r;
}

void record(AxiomReport& r, Witness w) {
  ++r.violations;
  r.verdict = Verdict::fail;
  if (!r.witness) r.witness = std::move(w);
}

// Random wellformed problems, cycling through claim scales.
std::vector<ClaimsProblem> sample_problems(Rng& rng, const SampleConfig& s) {
  std::vector<ClaimsProblem> out(s.pinned);
  out.reserve(s.pinned.size() + s.count);
  for (std::size_t k = 0; k < s.count; ++k) {
    out.push_back(sample_wellformed(rng, s.claimants, kClaimScales[k % kClaimScales.size()]));
  }
  return out;
}

// Weights a rule singles out: uniform, its own weight, its independent set.
std::vector<WeightVector> salient_weights(const RuleSpec& rule, std::size_t n) {
  std::vector<WeightVector> out{WeightVector::uniform(n)};
  auto add = [&](const WeightVector& w) {
    if (w.size() == n && std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
  };
  if (auto own = rule.own_weight()) add(own->resolve(n));
  for (const auto& w : rule.independent_set) add(w);
  if (rule.fallback) {
    if (auto own = rule.fallback->own_weight()) add(own->resolve(n));
  }
  return out;
}

bool needs_joint_permutation(const RuleSpec& rule) {
  if (auto own = rule.own_weight(); own && !own->is_uniform() && !own->explicit_weight->is_uniform()) return true;
  if (std::holds_alternative<TableCaps>(rule.caps) && rule.kind == RuleKind::separableDirectional) return true;
  if (!rule.independent_set.empty()) return true;
  return rule.fallback && needs_joint_permutation(*rule.fallback);
}

ClaimsProblem permute_problem(const ClaimsProblem& p, std::span<const std::size_t> perm) {
  std::vector<double> c(p.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = p.claim(perm[k]);
  return ClaimsProblem(p.endowment(), std::move(c));
}

// Largest 2^-k (k < steps) not exceeding `limit`; 0 when none.
double schedule_delta(double limit, std::size_t steps) {
  double delta = 1.0;
  for (std::size_t k = 0; k < steps; ++k, delta *= 0.5) {
    if (delta <= limit) return delta;
  }
  return 0.0;
}

std::string params_suffix(const std::vector<double>& eps, const std::vector<double>& deltas) {
  std::string out;
  for (std::size_t k = 0; k < eps.size(); ++k) {
    if (k) out += ", ";
    out += "eps=" + format_number(eps[k]) + " -> delta=" + format_number(deltas[k]);
  }
  return out;
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inapplicable: return "inapplicable";
  }
  return "unknown";
}

std::string_view to_string(ResponsiveClass c) {
  switch (c) {
    case ResponsiveClass::individuallyResponsive: return "individuallyResponsive";
    case ResponsiveClass::individuallyUnresponsive: return "individuallyUnresponsive";
    case ResponsiveClass::undetermined: return "undetermined";
  }
  return "unknown";
}

std::string allocate_command(const RuleSpec& rule, const ClaimsProblem& p) {
  return "claimslab allocate --rule '" + to_string(rule) + "' --endowment " + format_number(p.endowment()) +
         " --claims " + format_vector(p.claims());
}

// ---------------------------------------------------------------------------
// Standard axioms

AxiomReport check_homogeneity(const RuleSpec& rule, const SampleConfig& s) {
  validate(rule, s.claimants);
  auto report = make_report("homogeneity", rule, s.seed, s.tol);
  Rng rng(s.seed);
  for (const auto& p : sample_problems(rng, s)) {
    const auto z = allocate(rule, p).awards;
    for (double lambda : s.scales) {
      const auto q = p.scaled(lambda);
      const auto zq = allocate(rule, q).awards;
      std::vector<double> expected(z);
      for (double& x : expected) x *= lambda;
      ++report.samples_tested;
      const double disc = max_abs_diff(zq, expected);
      if (disc > s.tol * lambda * (1.0 + p.endowment())) {
        record(report, Witness{p, q, {}, {{"lambda", lambda}}, zq, expected, disc, allocate_command(rule, q)});
      }
    }
  }
  return report;
}

AxiomReport check_claims_monotonicity(const RuleSpec& rule, const SampleConfig& s) {
  validate(rule, s.claimants);
  auto report = make_report("claims-monotonicity", rule, s.seed, s.tol);
  auto probe = [&](const ClaimsProblem& p, std::size_t i, double raised) {
    const auto q = p.with_claim(i, raised);
    const double before = allocate(rule, p).awards[i];
    const double after = allocate(rule, q).awards[i];
    ++report.samples_tested;
    if (after < before - scaled(s.tol, p.endowment())) {
      record(report, Witness{p, q, {}, {{"i", double(i)}, {"raised", raised}}, {after}, {before}, before - after,
                             allocate_command(rule, q)});
    }
  };
  for (const auto& r : s.pinned_raises) probe(r.problem, r.index, r.raised);
  Rng rng(s.seed);
  for (const auto& p : sample_problems(rng, s)) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double base = 1.0 + p.claim(i);
      probe(p, i, p.claim(i) + 0.1 * base);
      probe(p, i, p.claim(i) + base);
      probe(p, i, p.claim(i) + rng.log_uniform(1e-4, 10.0) * base);
    }
  }
  return report;
}

AxiomReport check_contract(const RuleSpec& rule, const SampleConfig& s) {
  validate(rule, s.claimants);
  auto report = make_report("contract", rule, s.seed, s.tol);
  Rng rng(s.seed);
  for (const auto& p : sample_problems(rng, s)) {
    const auto z = allocate(rule, p);
    const auto c = check_rule_contract(z, p, scaled(s.tol, p.endowment()));
    ++report.samples_tested;
    if (!c.passed) {
      record(report, Witness{p,
                             std::nullopt,
                             {},
                             {{"equation", double(*c.violated_equation)}, {"i", double(c.offending_index.value_or(0))}},
                             z.awards,
                             p.claims(),
                             c.discrepancy,
                             allocate_command(rule, p)});
    }
  }
  return report;
}

AxiomReport check_anonymity(const RuleSpec& rule, const SampleConfig& s) {
  validate(rule, s.claimants);
  auto report = make_report("anonymity", rule, s.seed, s.tol);
  const bool joint = needs_joint_permutation(rule);
  if (joint) report.note = "joint permutation of rule weights and claims";
  Rng rng(s.seed);
  for (const auto& p : sample_problems(rng, s)) {
    const auto perm = sample_permutation(rng, p.size());
    const auto q = permute_problem(p, perm);
    const RuleSpec relabelled = joint ? rule.permuted(perm) : rule;
    const auto z = allocate(rule, p).awards;
    const auto zq = allocate(relabelled, q).awards;
    std::vector<double> expected(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) expected[k] = z[perm[k]];
    ++report.samples_tested;
    const double disc = max_abs_diff(zq, expected);
    if (disc > scaled(s.tol, p.endowment())) {
      record(report, Witness{p, q, perm, {{"joint", joint ? 1.0 : 0.0}}, zq, expected, disc,
                             allocate_command(relabelled, q)});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Strategy-freedom

ClaimsProblem sf_problem(const WeightVector& w, const SFPoint& pt) {
  std::vector<double> c(w.values());
  for (double& x : c) x *= pt.lambda;
  c.at(pt.deviator) = pt.claim;
  return ClaimsProblem(pt.endowment, std::move(c));
}

AxiomReport check_strategy_free(const RuleSpec& rule, const WeightVector& w, const SFGrid& grid) {
  const std::size_t n = w.size();
  validate(rule, n);
  auto report = make_report("strategy-freedom", rule, grid.seed, grid.tol);
  report.weight = w;

  auto probe = [&](const SFPoint& pt) {
    const auto p = sf_problem(w, pt);
    const auto z = allocate(rule, p).awards;
    auto expected = others(w.values(), pt.deviator);
    for (double& x : expected) x *= pt.lambda;
    const auto observed = others(z, pt.deviator);
    ++report.samples_tested;
    const double disc = max_abs_diff(observed, expected);
    if (disc > scaled(grid.tol, pt.endowment)) {
      record(report, Witness{p,
                             std::nullopt,
                             {},
                             {{"i", double(pt.deviator)}, {"lambda", pt.lambda}, {"E", pt.endowment}, {"c_i", pt.claim}},
                             observed,
                             expected,
                             disc,
                             allocate_command(rule, p)});
    }
  };
  auto lower_claim = [&](std::size_t i, double lambda, double E) { return E - lambda * (1.0 - w[i]); };

  for (const auto& pt : grid.pinned) probe(pt);
  for (double lambda : grid.lambdas) {
    for (double m : grid.endowment_multiples) {
      const double E = lambda * m;
      for (std::size_t i = 0; i < n; ++i) {
        const double lo = lower_claim(i, lambda, E);
        for (double off : grid.deviation_offsets) probe({i, lambda, E, lo + off * E});
      }
    }
  }
  Rng rng(grid.seed);
  for (std::size_t k = 0; k < grid.random_probes; ++k) {
    const double lambda = rng.log_uniform(0.1, 10.0);
    const double E = rng.chance(0.1) ? lambda : lambda * rng.uniform(1.0, 4.0);
    const std::size_t i = rng.index(n);
    const double lo = lower_claim(i, lambda, E);
    const double claim = rng.chance(0.1) ? lo : lo + E * rng.log_uniform(1e-6, 9.0);
    probe({i, lambda, E, claim});
  }
  return report;
}

AxiomReport check_continuous_strategy_free(const RuleSpec& rule, const WeightVector& w, const CsfConfig& cfg) {
  const std::size_t n = w.size();
  validate(rule, n);
  auto report = make_report("continuous-strategy-freedom", rule, cfg.seed, kContractTol);
  report.weight = w;

  struct Probe {
    double distance;
    double error;
    Witness witness;
  };
  std::vector<Probe> probes;
  probes.reserve(cfg.probes);
  Rng rng(cfg.seed);
  for (std::size_t k = 0; k < cfg.probes; ++k) {
    const double lambda0 = rng.log_uniform(0.1, 10.0);
    const std::size_t i = rng.index(n);
    const double h = rng.chance(0.03) ? 0.0 : std::exp2(-rng.uniform(0.0, 30.0));
    auto rest_w = others(w.values(), i);
    std::vector<double> rest(rest_w.size());
    const std::size_t spike = rng.index(rest.size());
    for (std::size_t m = 0; m < rest.size(); ++m) {
      const double dir = m == spike ? (rng.chance(0.5) ? 1.0 : -1.0) : rng.uniform(-1.0, 1.0);
      rest[m] = std::max(0.0, lambda0 * rest_w[m] + h * dir);
    }
    // lambda is the least-squares fit of c_{-i} to w_{-i}.
    double num = 0.0;
    double den = 0.0;
    for (std::size_t m = 0; m < rest.size(); ++m) {
      num += rest[m] * rest_w[m];
      den += rest_w[m] * rest_w[m];
    }
    const double lambda = num / den;
    if (!(lambda > 0.0)) continue;
    double distance = 0.0;
    for (std::size_t m = 0; m < rest.size(); ++m) distance = std::max(distance, std::abs(lambda * rest_w[m] - rest[m]));

    const double E = rng.chance(0.1) ? lambda : lambda * rng.uniform(1.0, 4.0);
    const double lo = std::max(0.0, E - sum(rest));
    const double claim = rng.chance(0.1) ? lo : lo + E * rng.log_uniform(1e-6, 9.0);
    std::vector<double> c(n);
    for (std::size_t m = 0, r = 0; m < n; ++m) c[m] = m == i ? claim : rest[r++];
    ClaimsProblem p(E, std::move(c));
    if (!is_wellformed(p)) continue;

    const auto observed = others(allocate(rule, p).awards, i);
    const double error = max_abs_diff(observed, rest);
    probes.push_back({distance, error,
                      Witness{p, std::nullopt, {}, {{"i", double(i)}, {"lambda", lambda}, {"delta", distance}},
                              observed, rest, error, allocate_command(rule, p)}});
  }
  report.samples_tested = probes.size();

  std::vector<double> deltas;
  for (double eps : cfg.epsilons) {
    const Probe* nearest = nullptr;
    for (const auto& pr : probes) {
      if (pr.error >= eps && (!nearest || pr.distance < nearest->distance)) nearest = &pr;
    }
    const double delta = schedule_delta(nearest ? nearest->distance : kInf, cfg.delta_steps);
    deltas.push_back(delta);
    if (delta == 0.0) {
      Witness w = nearest->witness;
      w.params["epsilon"] = eps;
      record(report, std::move(w));
    }
  }
  report.note = params_suffix(cfg.epsilons, deltas);
  return report;
}

ContinuityEstimate estimate_continuity_modulus(const RuleSpec& rule, double E, std::size_t n,
                                               const CsfConfig& cfg) {
  if (!(E > 0.0)) throw InputError("continuity estimate needs E > 0");
  validate(rule, n);
  const auto weights = salient_weights(rule, n);
  Rng rng(cfg.seed);

  auto anchor = [&]() {
    std::vector<double> c(n);
    switch (rng.index(4)) {
      case 0: {  // tie
        for (double& x : c) x = rng.uniform(0.0, 2.0 * E);
        const std::size_t a = rng.index(n);
        const std::size_t b = (a + 1 + rng.index(n - 1)) % n;
        c[b] = c[a];
        break;
      }
      case 1: {  // threshold
        for (double& x : c) x = rng.uniform(0.0, 2.0 * E);
        const double levels[] = {E / double(n), E / 2.0, E};
        c[rng.index(n)] = levels[rng.index(3)];
        break;
      }
      case 2: {  // inside the D-region of a salient weight
        const auto& w = weights[rng.index(weights.size())];
        const double lambda = E * rng.uniform(0.2, 1.0);
        const std::size_t i = rng.index(n);
        for (std::size_t k = 0; k < n; ++k) c[k] = lambda * w[k];
        c[i] = E - lambda * (1.0 - w[i]) + E * rng.uniform(0.0, 2.0);
        break;
      }
      default:
        for (double& x : c) x = rng.uniform(0.0, 2.0 * E);
    }
    return c;
  };

  struct Pair {
    double distance;
    double change;
    Witness witness;
  };
  std::vector<Pair> pairs;
  double max_ratio = 0.0;
  for (std::size_t k = 0; k < cfg.probes; ++k) {
    const auto base = anchor();
    const double h = std::exp2(-rng.uniform(0.0, 30.0));
    std::vector<double> dir(n);
    for (double& x : dir) x = rng.uniform(-1.0, 1.0);
    dir[rng.index(n)] = rng.chance(0.5) ? 1.0 : -1.0;
    const bool one_sided = rng.chance(0.5);
    std::vector<double> c(base), d(base);
    for (std::size_t m = 0; m < n; ++m) {
      if (one_sided) {
        d[m] = std::max(0.0, base[m] + h * dir[m]);
      } else {
        c[m] = std::max(0.0, base[m] - 0.5 * h * dir[m]);
        d[m] = std::max(0.0, base[m] + 0.5 * h * dir[m]);
      }
    }
    ClaimsProblem pc(E, c), pd(E, d);
    if (!is_wellformed(pc) || !is_wellformed(pd)) continue;
    const double distance = max_abs_diff(c, d);
    if (!(distance > 0.0)) continue;
    const auto zc = allocate(rule, pc).awards;
    const auto zd = allocate(rule, pd).awards;
    const double change = max_abs_diff(zc, zd);
    max_ratio = std::max(max_ratio, change / distance);
    pairs.push_back({distance, change,
                     Witness{pc, pd, {}, {{"distance", distance}}, zd, zc, change, allocate_command(rule, pd)}});
  }

  ContinuityEstimate est;
  est.epsilon_grid = cfg.epsilons;
  est.max_observed_ratio = max_ratio;
  est.samples_tested = pairs.size();
  for (double eps : cfg.epsilons) {
    const Pair* nearest = nullptr;
    for (const auto& pr : pairs) {
      if (pr.change >= eps && (!nearest || pr.distance < nearest->distance)) nearest = &pr;
    }
    const double delta = schedule_delta(nearest ? nearest->distance : kInf, cfg.delta_steps);
    est.delta_at.push_back(delta);
    if (delta == 0.0) {
      est.verdict = Verdict::fail;
      if (!est.witness) {
        est.witness = nearest->witness;
        est.witness->params["epsilon"] = eps;
      }
    }
  }
  return est;
}

// ---------------------------------------------------------------------------
// Guarantee levels

bool AlphaEstimate::brackets(const WeightVector& w) const {
  if (w.size() != lower.size()) return false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] < lower[i] - kParallelTol || w[i] > upper[i] + kParallelTol) return false;
  }
  return true;
}

AlphaEstimate estimate_alpha(const RuleSpec& rule, double bracket_width, const SampleConfig& s) {
  if (!(bracket_width > 0.0)) throw InputError("bracket width must be positive");
  const std::size_t n = s.claimants;
  validate(rule, n);

  AlphaEstimate est;
  est.bracket_width = bracket_width;
  est.lower.assign(n, 0.0);
  est.upper.assign(n, 1.0);
  est.witnesses.assign(n, std::nullopt);

  // A problem refutes every level above (z_i + tol) / E for claimants it rations.
  std::vector<double> threshold(n, kInf);
  std::vector<ClaimsProblem> static_problems;
  std::vector<std::vector<double>> static_thresholds(n);
  auto absorb = [&](const ClaimsProblem& p) {
    if (!(p.endowment() > 0.0)) return;
    const auto z = allocate(rule, p).awards;
    ++est.samples_tested;
    const double tol = scaled(s.tol, p.endowment());
    static_problems.push_back(p);
    for (std::size_t i = 0; i < n; ++i) {
      const double t = z[i] >= p.claim(i) - tol ? kInf : (z[i] + tol) / p.endowment();
      static_thresholds[i].push_back(t);
      threshold[i] = std::min(threshold[i], t);
    }
  };
  // The earliest evaluated problem refuting `level`.
  auto static_witness = [&](std::size_t i, double level) {
    for (std::size_t k = 0; k < static_problems.size(); ++k) {
      if (static_thresholds[i][k] < level) {
        return AlphaWitness{static_problems[k], allocate(rule, static_problems[k]).awards, level};
      }
    }
    throw SolverError("no stored problem refutes the level");
  };

  Rng rng(s.seed);
  for (const auto& p : sample_problems(rng, s)) absorb(p);
  for (const auto& w : salient_weights(rule, n)) {
    for (std::size_t k = 0; k < 200; ++k) {
      const double lambda = rng.log_uniform(0.1, 10.0);
      const double E = lambda * rng.uniform(1.0, 4.0);
      const std::size_t i = rng.index(n);
      absorb(sf_problem(w, {i, lambda, E, E - lambda * (1.0 - w[i]) + E * rng.log_uniform(1e-6, 9.0)}));
    }
  }

  // Problems built around a level: claimant i just below or above rho E, the
  // rest claiming several multiples of E in a few proportions.
  std::vector<std::vector<double>> profiles;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::vector<double> single(n - 1, 1e-3);
    single[k] = 1.0;
    profiles.push_back(std::move(single));
  }
  profiles.emplace_back(n - 1, 1.0);
  for (int k = 0; k < 4; ++k) {
    std::vector<double> random(n - 1);
    for (double& x : random) x = rng.uniform(0.05, 1.0);
    profiles.push_back(std::move(random));
  }
  const double shifts[] = {-0.3, -0.05, -1e-3, -1e-6, 1e-6, 0.05};
  const double masses[] = {1.0, 3.0, 10.0, 100.0};
  const double endowments[] = {1.0, 7.0};

  auto structured_violation = [&](std::size_t i, double rho) -> std::optional<AlphaWitness> {
    for (double E : endowments) {
      for (double shift : shifts) {
        const double ci = rho * E * (1.0 + shift);
        for (const auto& profile : profiles) {
          const double total = sum(profile);
          for (double mass : masses) {
            std::vector<double> c(n);
            for (std::size_t k = 0, r = 0; k < n; ++k) c[k] = k == i ? ci : mass * E * profile[r++] / total;
            ClaimsProblem p(E, std::move(c));
            if (!is_wellformed(p)) continue;
            const auto z = allocate(rule, p).awards;
            ++est.samples_tested;
            if (z[i] < std::min(ci, rho * E) - scaled(s.tol, E)) return AlphaWitness{p, z, rho};
          }
        }
      }
    }
    return std::nullopt;
  };

  for (std::size_t i = 0; i < n; ++i) {
    double lo = 0.0;
    double hi = 1.0;
    while (hi - lo > bracket_width) {
      const double mid = 0.5 * (lo + hi);
      std::optional<AlphaWitness> found;
      if (mid > threshold[i]) {
        hi = mid;
        est.witnesses[i].reset();
      } else if ((found = structured_violation(i, mid))) {
        hi = mid;
        est.witnesses[i] = std::move(found);
      } else {
        lo = mid;
      }
    }
    if (hi < 1.0 && !est.witnesses[i]) est.witnesses[i] = static_witness(i, hi);
    est.lower[i] = lo;
    est.upper[i] = hi;
  }

  double mid_sum = 0.0;
  double upper_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mid_sum += 0.5 * (est.lower[i] + est.upper[i]);
    upper_sum += est.upper[i];
  }
  const double margin = 2.0 * double(n) * bracket_width;
  if (std::abs(mid_sum - 1.0) <= margin) {
    est.responsive_class = ResponsiveClass::individuallyUnresponsive;
  } else if (upper_sum < 1.0 - margin) {
    est.responsive_class = ResponsiveClass::individuallyResponsive;
  }
  return est;
}

CrossCheck cross_check_sf_alpha(const RuleSpec& rule, const WeightVector& w, double bracket_width,
                                const SampleConfig& search, const SFGrid& grid) {
  CrossCheck out;
  out.report = make_report("sf-alpha-equivalence", rule, search.seed, grid.tol);
  out.report.weight = w;
  out.alpha = estimate_alpha(rule, bracket_width, search);
  out.report.samples_tested = out.alpha->samples_tested;
  if (out.alpha->responsive_class != ResponsiveClass::individuallyUnresponsive) {
    out.report.verdict = Verdict::inapplicable;
    out.report.note = "theorem precondition unmet: rule is not individually unresponsive";
    return out;
  }
  const auto sf = check_strategy_free(rule, w, grid);
  out.strategy_free = sf.verdict;
  out.alpha_equals_w = out.alpha->brackets(w);
  out.report.samples_tested += sf.samples_tested;
  const bool agree = (sf.verdict == Verdict::pass) == out.alpha_equals_w;
  out.report.verdict = agree ? Verdict::pass : Verdict::fail;
  out.report.note = std::string("strategy-free: ") + std::string(to_string(sf.verdict)) +
                    ", alpha brackets w: " + (out.alpha_equals_w ? "yes" : "no");
  if (!agree) {
    ++out.report.violations;
    out.report.witness = sf.witness;
  }
  return out;
}

// ---------------------------------------------------------------------------

double recheck_witness(const AxiomReport& r) {
  if (!r.witness) throw InputError("report has no witness to recheck");
  const auto& w = *r.witness;
  const auto param = [&](const std::string& key) {
    const auto it = w.params.find(key);
    if (it == w.params.end()) throw InputError("witness lacks parameter '" + key + "'");
    return it->second;
  };
  const auto z = allocate(r.rule, w.problem).awards;

  if (r.axiom == "homogeneity") {
    const double lambda = param("lambda");
    std::vector<double> expected(z);
    for (double& x : expected) x *= lambda;
    return max_abs_diff(allocate(r.rule, *w.related).awards, expected);
  }
  if (r.axiom == "claims-monotonicity") {
    const auto i = static_cast<std::size_t>(param("i"));
    return z[i] - allocate(r.rule, *w.related).awards[i];
  }
  if (r.axiom == "anonymity") {
    const RuleSpec relabelled = param("joint") != 0.0 ? r.rule.permuted(w.permutation) : r.rule;
    const auto zq = allocate(relabelled, *w.related).awards;
    std::vector<double> expected(z.size());
    for (std::size_t k = 0; k < z.size(); ++k) expected[k] = z[w.permutation[k]];
    return max_abs_diff(zq, expected);
  }
  if (r.axiom == "strategy-freedom" || r.axiom == "sf-alpha-equivalence") {
    const auto i = static_cast<std::size_t>(param("i"));
    auto expected = others(r.weight->values(), i);
    for (double& x : expected) x *= param("lambda");
    return max_abs_diff(others(z, i), expected);
  }
  if (r.axiom == "contract") {
    return check_rule_contract({z, std::nullopt}, w.problem, scaled(r.tolerance, w.problem.endowment())).discrepancy;
  }
  if (r.axiom == "continuous-strategy-freedom") {
    const auto i = static_cast<std::size_t>(param("i"));
    return max_abs_diff(others(z, i), others(w.problem.claims(), i));
  }
  throw InputError("no recheck procedure for axiom '" + r.axiom + "'");
}

}  // namespace claimslab
