// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "claimslab/axioms.hpp"
#include "claimslab/badpairs.hpp"
#include "claimslab/market.hpp"
#include "claimslab/rules.hpp"
#include "claimslab/sampling.hpp"
#include "oracles.hpp"

using namespace claimslab;

namespace {

constexpr double kAllocTol = 1e-9;
constexpr double kExactTol = 1e-12;
constexpr double kAlphaWidth = 1e-3;
constexpr double kKappaTol = 1e-3;
constexpr double kGainTol = 1e-6;
constexpr double kPayoffTol = 0.1;
constexpr std::uint64_t kSeed = 42;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string num(double x) { return format_number(x); }

const std::vector<std::string> kCatalog{
    "cea:w=uniform",   "cea:w=0.5,0.3,0.2", "ceaKappa:w=uniform;kappa=1", "proportional",
    "nonCharLiteral",  "nonCharRepaired",   "responsiveSFLiteral",        "responsiveSFRepaired",
};

SFGrid full_grid(double tol = kContractTol) {
  SFGrid g;
  g.random_probes = 10000;
  g.seed = kSeed;
  g.tol = tol;
  return g;
}

Outcome ac1() {
  Outcome o;
  auto z = allocate(parse_rule_spec("cea:w=uniform"), ClaimsProblem(6, {1, 4, 4})).awards;
  o.require(oracle::max_diff(z, {1, 2.5, 2.5}) <= kAllocTol, "uniform example");
  z = allocate(parse_rule_spec("cea:w=0.5,0.3,0.2"), ClaimsProblem(6, {4, 4, 4})).awards;
  o.require(oracle::max_diff(z, {3, 1.8, 1.2}) <= kAllocTol, "weighted example");
  Rng rng(kSeed);
  double worst = 0.0;
  std::size_t compared = 0;
  while (compared < 1000) {
    const std::size_t n = 2 + rng.index(5);
    const auto w = sample_weight(rng, n);
    const auto p = sample_wellformed(rng, n, rng.log_uniform(0.1, 100.0));
    if (!(p.total_claims() > p.endowment())) continue;
    ++compared;
    const auto closed = water_fill(w, p).awards.awards;
    worst = std::max(worst, oracle::max_diff(closed, oracle::cea(w.values(), p.claims(), p.endowment())));
    const auto bisected = solve_cap_lambda([&](std::size_t i, double t) { return t * w[i]; }, p).awards.awards;
    worst = std::max(worst, oracle::max_diff(closed, bisected));
  }
  o.require(worst <= kAllocTol, "closed form vs bisection " + num(worst));
  if (o.pass) o.detail = "1000 instances, worst gap " + num(worst);
  return o;
}

Outcome ac2() {
  Outcome o;
  for (const auto& w : {WeightVector::uniform(3), WeightVector({0.5, 0.3, 0.2}), WeightVector({0.15, 0.25, 0.6})}) {
    const auto r = check_strategy_free(RuleSpec::cea(WeightChoice::of(w)), w, full_grid());
    o.require(r.verdict == Verdict::pass, "cea at " + format_vector(w.values()));
  }
  SFGrid g = full_grid();
  g.pinned.push_back({2, 1.0, 1.0, 0.6});
  const auto r = check_strategy_free(RuleSpec::cea(), WeightVector({0.5, 0.3, 0.2}), g);
  o.require(r.verdict == Verdict::fail && r.witness.has_value(), "uniform cea not refuted at (0.5,0.3,0.2)");
  if (r.witness) {
    const auto z = allocate(RuleSpec::cea(), r.witness->problem).awards;
    o.require(r.witness->problem == ClaimsProblem(1.0, {0.5, 0.3, 0.6}), "witness problem");
    o.require(oracle::max_diff(z, {0.35, 0.3, 0.35}) <= kAllocTol, "witness awards " + format_vector(z));
    o.require(std::abs(recheck_witness(r) - r.witness->discrepancy) <= 10 * kContractTol, "recheck");
  }
  if (o.pass) o.detail = "3 own weights pass; witness (1,(0.5,0.3,0.6)) -> (0.35,0.3,0.35)";
  return o;
}

Outcome ac3() {
  Outcome o;
  SampleConfig s;
  s.seed = kSeed;
  const WeightVector w({0.5, 0.3, 0.2});
  const auto a = estimate_alpha(RuleSpec::cea(WeightChoice::of(w)), kAlphaWidth, s);
  o.require(a.brackets(w), "cea bracket misses w");
  for (std::size_t i = 0; i < 3; ++i) o.require(a.upper[i] - a.lower[i] <= kAlphaWidth, "bracket too wide");
  o.require(a.responsive_class == ResponsiveClass::individuallyUnresponsive, "cea class");
  const auto p = estimate_alpha(RuleSpec::proportional(), kAlphaWidth, s);
  for (double u : p.upper) o.require(u <= 0.01, "proportional upper " + num(u));
  o.require(p.responsive_class == ResponsiveClass::individuallyResponsive, "proportional class");
  if (o.pass) {
    o.detail = "cea [" + format_vector(a.lower) + "]..[" + format_vector(a.upper) + "]; proportional upper max " +
               num(*std::max_element(p.upper.begin(), p.upper.end()));
  }
  return o;
}

Outcome ac4() {
  Outcome o;
  Rng rng(kSeed);
  SampleConfig s;
  s.seed = kSeed;
  s.count = 5000;
  SFGrid g = full_grid();
  g.random_probes = 5000;
  for (int k = 0; k < 5; ++k) {
    const auto w = sample_weight(rng, 3, 0.05);
    const auto c = cross_check_sf_alpha(RuleSpec::cea(WeightChoice::of(w)), w, kAlphaWidth, s, g);
    o.require(c.report.verdict == Verdict::pass && c.strategy_free == Verdict::pass && c.alpha_equals_w,
              "weight " + format_vector(w.values()));
  }
  if (o.pass) o.detail = "5 seeded weights agree";
  return o;
}

Outcome ac5() {
  Outcome o;
  const auto rule = parse_rule_spec("ceaKappa:w=uniform;kappa=1");
  SampleConfig s;
  s.seed = kSeed;
  s.pinned_raises.push_back({ClaimsProblem(6, {1, 4, 4}), 2, 5.0});
  o.require(check_strategy_free(rule, WeightVector::uniform(3), full_grid()).verdict == Verdict::pass, "sf");
  o.require(check_homogeneity(rule, s).verdict == Verdict::pass, "homogeneity");
  const auto m = check_claims_monotonicity(rule, s);
  o.require(m.verdict == Verdict::fail && m.witness.has_value(), "monotonicity not refuted");
  if (m.witness) {
    const double before = allocate(rule, m.witness->problem).awards[2];
    const double after = allocate(rule, *m.witness->related).awards[2];
    o.require(m.witness->problem == ClaimsProblem(6, {1, 4, 4}), "witness problem");
    o.require(std::abs(before - 2.5) <= kKappaTol && std::abs(after - 20.0 / 9.0) <= kKappaTol, "awards");
    o.require(before - after >= 0.277, "decrease " + num(before - after));
    if (o.pass) o.detail = "award_2 " + num(before) + " -> " + num(after);
  }
  return o;
}

Outcome ac6() {
  Outcome o;
  const WeightVector u({0.2, 0.5, 0.3}), v({0.4, 0.2, 0.4});
  const auto b = is_bad_pair(u, v);
  o.require(b.bad, "not bad");
  if (!b.bad) return o;
  const auto w = impossibility_witness(u, v, b.indices->first, b.indices->second);
  o.require(std::abs(w.problem.endowment() - 1.0) <= kExactTol, "endowment");
  o.require(oracle::max_diff(w.problem.claims(), {0.3, 0.5, 0.3}) <= kExactTol, "claims");
  o.require(oracle::max_diff(w.forced_award_u.awards, {0.2, 0.5, 0.3}) <= kExactTol, "forced u");
  o.require(oracle::max_diff(w.forced_award_v.awards, {0.3, 0.4, 0.3}) <= kExactTol, "forced v");
  auto rules = kCatalog;
  rules.push_back("patched:W=0.2,0.5,0.3;fallback=cea:w=uniform");
  for (const auto& spec : rules) {
    const auto z = allocate(parse_rule_spec(spec), w.problem).awards;
    const bool sf_u = oracle::max_diff(z, w.forced_award_u.awards) <= kAllocTol;
    const bool sf_v = oracle::max_diff(z, w.forced_award_v.awards) <= kAllocTol;
    o.require(!(sf_u && sf_v), spec + " satisfies both");
  }
  if (o.pass) o.detail = "E=1, c=(0.3,0.5,0.3); " + std::to_string(rules.size()) + " rules fail u or v";
  return o;
}

Outcome ac7() {
  Outcome o;
  std::size_t agree = 0, total = 0;
  for (std::size_t n : {3u, 4u, 5u}) {
    Rng rng(kSeed + n);
    for (int k = 0; k < 200; ++k) {
      const auto [u, v] = sample_relation_pair(rng, n);
      ++total;
      if (u == v) {
        ++agree;
        continue;
      }
      const bool rel = is_bad_pair(u, v).bad || is_bad_pair(v, u).bad || is_b_prime(u, v).related;
      agree += rel == common_d_witness(u, v).has_value();
    }
  }
  o.require(agree == total, std::to_string(agree) + "/" + std::to_string(total));
  if (o.pass) o.detail = std::to_string(agree) + "/" + std::to_string(total) + " agree";
  return o;
}

Outcome ac8() {
  Outcome o;
  Rng rng(kSeed);
  std::vector<WeightVector> pool;
  for (int k = 0; k < 50; ++k) pool.push_back(sample_weight(rng, 4));
  const auto set = greedy_independent_set(pool);
  o.require(set.size() >= 2, "set size " + std::to_string(set.size()));
  const auto rule = RuleSpec::patched(set, RuleSpec::cea());
  SFGrid g = full_grid();
  g.random_probes = 2000;
  std::size_t passed = 0;
  for (const auto& w : set) {
    if (check_strategy_free(rule, w, g).verdict == Verdict::pass) {
      ++passed;
    } else {
      o.require(false, "sf fails at " + format_vector(w.values()));
    }
  }
  if (o.pass) o.detail = "kept " + std::to_string(set.size()) + "/50, sf passes for " + std::to_string(passed);
  return o;
}

Outcome ac9() {
  Outcome o;
  const CournotMarket m(12, 1, {0, 0, 0});
  const auto cea = equilibrium_preservation_report(m, RuleSpec::cea(), 9);
  for (const auto& d : cea.deviations) o.require(d.gain <= kGainTol, "cea gain " + num(d.gain));
  o.require(cea.preserved, "cea not preserved");
  const auto prop = equilibrium_preservation_report(m, RuleSpec::proportional(), 9);
  o.require(!prop.preserved, "proportional preserved");
  const auto dev = best_deviation(m, RuleSpec::proportional(), 9, prop.equilibrium, 0, 27);
  const double at27 = composed_payoff(m, RuleSpec::proportional(), 9, std::vector<double>{27, 3, 3})[0];
  o.require(std::abs(at27 - 22.09) <= kPayoffTol, "payoff at 27 " + num(at27));
  o.require(std::abs(dev.equilibrium_payoff - 9) <= kPayoffTol, "equilibrium payoff");
  o.require(dev.gain >= 13.0, "gain " + num(dev.gain));
  if (o.pass) o.detail = "proportional payoff at 27 = " + num(at27) + ", gain " + num(dev.gain);
  return o;
}

Outcome ac10() {
  Outcome o;
  CsfConfig cfg;
  cfg.seed = kSeed;
  const WeightVector w({0.5, 0.3, 0.2});
  o.require(check_continuous_strategy_free(RuleSpec::cea(WeightChoice::of(w)), w, cfg).verdict == Verdict::pass,
            "cea^w csf");
  for (const auto& spec : kCatalog) {
    const auto rule = parse_rule_spec(spec);
    const auto uw = rule.own_weight().value_or(WeightChoice::uniform()).resolve(3);
    const bool sf = check_strategy_free(rule, uw, full_grid()).verdict == Verdict::pass;
    const bool cont = estimate_continuity_modulus(rule, 6.0, 3, cfg).verdict == Verdict::pass;
    const bool csf = check_continuous_strategy_free(rule, uw, cfg).verdict == Verdict::pass;
    if (csf != (sf && cont)) {
      o.require(false, spec + ": csf=" + (csf ? "pass" : "fail") + " sf=" + (sf ? "pass" : "fail") +
                           " continuity=" + (cont ? "pass" : "fail"));
    }
  }
  if (o.pass) o.detail = "csf == sf && continuity for " + std::to_string(kCatalog.size()) + " rules";
  return o;
}

Outcome ac11() {
  Outcome o;
  const auto literal = RuleSpec::simple(RuleKind::responsiveSFLiteral);
  SampleConfig s;
  s.seed = kSeed;
  const auto documented = documented_violations();
  bool has_reference = false;
  for (const auto& d : documented) {
    s.pinned.push_back(d.problem);
    has_reference = has_reference || d.problem == ClaimsProblem(5, {10, 1, 0.5});
    const auto c = check_rule_contract(allocate(d.rule, d.problem), d.problem);
    o.require(!c.passed && c.violated_equation == 3, "documented problem not flagged with (3)");
  }
  o.require(has_reference, "reference problem not documented");
  const auto audit = check_contract(literal, s);
  o.require(audit.verdict == Verdict::fail && audit.witness &&
                audit.witness->problem == ClaimsProblem(5, {10, 1, 0.5}),
            "literal audit witness");
  SampleConfig fresh;
  fresh.seed = kSeed;
  fresh.count = 10000;
  for (auto kind : {RuleKind::nonCharRepaired, RuleKind::responsiveSFRepaired}) {
    o.require(check_contract(RuleSpec::simple(kind), fresh).verdict == Verdict::pass,
              std::string(to_string(kind)) + " contract");
  }
  SampleConfig alpha;
  alpha.seed = kSeed;
  alpha.pinned.push_back(ClaimsProblem(6, {1, 3, 5}));
  const auto a = estimate_alpha(RuleSpec::simple(RuleKind::nonCharLiteral), kAlphaWidth, alpha);
  o.require(!a.brackets(WeightVector::uniform(3)), "nonCharLiteral bracket contains uniform");
  bool recorded = false;
  for (const auto& w : a.witnesses) {
    if (w && w->problem == ClaimsProblem(6, {1, 3, 5}) && w->awards == std::vector<double>{1, 0, 5}) recorded = true;
  }
  o.require(recorded, "(6,(1,3,5)) -> (1,0,5) not recorded");
  if (o.pass) {
    o.detail = std::to_string(documented.size()) + " documented problems flagged; nonCharLiteral upper [" +
               format_vector(a.upper) + "]";
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4},   {"AC5", ac5},   {"AC6", ac6},
      {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}, {"AC10", ac10}, {"AC11", ac11},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += !o.pass;
    std::printf("%-5s %s  %s\n", name, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
