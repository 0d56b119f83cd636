#include "doctest.h"

#include "claimslab/axioms.hpp"
#include "claimslab/rules.hpp"

using namespace claimslab;

namespace {

SampleConfig small(std::size_t count = 2000) {
  SampleConfig s;
  s.count = count;
  return s;
}

SFGrid small_grid(std::size_t probes = 2000) {
  SFGrid g;
  g.random_probes = probes;
  return g;
}

// A reported witness must reproduce from scratch.
void check_recheck(const AxiomReport& r) {
  REQUIRE(r.witness);
  const double tol = 10.0 * r.tolerance * (1.0 + r.witness->problem.endowment());
  CHECK(std::abs(recheck_witness(r) - r.witness->discrepancy) <= tol);
  CHECK(r.witness->recheck.rfind("claimslab allocate --rule", 0) == 0);
}

}  // namespace

TEST_CASE("cea satisfies the basic axioms") {
  for (const auto* spec : {"cea:w=uniform", "cea:w=0.5,0.3,0.2"}) {
    const auto rule = parse_rule_spec(spec);
    CAPTURE(spec);
    CHECK(check_homogeneity(rule, small()).verdict == Verdict::pass);
    CHECK(check_claims_monotonicity(rule, small()).verdict == Verdict::pass);
    CHECK(check_anonymity(rule, small()).verdict == Verdict::pass);
    CHECK(check_contract(rule, small()).verdict == Verdict::pass);
  }
}

TEST_CASE("strategy-freedom of cea at its own weight and failure elsewhere") {
  for (const auto& w : {WeightVector::uniform(3), WeightVector({0.5, 0.3, 0.2}), WeightVector({0.1, 0.1, 0.8})}) {
    CHECK(check_strategy_free(RuleSpec::cea(WeightChoice::of(w)), w, small_grid()).verdict == Verdict::pass);
  }
  SFGrid g = small_grid();
  g.pinned.push_back({2, 1.0, 1.0, 0.6});
  const auto r = check_strategy_free(RuleSpec::cea(), WeightVector({0.5, 0.3, 0.2}), g);
  CHECK(r.verdict == Verdict::fail);
  check_recheck(r);
  CHECK(r.witness->problem == ClaimsProblem(1.0, {0.5, 0.3, 0.6}));
  CHECK(r.witness->observed == std::vector<double>{0.35, 0.3});
}

TEST_CASE("proportional fails strategy-freedom with a reproducible witness") {
  SFGrid g = small_grid();
  g.pinned.push_back({0, 3.0, 3.0, 2.0});
  const auto r = check_strategy_free(RuleSpec::proportional(), WeightVector::uniform(3), g);
  CHECK(r.verdict == Verdict::fail);
  check_recheck(r);
  CHECK(r.witness->discrepancy == doctest::Approx(0.25));
}

TEST_CASE("claims monotonicity fails for the power-law family") {
  SampleConfig s = small();
  s.pinned_raises.push_back({ClaimsProblem(6.0, {1.0, 4.0, 4.0}), 2, 5.0});
  const auto r = check_claims_monotonicity(parse_rule_spec("ceaKappa:w=uniform;kappa=1"), s);
  CHECK(r.verdict == Verdict::fail);
  check_recheck(r);
  CHECK(r.witness->observed.size() >= 1);
  CHECK(r.witness->discrepancy == doctest::Approx(2.5 - 20.0 / 9.0).epsilon(1e-6));
}

TEST_CASE("witnesses of failing literal rules recheck") {
  for (const auto* spec : {"nonCharLiteral", "responsiveSFLiteral"}) {
    const auto rule = parse_rule_spec(spec);
    CAPTURE(spec);
    check_recheck(check_claims_monotonicity(rule, small()));
    check_recheck(check_anonymity(rule, small()));
  }
  check_recheck(check_contract(parse_rule_spec("responsiveSFLiteral"), small()));
}

TEST_CASE("reports are deterministic for a fixed seed") {
  const auto rule = RuleSpec::proportional();
  const auto a = check_strategy_free(rule, WeightVector::uniform(3), small_grid());
  const auto b = check_strategy_free(rule, WeightVector::uniform(3), small_grid());
  REQUIRE(a.witness);
  CHECK(a.witness->problem == b.witness->problem);
  CHECK(a.violations == b.violations);
  SampleConfig s = small();
  s.seed = 7;
  const auto c = check_claims_monotonicity(parse_rule_spec("nonCharLiteral"), s);
  const auto d = check_claims_monotonicity(parse_rule_spec("nonCharLiteral"), s);
  CHECK(c.witness->problem == d.witness->problem);
}

TEST_CASE("continuous strategy-freedom") {
  CsfConfig cfg;
  cfg.probes = 4000;
  const WeightVector w({0.5, 0.3, 0.2});
  CHECK(check_continuous_strategy_free(RuleSpec::cea(WeightChoice::of(w)), w, cfg).verdict == Verdict::pass);
  const auto r = check_continuous_strategy_free(RuleSpec::proportional(), WeightVector::uniform(3), cfg);
  CHECK(r.verdict == Verdict::fail);
  check_recheck(r);
}

TEST_CASE("continuity modulus separates cea from the three-claimant constructions") {
  CsfConfig cfg;
  cfg.probes = 4000;
  const auto cea = estimate_continuity_modulus(RuleSpec::cea(), 6.0, 3, cfg);
  CHECK(cea.verdict == Verdict::pass);
  CHECK(cea.max_observed_ratio <= 3.0);
  const auto nc = estimate_continuity_modulus(parse_rule_spec("nonCharRepaired"), 6.0, 3, cfg);
  CHECK(nc.verdict == Verdict::fail);
  REQUIRE(nc.witness);
  CHECK(nc.witness->discrepancy >= 0.01);
}

TEST_CASE("alpha brackets the cea weight and classifies rules") {
  const WeightVector w({0.5, 0.3, 0.2});
  const auto a = estimate_alpha(RuleSpec::cea(WeightChoice::of(w)), 1e-3, small());
  CHECK(a.brackets(w));
  CHECK(a.responsive_class == ResponsiveClass::individuallyUnresponsive);
  for (std::size_t i = 0; i < 3; ++i) CHECK(a.upper[i] - a.lower[i] <= 1e-3);

  const auto p = estimate_alpha(RuleSpec::proportional(), 1e-3, small());
  for (double u : p.upper) CHECK(u <= 0.01);
  CHECK(p.responsive_class == ResponsiveClass::individuallyResponsive);
}

TEST_CASE("alpha witness for the literal construction") {
  SampleConfig s = small();
  s.pinned.push_back(ClaimsProblem(6.0, {1.0, 3.0, 5.0}));
  const auto a = estimate_alpha(parse_rule_spec("nonCharLiteral"), 1e-3, s);
  CHECK_FALSE(a.brackets(WeightVector::uniform(3)));
  REQUIRE(a.witnesses[1]);
  CHECK(a.witnesses[1]->problem == ClaimsProblem(6.0, {1.0, 3.0, 5.0}));
  CHECK(a.witnesses[1]->awards == std::vector<double>{1.0, 0.0, 5.0});
}

TEST_CASE("sf and alpha cross-check") {
  const WeightVector w({0.6, 0.25, 0.15});
  const auto c = cross_check_sf_alpha(RuleSpec::cea(WeightChoice::of(w)), w, 1e-3, small(), small_grid());
  CHECK(c.report.verdict == Verdict::pass);
  CHECK(c.strategy_free == Verdict::pass);
  CHECK(c.alpha_equals_w);
  // Against a foreign weight both sides are negative.
  const auto d = cross_check_sf_alpha(RuleSpec::cea(), w, 1e-3, small(), small_grid());
  CHECK(d.report.verdict == Verdict::pass);
  CHECK(d.strategy_free == Verdict::fail);
  CHECK_FALSE(d.alpha_equals_w);
  const auto e = cross_check_sf_alpha(RuleSpec::proportional(), w, 1e-3, small(), small_grid());
  CHECK(e.report.verdict == Verdict::inapplicable);
}
