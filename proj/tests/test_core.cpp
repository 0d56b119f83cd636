#include "doctest.h"

#include "claimslab/core.hpp"
#include "claimslab/sampling.hpp"
#include "oracles.hpp"

using namespace claimslab;

TEST_CASE("water filling matches hand computations") {
  auto s = water_fill(WeightVector::uniform(3), ClaimsProblem(6.0, {1.0, 4.0, 4.0}));
  CHECK(oracle::max_diff(s.awards.awards, {1.0, 2.5, 2.5}) <= 1e-12);
  CHECK(s.lambda == doctest::Approx(7.5).epsilon(1e-12));
  REQUIRE(s.awards.lambda);

  s = water_fill(WeightVector({0.5, 0.3, 0.2}), ClaimsProblem(6.0, {4.0, 4.0, 4.0}));
  CHECK(oracle::max_diff(s.awards.awards, {3.0, 1.8, 1.2}) <= 1e-12);

  // Every cap binds except the largest claimant's.
  s = water_fill(WeightVector({0.25, 0.25, 0.5}), ClaimsProblem(3.0, {0.5, 0.5, 10.0}));
  CHECK(oracle::max_diff(s.awards.awards, {0.5, 0.5, 2.0}) <= 1e-12);
}

TEST_CASE("water filling and the generic solver agree with bisection on seeded problems") {
  Rng rng(1234);
  double worst_fill = 0.0, worst_generic = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = 2 + rng.index(5);
    const auto w = sample_weight(rng, n);
    auto p = sample_wellformed(rng, n, rng.log_uniform(0.1, 100.0));
    if (!(p.total_claims() > p.endowment())) continue;
    const auto expected = oracle::cea(w.values(), p.claims(), p.endowment());
    worst_fill = std::max(worst_fill, oracle::max_diff(water_fill(w, p).awards.awards, expected));
    const auto generic = solve_cap_lambda([&](std::size_t i, double t) { return t * w[i]; }, p);
    worst_generic = std::max(worst_generic, oracle::max_diff(generic.awards.awards, expected));
  }
  CHECK(worst_fill <= 1e-9);
  CHECK(worst_generic <= 1e-9);
}

TEST_CASE("contract check reports the first broken equation") {
  const ClaimsProblem p(5.0, {10.0, 1.0, 0.5});
  CHECK(check_rule_contract({{4.0, 0.5, 0.5}, std::nullopt}, p).passed);

  auto r = check_rule_contract({{3.0, 1.0, 1.0}, std::nullopt}, p);
  CHECK_FALSE(r.passed);
  CHECK(r.violated_equation == 3);
  CHECK(r.offending_index == 2u);
  CHECK(r.discrepancy == doctest::Approx(0.5));

  r = check_rule_contract({{3.0, 1.0, 0.5}, std::nullopt}, p);
  CHECK(r.violated_equation == 1);
  CHECK(r.discrepancy == doctest::Approx(0.5));

  const ClaimsProblem slack(9.0, {1.0, 2.0, 3.0});
  r = check_rule_contract({{1.0, 2.0, 2.0}, std::nullopt}, slack);
  CHECK(r.violated_equation == 2);
  CHECK(check_rule_contract({{1.0, 2.0, 3.0}, std::nullopt}, slack).passed);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(ClaimsProblem(-1.0, {1.0, 1.0}), InputError);
  CHECK_THROWS_AS(ClaimsProblem(1.0, {1.0, -0.1}), InputError);
  CHECK_THROWS_AS(ClaimsProblem(1.0, {1.0}), InputError);
  CHECK_THROWS_AS(WeightVector({0.5, 0.6}), InputError);
  CHECK_THROWS_AS(WeightVector({1.0, 0.0}), InputError);
  CHECK_NOTHROW(WeightVector({0.5, 0.3, 0.2}));
  CHECK_THROWS_AS(water_fill(WeightVector::uniform(2), ClaimsProblem(3.0, {1.0, 2.0})), InputError);
  CHECK(is_wellformed(ClaimsProblem(3.0, {1.0, 2.0})));
  CHECK_FALSE(is_wellformed(ClaimsProblem(3.5, {1.0, 2.0})));
}

TEST_CASE("parallelism") {
  const std::vector<double> w{0.3, 0.2};
  auto t = is_parallel(std::vector<double>{0.9, 0.6}, w);
  CHECK(t.parallel);
  CHECK(*t.scale == doctest::Approx(3.0));
  CHECK_FALSE(is_parallel(std::vector<double>{0.9, 0.7}, w).parallel);
  CHECK(is_parallel(std::vector<double>{0.0, 0.0}, w).parallel);
  CHECK(is_parallel(std::vector<double>{0.9, 0.6 + 1e-12}, w).parallel);
}

TEST_CASE("homogeneity of water filling on seeded problems") {
  Rng rng(99);
  for (int k = 0; k < 500; ++k) {
    const std::size_t n = 2 + rng.index(4);
    const auto w = sample_weight(rng, n);
    const auto p = sample_wellformed(rng, n);
    if (!(p.total_claims() > p.endowment())) continue;
    const double t = rng.log_uniform(0.01, 100.0);
    auto z = water_fill(w, p).awards.awards;
    for (double& x : z) x *= t;
    CHECK(oracle::max_diff(water_fill(w, p.scaled(t)).awards.awards, z) <= 1e-9 * (1.0 + t * p.endowment()));
  }
}

TEST_CASE("number formatting round-trips") {
  for (double x : {0.1, 1.0 / 3.0, 7.5, 1e-300, 123456789.125}) {
    CHECK(std::stod(format_number(x)) == x);
  }
  CHECK(format_vector(std::vector<double>{1.0, 2.5}) == "1,2.5");
}

TEST_CASE("seeded generator is reproducible") {
  Rng a(5), b(5);
  for (int k = 0; k < 100; ++k) CHECK(a.next() == b.next());
  Rng r(6);
  for (int k = 0; k < 1000; ++k) {
    const auto w = sample_weight(r, 4);
    CHECK(std::abs(sum(w.values()) - 1.0) <= kWeightSumTol);
    CHECK(is_wellformed(sample_wellformed(r, 3)));
  }
}
