// Empirical axiom checkers. Every checker is a falsifier: it runs a
// deterministic structured grid plus seeded random probes and reports "pass"
// when nothing was found at the configured budget.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "claimslab/core.hpp"
#include "claimslab/rules.hpp"

namespace claimslab {

/// Raise claimant i of `problem` to `raised`; used to pin monotonicity probes.
struct RaiseProbe {
  ClaimsProblem problem;
  std::size_t index = 0;
  double raised = 0.0;
};

struct SampleConfig {
  std::uint64_t seed = 42;
  std::size_t count = 10000;
  std::size_t claimants = 3;
  std::vector<double> scales{0.5, 2.0, 10.0};  // homogeneity factors
  double tol = kContractTol;                   // multiplied by (1 + E)
  std::vector<ClaimsProblem> pinned;           // evaluated before anything else
  std::vector<RaiseProbe> pinned_raises;
};

enum class Verdict { pass, fail, inapplicable };
std::string_view to_string(Verdict v);

struct Witness {
  ClaimsProblem problem;
  std::optional<ClaimsProblem> related;  // the second problem of a pair check
  std::vector<std::size_t> permutation;
  std::map<std::string, double> params;
  std::vector<double> observed;
  std::vector<double> expected;
  double discrepancy = 0.0;
  std::string recheck;  // CLI call reproducing the observed awards
};

struct AxiomReport {
  std::string axiom;
  RuleSpec rule;
  std::optional<WeightVector> weight;
  Verdict verdict = Verdict::pass;
  std::optional<Witness> witness;
  std::size_t samples_tested = 0;
  std::size_t violations = 0;
  std::uint64_t seed = 0;
  double tolerance = kContractTol;
  std::string note;
};

/// Recomputes the witness discrepancy from scratch by re-evaluating the rule.
double recheck_witness(const AxiomReport& report);

/// A CLI command line that prints the rule's awards at `p`.
std::string allocate_command(const RuleSpec& rule, const ClaimsProblem& p);

AxiomReport check_homogeneity(const RuleSpec& rule, const SampleConfig& samples);
AxiomReport check_claims_monotonicity(const RuleSpec& rule, const SampleConfig& samples);
/// Rule equations (1)-(3) on pinned then sampled wellformed problems; witness
/// params carry the violated equation and claimant.
AxiomReport check_contract(const RuleSpec& rule, const SampleConfig& samples);
/// Joint permutation of rule weights and claims when the rule's weight is not uniform.
AxiomReport check_anonymity(const RuleSpec& rule, const SampleConfig& samples);

/// One tuple (i, lambda, E, c_i) of the strategy-freedom family.
struct SFPoint {
  std::size_t deviator = 0;
  double lambda = 0.0;
  double endowment = 0.0;
  double claim = 0.0;
};

/// Lambdas, endowments E = lambda * multiple and deviations
/// c_i = (E - lambda * sum(w_{-i})) + offset * E.
struct SFGrid {
  std::vector<double> lambdas{0.25, 1.0, 4.0};
  std::vector<double> endowment_multiples{1.0, 1.25, 1.5, 2.0, 3.0, 4.0};
  std::vector<double> deviation_offsets{0.0, 0.05, 0.1, 0.2, 1.0 / 3.0, 0.4, 0.5, 1.0, 2.0, 5.0, 9.0};
  std::size_t random_probes = 10000;
  std::uint64_t seed = 42;
  double tol = kContractTol;
  std::vector<SFPoint> pinned;  // evaluated before the grid
};

/// The problem (E, (c_i, lambda w_{-i})) of one grid point.
ClaimsProblem sf_problem(const WeightVector& w, const SFPoint& point);

AxiomReport check_strategy_free(const RuleSpec& rule, const WeightVector& w, const SFGrid& grid = {});

struct CsfConfig {
  std::vector<double> epsilons{0.1, 0.01};
  std::size_t delta_steps = 25;  // delta = 2^-k, k = 0 .. delta_steps - 1
  std::size_t probes = 20000;
  std::uint64_t seed = 42;
};

struct ContinuityEstimate {
  std::vector<double> epsilon_grid;
  std::vector<double> delta_at;  // 0 where no delta in the schedule was validated
  double max_observed_ratio = 0.0;
  Verdict verdict = Verdict::pass;
  std::optional<Witness> witness;
  std::size_t samples_tested = 0;
};

/// For each epsilon, the largest delta of the halving schedule for which no
/// probe within delta of an SF profile moved the others' awards by epsilon.
/// The report note lists the validated delta for every epsilon.
AxiomReport check_continuous_strategy_free(const RuleSpec& rule, const WeightVector& w,
                                           const CsfConfig& config = {});

/// Uniform claims continuity at a fixed endowment, probed with claim pairs
/// straddling ties, the E/n and E/2 thresholds and D-region boundaries.
ContinuityEstimate estimate_continuity_modulus(const RuleSpec& rule, double E, std::size_t n,
                                               const CsfConfig& config = {});

enum class ResponsiveClass { individuallyResponsive, individuallyUnresponsive, undetermined };
std::string_view to_string(ResponsiveClass c);

struct AlphaWitness {
  ClaimsProblem problem;
  std::vector<double> awards;
  double level = 0.0;  // the refuted guarantee level
};

struct AlphaEstimate {
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<std::optional<AlphaWitness>> witnesses;
  ResponsiveClass responsive_class = ResponsiveClass::undetermined;
  double bracket_width = 0.0;
  std::size_t samples_tested = 0;

  bool brackets(const WeightVector& w) const;
};

/// Sup-of-valid-guarantees reading: the largest rho with z_i >= c_i ∧ rho E on
/// every searched problem, bracketed per claimant.
AlphaEstimate estimate_alpha(const RuleSpec& rule, double bracket_width, const SampleConfig& search);

struct CrossCheck {
  AxiomReport report;  // verdict pass iff the biconditional agrees
  Verdict strategy_free = Verdict::inapplicable;
  bool alpha_equals_w = false;
  std::optional<AlphaEstimate> alpha;
};

CrossCheck cross_check_sf_alpha(const RuleSpec& rule, const WeightVector& w, double bracket_width,
                                const SampleConfig& search, const SFGrid& grid = {});

}  // namespace claimslab
