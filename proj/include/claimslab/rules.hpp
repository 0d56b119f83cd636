// Catalog of rules, the allocation dispatcher and the feasibility repair for
// the two three-claimant constructions.
//
// Canonical text forms (used by the CLI and in recheck stubs):
//   cea:w=0.5,0.3,0.2            cea:w=uniform
//   ceaKappa:w=uniform;kappa=1
//   proportional
//   separableDirectional:caps=identity
//   separableDirectional:caps=powerLaw;w=uniform;kappa=0.5
//   separableDirectional:caps=table;table=1:1,4:2/1:2/2:1     (knots x:u per claimant, '/' between claimants)
//   nonCharLiteral  nonCharRepaired  responsiveSFLiteral  responsiveSFRepaired
//   patched:file=W.json;fallback=cea:w=uniform
//   patched:W=0.4,0.3,0.2,0.1|0.1,0.2,0.3,0.4;fallback=proportional
// `fallback=` must be the last key of a patched spec.
#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "claimslab/core.hpp"

namespace claimslab {

enum class RuleKind {
  cea,
  ceaKappa,
  proportional,
  separableDirectional,
  nonCharLiteral,
  nonCharRepaired,
  responsiveSFLiteral,
  responsiveSFRepaired,
  patched,
};

std::string_view to_string(RuleKind kind);

/// Either the uniform weight (resolved once the claimant count is known) or an
/// explicit weight.
struct WeightChoice {
  std::optional<WeightVector> explicit_weight;

  static WeightChoice uniform() { return {}; }
  static WeightChoice of(WeightVector w) { return {std::move(w)}; }
  bool is_uniform() const { return !explicit_weight.has_value(); }
  WeightVector resolve(std::size_t n) const;

  bool operator==(const WeightChoice&) const = default;
};

/// u_i(c) = w_i (c / w_i)^(-kappa).
struct PowerLawCaps {
  WeightChoice weight;
  double kappa = 0.0;
  bool operator==(const PowerLawCaps&) const = default;
};

/// u_i(c) = c, which yields the proportional rule.
struct IdentityCaps {
  bool operator==(const IdentityCaps&) const = default;
};

/// Piecewise-linear u_i through (0, 0) and the given (x, u) knots, flat after
/// the last knot.
struct TableCaps {
  std::vector<std::vector<std::pair<double, double>>> knots;
  bool operator==(const TableCaps&) const = default;
};

using CapFamily = std::variant<PowerLawCaps, IdentityCaps, TableCaps>;

/// u_i(c) for one claimant of a cap family.
double cap_coefficient(const CapFamily& caps, std::size_t i, double claim, std::size_t n);

struct RuleSpec {
  RuleKind kind = RuleKind::proportional;
  WeightChoice weight;  // cea, ceaKappa
  double kappa = 0.0;   // ceaKappa
  CapFamily caps = IdentityCaps{};  // separableDirectional
  std::vector<WeightVector> independent_set;  // patched
  std::shared_ptr<const RuleSpec> fallback;   // patched
  std::string source_file;                    // patched, when loaded from a file

  static RuleSpec cea(WeightChoice w = WeightChoice::uniform());
  static RuleSpec cea_kappa(WeightChoice w, double kappa);
  static RuleSpec proportional();
  static RuleSpec separable_directional(CapFamily caps);
  static RuleSpec simple(RuleKind kind);
  /// Validates pairwise (B u B')-independence of `set`.
  static RuleSpec patched(std::vector<WeightVector> set, RuleSpec fallback);

  /// Weight the rule is built around, if any (uniform for the 3-claimant
  /// constructions, the fallback's weight is not consulted for patched).
  std::optional<WeightChoice> own_weight() const;
  /// The same rule with claimants relabelled: claimant k of the result
  /// plays the role of claimant perm[k] of this rule.
  RuleSpec permuted(std::span<const std::size_t> perm) const;

  bool operator==(const RuleSpec& other) const;
};

/// Throws InputError when the spec cannot be evaluated on `n` claimants.
void validate(const RuleSpec& spec, std::size_t n);

AwardVector allocate(const RuleSpec& spec, const ClaimsProblem& p);

/// Clamps awards to claims and hands the excess to claimants with slack in
/// descending-claim order (index breaks ties). Identity on feasible input.
AwardVector feasibility_repair(const AwardVector& raw, const ClaimsProblem& p);

/// The finite analogue of the rule that is strategy-free for every weight of
/// an independent set: on the D-region of w it returns c except at the
/// witness index, balanced; elsewhere it defers to the fallback.
AwardVector patched_allocate(std::span<const WeightVector> set, const RuleSpec& fallback,
                             const ClaimsProblem& p);

/// The literal three-claimant formulas, without any contract repair.
AwardVector non_char_literal(const ClaimsProblem& p);
AwardVector responsive_sf_literal(const ClaimsProblem& p);

struct DocumentedViolation {
  RuleSpec rule;
  ClaimsProblem problem;
  int violated_equation = 0;
};

/// Problems at which literal formulas breach the rule contract.
std::vector<DocumentedViolation> documented_violations();

std::string to_string(const RuleSpec& spec);
RuleSpec parse_rule_spec(std::string_view text);

/// Parses "uniform" or a comma-separated list; `n` is needed for "uniform".
WeightChoice parse_weight_choice(std::string_view text);
std::vector<double> parse_vector(std::string_view text);

/// WeightList JSON {"weights": [[...], ...]}.
std::vector<WeightVector> load_weight_list(const std::string& path);
std::string weight_list_json(std::span<const WeightVector> weights);

}  // namespace claimslab
