#include "claimslab/rules.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "claimslab/badpairs.hpp"

namespace claimslab {

namespace {

// Claims below this are treated as zero by the power-law caps.
constexpr double kTinyClaim = 1e-300;

AwardVector pass_through(const ClaimsProblem& p) { return {p.claims(), std::nullopt}; }

void require_three(const ClaimsProblem& p, std::string_view what) {
  if (p.size() != 3) {
    throw InputError(std::string(what) + " is defined for exactly 3 claimants, got " + std::to_string(p.size()));
  }
}

double table_cap(const std::vector<std::pair<double, double>>& knots, double x) {
  if (x <= 0.0) return 0.0;
  double px = 0.0;
  double pu = 0.0;
  for (const auto& [kx, ku] : knots) {
    if (x <= kx) return pu + (ku - pu) * (x - px) / (kx - px);
    px = kx;
    pu = ku;
  }
  return pu;
}

std::vector<double> cap_coefficients(const CapFamily& caps, const ClaimsProblem& p) {
  std::vector<double> u(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) u[i] = cap_coefficient(caps, i, p.claim(i), p.size());
  return u;
}

AwardVector solve_with_coefficients(const std::vector<double>& u, const ClaimsProblem& p) {
  auto cap_at = [&u](std::size_t i, double lambda) { return lambda == 0.0 ? 0.0 : lambda * u[i]; };
  return solve_cap_lambda(cap_at, p).awards;
}

}  // namespace

std::string_view to_string(RuleKind kind) {
  switch (kind) {
    case RuleKind::cea: return "cea";
    case RuleKind::ceaKappa: return "ceaKappa";
    case RuleKind::proportional: return "proportional";
    case RuleKind::separableDirectional: return "separableDirectional";
    case RuleKind::nonCharLiteral: return "nonCharLiteral";
    case RuleKind::nonCharRepaired: return "nonCharRepaired";
    case RuleKind::responsiveSFLiteral: return "responsiveSFLiteral";
    case RuleKind::responsiveSFRepaired: return "responsiveSFRepaired";
    case RuleKind::patched: return "patched";
  }
  return "unknown";
}

WeightVector WeightChoice::resolve(std::size_t n) const {
  if (!explicit_weight) return WeightVector::uniform(n);
  if (explicit_weight->size() != n) {
    throw InputError("weight has " + std::to_string(explicit_weight->size()) + " components, problem has " +
                     std::to_string(n) + " claimants");
  }
  return *explicit_weight;
}

double cap_coefficient(const CapFamily& caps, std::size_t i, double claim, std::size_t n) {
  if (const auto* power = std::get_if<PowerLawCaps>(&caps)) {
    if (claim < kTinyClaim) return 0.0;
    const double w = power->weight.resolve(n)[i];
    return w * std::pow(claim / w, -power->kappa);
  }
  if (std::holds_alternative<IdentityCaps>(caps)) return claim;
  return table_cap(std::get<TableCaps>(caps).knots.at(i), claim);
}

RuleSpec RuleSpec::cea(WeightChoice w) {
  RuleSpec s;
  s.kind = RuleKind::cea;
  s.weight = std::move(w);
  return s;
}

RuleSpec RuleSpec::cea_kappa(WeightChoice w, double kappa) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw InputError("kappa must be finite and nonnegative");
  RuleSpec s;
  s.kind = RuleKind::ceaKappa;
  s.weight = std::move(w);
  s.kappa = kappa;
  return s;
}

RuleSpec RuleSpec::proportional() { return simple(RuleKind::proportional); }

RuleSpec RuleSpec::separable_directional(CapFamily caps) {
  RuleSpec s;
  s.kind = RuleKind::separableDirectional;
  s.caps = std::move(caps);
  return s;
}

RuleSpec RuleSpec::simple(RuleKind kind) {
  if (kind == RuleKind::patched) throw InputError("patched rules need an independent set and a fallback");
  RuleSpec s;
  s.kind = kind;
  return s;
}

RuleSpec RuleSpec::patched(std::vector<WeightVector> set, RuleSpec fallback) {
  if (fallback.kind == RuleKind::patched) throw InputError("a patched rule cannot fall back to a patched rule");
  for (std::size_t a = 0; a < set.size(); ++a) {
    if (set[a].size() != set.front().size()) throw InputError("independent set mixes claimant counts");
    for (std::size_t b = 0; b < a; ++b) {
      if (conflicts(set[b], set[a])) {
        throw InputError("weights " + std::to_string(b) + " and " + std::to_string(a) +
                         " form a bad or B' pair; the set is not independent");
      }
    }
  }
  RuleSpec s;
  s.kind = RuleKind::patched;
  s.independent_set = std::move(set);
  s.fallback = std::make_shared<const RuleSpec>(std::move(fallback));
  return s;
}

std::optional<WeightChoice> RuleSpec::own_weight() const {
  switch (kind) {
    case RuleKind::cea:
    case RuleKind::ceaKappa:
      return weight;
    case RuleKind::separableDirectional:
      if (const auto* power = std::get_if<PowerLawCaps>(&caps)) return power->weight;
      return std::nullopt;
    case RuleKind::nonCharLiteral:
    case RuleKind::nonCharRepaired:
    case RuleKind::responsiveSFLiteral:
    case RuleKind::responsiveSFRepaired:
      return WeightChoice::uniform();
    default:
      return std::nullopt;
  }
}

RuleSpec RuleSpec::permuted(std::span<const std::size_t> perm) const {
  auto permute_weight = [&](const WeightChoice& w) {
    if (w.is_uniform()) return w;
    std::vector<double> out(perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k) out[k] = (*w.explicit_weight)[perm[k]];
    return WeightChoice::of(WeightVector(std::move(out)));
  };
  RuleSpec out = *this;
  out.weight = permute_weight(weight);
  if (auto* power = std::get_if<PowerLawCaps>(&out.caps)) {
    power->weight = permute_weight(power->weight);
  } else if (auto* table = std::get_if<TableCaps>(&out.caps)) {
    auto knots = table->knots;
    for (std::size_t k = 0; k < perm.size() && k < knots.size(); ++k) knots[k] = table->knots.at(perm[k]);
    table->knots = std::move(knots);
  }
  for (auto& w : out.independent_set) w = *permute_weight(WeightChoice::of(w)).explicit_weight;
  if (fallback) out.fallback = std::make_shared<const RuleSpec>(fallback->permuted(perm));
  return out;
}

bool RuleSpec::operator==(const RuleSpec& other) const {
  if (kind != other.kind || !(weight == other.weight) || kappa != other.kappa || !(caps == other.caps) ||
      independent_set != other.independent_set) {
    return false;
  }
  if (static_cast<bool>(fallback) != static_cast<bool>(other.fallback)) return false;
  return !fallback || *fallback == *other.fallback;
}

void validate(const RuleSpec& spec, std::size_t n) {
  if (n < 2) throw InputError("rules need at least 2 claimants");
  switch (spec.kind) {
    case RuleKind::cea:
      spec.weight.resolve(n);
      break;
    case RuleKind::ceaKappa:
      spec.weight.resolve(n);
      if (!(spec.kappa >= 0.0) || !std::isfinite(spec.kappa)) throw InputError("kappa must be nonnegative");
      break;
    case RuleKind::proportional:
      break;
    case RuleKind::separableDirectional:
      if (const auto* power = std::get_if<PowerLawCaps>(&spec.caps)) {
        power->weight.resolve(n);
        if (!(power->kappa >= 0.0) || !std::isfinite(power->kappa)) throw InputError("kappa must be nonnegative");
      } else if (const auto* table = std::get_if<TableCaps>(&spec.caps)) {
        if (table->knots.size() != n) throw InputError("cap table needs one knot list per claimant");
        for (const auto& knots : table->knots) {
          if (knots.empty()) throw InputError("cap table has an empty knot list");
          double prev = 0.0;
          for (const auto& [x, u] : knots) {
            if (!(x > prev) || !(u > 0.0) || !std::isfinite(x) || !std::isfinite(u)) {
              throw InputError("cap table knots need increasing positive x and positive u");
            }
            prev = x;
          }
        }
      }
      break;
    case RuleKind::nonCharLiteral:
    case RuleKind::nonCharRepaired:
    case RuleKind::responsiveSFLiteral:
    case RuleKind::responsiveSFRepaired:
      if (n != 3) {
        throw InputError(std::string(to_string(spec.kind)) + " is defined for exactly 3 claimants, got " +
                         std::to_string(n));
      }
      break;
    case RuleKind::patched:
      if (!spec.fallback) throw InputError("patched rule without fallback");
      if (spec.fallback->kind == RuleKind::patched) throw InputError("a patched rule cannot fall back to a patched rule");
      validate(*spec.fallback, n);
      for (const auto& w : spec.independent_set) {
        if (w.size() != n) throw InputError("independent-set weight does not match the claimant count");
      }
      break;
  }
}

AwardVector allocate(const RuleSpec& spec, const ClaimsProblem& p) {
  validate(spec, p.size());
  if (p.total_claims() <= p.endowment()) return pass_through(p);

  switch (spec.kind) {
    case RuleKind::cea:
      return water_fill(spec.weight.resolve(p.size()), p).awards;
    case RuleKind::ceaKappa:
      return solve_with_coefficients(cap_coefficients(PowerLawCaps{spec.weight, spec.kappa}, p), p);
    case RuleKind::proportional: {
      const double ratio = p.endowment() / p.total_claims();
      std::vector<double> z(p.claims());
      for (double& x : z) x *= ratio;
      return {std::move(z), ratio};
    }
    case RuleKind::separableDirectional:
      return solve_with_coefficients(cap_coefficients(spec.caps, p), p);
    case RuleKind::nonCharLiteral:
      return non_char_literal(p);
    case RuleKind::nonCharRepaired:
      return feasibility_repair(non_char_literal(p), p);
    case RuleKind::responsiveSFLiteral:
      return responsive_sf_literal(p);
    case RuleKind::responsiveSFRepaired:
      return feasibility_repair(responsive_sf_literal(p), p);
    case RuleKind::patched:
      return patched_allocate(spec.independent_set, *spec.fallback, p);
  }
  throw InputError("unknown rule kind");
}

AwardVector feasibility_repair(const AwardVector& raw, const ClaimsProblem& p) {
  const auto& c = p.claims();
  if (raw.awards.size() != c.size()) throw InputError("award vector does not match the problem");
  AwardVector out = raw;
  auto& z = out.awards;
  double excess = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] > c[i]) {
      excess += z[i] - c[i];
      z[i] = c[i];
    } else if (z[i] < 0.0) {
      excess += z[i];
      z[i] = 0.0;
    }
  }
  if (excess <= 0.0) return out;

  std::vector<std::size_t> order(c.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return c[a] > c[b]; });
  for (std::size_t i : order) {
    if (excess <= 0.0) break;
    const double give = std::min(c[i] - z[i], excess);
    if (give > 0.0) {
      z[i] += give;
      excess -= give;
    }
  }
  return out;
}

AwardVector patched_allocate(std::span<const WeightVector> set, const RuleSpec& fallback, const ClaimsProblem& p) {
  if (fallback.kind == RuleKind::patched) throw InputError("a patched rule cannot fall back to a patched rule");
  if (p.total_claims() <= p.endowment()) return pass_through(p);

  std::optional<std::size_t> matched;
  DMembership membership;
  for (std::size_t k = 0; k < set.size(); ++k) {
    auto m = d_member(p, set[k]);
    if (!m.member) continue;
    if (matched && m.witness_index != membership.witness_index) {
      throw std::logic_error("independence violated: weights " + std::to_string(*matched) + " and " +
                             std::to_string(k) + " are D-related to the problem at different indices");
    }
    if (!matched) {
      matched = k;
      membership = m;
    }
  }
  if (!matched) return allocate(fallback, p);

  const std::size_t i = *membership.witness_index;
  std::vector<double> z(p.claims());
  z[i] = p.endowment() - (p.total_claims() - p.claim(i));
  return {std::move(z), membership.scale};
}

AwardVector non_char_literal(const ClaimsProblem& p) {
  require_three(p, "nonCharLiteral");
  if (p.total_claims() <= p.endowment()) return pass_through(p);
  const auto& c = p.claims();
  const double E = p.endowment();
  const double third = E / 3.0;

  std::vector<std::size_t> below;
  for (std::size_t k = 0; k < 3; ++k) {
    if (c[k] < third) below.push_back(k);
  }
  std::vector<double> z(3, 0.0);
  if (below.empty()) {
    z.assign(3, third);
  } else if (below.size() == 2) {
    const std::size_t k = 3 - below[0] - below[1];
    z[below[0]] = c[below[0]];
    z[below[1]] = c[below[1]];
    z[k] = E - c[below[0]] - c[below[1]];
  } else if (below.size() == 1) {
    const std::size_t i = below[0];
    std::size_t j = (i == 0) ? 1 : 0;
    for (std::size_t k = 0; k < 3; ++k) {
      if (k != i && c[k] > c[j]) j = k;
    }
    const std::size_t rest = 3 - i - j;
    z[i] = c[i];
    z[j] = std::min(E - c[i], c[j]);
    z[rest] = E - z[i] - z[j];
  } else {
    z = c;
  }
  return {std::move(z), std::nullopt};
}

AwardVector responsive_sf_literal(const ClaimsProblem& p) {
  require_three(p, "responsiveSFLiteral");
  if (p.total_claims() <= p.endowment()) return pass_through(p);
  const auto& c = p.claims();
  const double E = p.endowment();

  std::array<std::size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return c[a] > c[b]; });
  const double c1 = c[order[1]];
  const double c2 = c[order[2]];
  std::array<double, 3> sorted{};
  if (c1 == c2) {
    sorted = {std::max(E - 2.0 * c2, E / 3.0), std::min(c2, E / 3.0), std::min(c2, E / 3.0)};
  } else {
    sorted = {std::min(c1, E / 2.0), std::min(c1, E / 2.0), std::max(E - 2.0 * c1, 0.0)};
  }
  std::vector<double> z(3);
  for (std::size_t k = 0; k < 3; ++k) z[order[k]] = sorted[k];
  return {std::move(z), std::nullopt};
}

std::vector<DocumentedViolation> documented_violations() {
  const auto literal = RuleSpec::simple(RuleKind::responsiveSFLiteral);
  return {
      {literal, ClaimsProblem(5.0, {10.0, 1.0, 0.5}), 3},
      {literal, ClaimsProblem(6.0, {10.0, 2.0, 1.0}), 3},
      {literal, ClaimsProblem(12.0, {9.0, 3.0, 2.0}), 3},
  };
}

}  // namespace claimslab
