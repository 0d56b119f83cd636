#include "claimslab/cli.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "claimslab/axioms.hpp"
#include "claimslab/badpairs.hpp"
#include "claimslab/market.hpp"
#include "claimslab/rules.hpp"
#include "claimslab/sampling.hpp"

namespace claimslab::cli {

namespace {

using json = nlohmann::ordered_json;
using Row = std::array<std::string, 5>;  // rule, axiom, weight, verdict, witnessRef

struct Report {
  std::string command;
  json config = json::object();
  std::string verdict;
  json witnesses = json::array();
  json metrics = json::object();
  json extra = json::object();
  std::vector<Row> rows;
  std::uint64_t seed = 0;
  double tol = kContractTol;
  int exit_code = kSuccess;
};

json problem_json(const ClaimsProblem& p) { return {{"endowment", p.endowment()}, {"claims", p.claims()}}; }

std::string weight_label(const std::optional<WeightVector>& w) {
  if (!w) return "-";
  return w->is_uniform() ? "uniform" : format_vector(w->values());
}

std::string add_witness(Report& r, json w) {
  const std::string id = "w" + std::to_string(r.witnesses.size());
  w["id"] = id;
  r.witnesses.push_back(std::move(w));
  return id;
}

json witness_json(const Witness& w) {
  json j;
  j["problem"] = problem_json(w.problem);
  if (w.related) j["related"] = problem_json(*w.related);
  if (!w.permutation.empty()) j["permutation"] = w.permutation;
  j["params"] = json::object();
  for (const auto& [k, v] : w.params) j["params"][k] = v;
  j["observed"] = w.observed;
  j["expected"] = w.expected;
  j["discrepancy"] = w.discrepancy;
  j["recheck"] = w.recheck;
  return j;
}

// Adds one verdict row (and its witness) to the report.
void add_axiom(Report& r, const AxiomReport& a) {
  std::string ref;
  if (a.witness) {
    json w = witness_json(*a.witness);
    w["axiom"] = a.axiom;
    w["rule"] = to_string(a.rule);
    ref = add_witness(r, std::move(w));
  }
  r.rows.push_back({to_string(a.rule), a.axiom, weight_label(a.weight), std::string(to_string(a.verdict)), ref});
}

json axiom_metrics(const AxiomReport& a) {
  json m{{"samplesTested", a.samples_tested}, {"violations", a.violations}, {"seed", a.seed},
         {"tolerance", a.tolerance}};
  if (!a.note.empty()) m["note"] = a.note;
  return m;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string render(const Report& r, const std::string& format) {
  if (format == "csv") {
    std::string out = "rule,axiom,weight,verdict,witnessRef\n";
    for (const auto& row : r.rows) {
      for (std::size_t k = 0; k < row.size(); ++k) out += (k ? "," : "") + csv_field(row[k]);
      out += "\n";
    }
    return out;
  }
  json j;
  j["command"] = r.command;
  j["config"] = r.config;
  j["verdict"] = r.verdict;
  j["witnesses"] = r.witnesses;
  j["metrics"] = r.metrics;
  for (const auto& [k, v] : r.extra.items()) j[k] = v;
  j["version"] = kVersion;
  j["seed"] = r.seed;
  j["tolerances"] = {{"balance", kBalanceTol}, {"contract", r.tol}, {"parallel", kParallelTol},
                     {"weightSum", kWeightSumTol}};
  return j.dump(2) + "\n";
}

ClaimsProblem parse_problem(const std::string& text) {
  // "E:c1,c2,..."
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InputError("problem must be written E:c1,c2,...");
  const auto e = parse_vector(text.substr(0, colon));
  if (e.size() != 1) throw InputError("problem endowment must be a single number");
  return ClaimsProblem(e[0], parse_vector(text.substr(colon + 1)));
}

std::size_t infer_claimants(const RuleSpec& rule, const std::string& weights, std::size_t fallback) {
  if (weights != "uniform") return parse_vector(weights).size();
  switch (rule.kind) {
    case RuleKind::nonCharLiteral:
    case RuleKind::nonCharRepaired:
    case RuleKind::responsiveSFLiteral:
    case RuleKind::responsiveSFRepaired:
      return 3;
    case RuleKind::patched:
      if (!rule.independent_set.empty()) return rule.independent_set.front().size();
      break;
    default:
      break;
  }
  if (auto own = rule.own_weight(); own && !own->is_uniform()) return own->explicit_weight->size();
  return fallback;
}

// ---------------------------------------------------------------------------
// Catalog used by the suites.

struct CatalogEntry {
  std::string spec;
  // Expected verdicts keyed by axiom; axioms absent here are recorded only.
  std::map<std::string, Verdict> expected;
};

std::vector<CatalogEntry> paper_catalog() {
  const std::map<std::string, Verdict> cea_all{{"homogeneity", Verdict::pass},
                                               {"claims-monotonicity", Verdict::pass},
                                               {"anonymity", Verdict::pass},
                                               {"strategy-freedom", Verdict::pass},
                                               {"continuous-strategy-freedom", Verdict::pass},
                                               {"continuity", Verdict::pass}};
  return {
      {"cea:w=uniform", cea_all},
      {"cea:w=0.5,0.3,0.2", cea_all},
      {"cea:w=0.6,0.25,0.15", cea_all},
      {"ceaKappa:w=uniform;kappa=1",
       {{"homogeneity", Verdict::pass},
        {"claims-monotonicity", Verdict::fail},
        {"anonymity", Verdict::pass},
        {"strategy-freedom", Verdict::pass}}},
      {"ceaKappa:w=uniform;kappa=0.5", {{"homogeneity", Verdict::pass}, {"strategy-freedom", Verdict::pass}}},
      {"proportional",
       {{"homogeneity", Verdict::pass},
        {"claims-monotonicity", Verdict::pass},
        {"anonymity", Verdict::pass},
        {"strategy-freedom", Verdict::fail},
        {"continuous-strategy-freedom", Verdict::fail}}},
      {"nonCharLiteral", {}},
      {"nonCharRepaired", {}},
      {"responsiveSFLiteral", {}},
      {"responsiveSFRepaired", {{"anonymity", Verdict::pass}}},
  };
}

std::vector<AxiomReport> audit_all(const RuleSpec& rule, const WeightVector& w, const SampleConfig& s,
                                   const SFGrid& grid, const CsfConfig& csf) {
  std::vector<AxiomReport> out{check_homogeneity(rule, s), check_claims_monotonicity(rule, s),
                               check_anonymity(rule, s), check_strategy_free(rule, w, grid),
                               check_continuous_strategy_free(rule, w, csf)};
  const auto est = estimate_continuity_modulus(rule, 6.0, w.size(), csf);
  AxiomReport cont;
  cont.axiom = "continuity";
  cont.rule = rule;
  cont.verdict = est.verdict;
  cont.witness = est.witness;
  cont.samples_tested = est.samples_tested;
  cont.seed = csf.seed;
  cont.note = "E=6, max ratio " + format_number(est.max_observed_ratio);
  out.push_back(std::move(cont));
  return out;
}

void suite_paper_checks(Report& r, std::uint64_t seed, std::size_t count) {
  SampleConfig s;
  s.seed = seed;
  s.count = count;
  SFGrid grid;
  grid.seed = seed;
  grid.random_probes = count;
  CsfConfig csf;
  csf.seed = seed;
  json mismatches = json::array();
  std::size_t cells = 0;
  for (const auto& entry : paper_catalog()) {
    const auto rule = parse_rule_spec(entry.spec);
    const auto w = rule.own_weight().value_or(WeightChoice::uniform()).resolve(3);
    for (const auto& a : audit_all(rule, w, s, grid, csf)) {
      add_axiom(r, a);
      ++cells;
      const auto it = entry.expected.find(a.axiom);
      if (it != entry.expected.end() && it->second != a.verdict) {
        mismatches.push_back({{"rule", entry.spec}, {"axiom", a.axiom},
                              {"expected", to_string(it->second)}, {"observed", to_string(a.verdict)}});
      }
    }
  }
  r.metrics["cells"] = cells;
  r.metrics["mismatches"] = mismatches;
  r.verdict = mismatches.empty() ? "pass" : "fail";
  r.exit_code = mismatches.empty() ? kSuccess : kFinding;
}

void suite_contract_audit(Report& r, std::uint64_t seed, std::size_t count) {
  SampleConfig s;
  s.seed = seed;
  s.count = count;
  const auto documented = documented_violations();
  json reproduced = json::array();
  bool any = false;
  for (const auto& entry : paper_catalog()) {
    auto rule = parse_rule_spec(entry.spec);
    SampleConfig local = s;
    for (const auto& d : documented) {
      if (d.rule == rule) local.pinned.push_back(d.problem);
    }
    const auto a = check_contract(rule, local);
    add_axiom(r, a);
    any = any || a.verdict == Verdict::fail;
  }
  for (const auto& d : documented) {
    const auto c = check_rule_contract(allocate(d.rule, d.problem), d.problem);
    reproduced.push_back({{"rule", to_string(d.rule)},
                          {"problem", problem_json(d.problem)},
                          {"documentedEquation", d.violated_equation},
                          {"observedEquation", c.violated_equation ? json(*c.violated_equation) : json(nullptr)},
                          {"discrepancy", c.discrepancy}});
  }
  r.metrics["documentedViolations"] = reproduced;
  r.verdict = any ? "fail" : "pass";
  r.exit_code = any ? kFinding : kSuccess;
}

void suite_composite(Report& r, std::uint64_t seed, std::size_t pairs, std::size_t n) {
  Rng rng(seed);
  std::size_t agree = 0, related = 0, bad = 0;
  std::string first_ref;
  for (std::size_t k = 0; k < pairs; ++k) {
    const auto [u, v] = sample_relation_pair(rng, n);
    if (u == v) continue;
    const bool is_bad = is_bad_pair(u, v).bad || is_bad_pair(v, u).bad;
    const bool rel = is_bad || is_b_prime(u, v).related;
    const auto witness = common_d_witness(u, v);
    related += rel;
    bad += is_bad;
    if (rel == witness.has_value()) {
      ++agree;
    } else if (first_ref.empty()) {
      first_ref = add_witness(r, {{"u", u.values()}, {"v", v.values()}, {"related", rel},
                                  {"witnessFound", witness.has_value()}});
    }
  }
  const bool ok = agree == pairs;
  r.rows.push_back({"-", "composite-identity", "n=" + std::to_string(n), ok ? "pass" : "fail", first_ref});
  r.metrics = {{"pairs", pairs}, {"agreement", agree}, {"related", related}, {"bad", bad}, {"n", n}};
  r.verdict = ok ? "pass" : "fail";
  r.exit_code = ok ? kSuccess : kFinding;
}

}  // namespace

std::uint64_t default_seed() {
  if (const char* env = std::getenv("CLAIMSLAB_SEED")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && end != env) return v;
  }
  return kDefaultSeed;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"claimslab: claims-problem rules engine, axiom audits and witness constructions"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format;
  std::string out_path;
  std::uint64_t seed = default_seed();
  double tol = kContractTol;
  std::size_t count = 10000;
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", out_path, "write the report to this file");
  app.add_option("--seed", seed, "seed for every random draw (default $CLAIMSLAB_SEED or 42)");
  app.add_option("--tol", tol, "relative tolerance, multiplied by (1 + E)");
  app.add_option("--count", count, "random probe budget");

  std::string rule_text, claims_text, weights_text = "uniform", axiom, u_text, v_text, market_text;
  std::string weights_out;
  double endowment = 0.0, width = 1e-3, cap = 0.0;
  std::size_t n = 0, pairs = 200;
  std::optional<std::size_t> idx_i, idx_j;
  std::vector<std::string> points, pinned;
  std::string epsilons = "0.1,0.01";
  std::string suite_name;

  auto* allocate_cmd = app.add_subcommand("allocate", "awards of a rule at one problem");
  allocate_cmd->add_option("--rule", rule_text)->required();
  allocate_cmd->add_option("--endowment", endowment)->required();
  allocate_cmd->add_option("--claims", claims_text)->required();

  auto* audit_cmd = app.add_subcommand("audit", "empirical check of one axiom");
  audit_cmd->add_option("--rule", rule_text)->required();
  audit_cmd->add_option("--axiom", axiom)
      ->required()
      ->check(CLI::IsMember({"homogeneity", "claims-monotonicity", "anonymity", "strategy-freedom",
                             "continuous-strategy-freedom", "continuity", "contract"}));
  audit_cmd->add_option("--weights", weights_text, "weight for (continuous) strategy-freedom");
  audit_cmd->add_option("--n", n, "claimant count when it cannot be inferred");
  audit_cmd->add_option("--point", points, "extra strategy-freedom tuple i,lambda,E,c_i checked first");
  audit_cmd->add_option("--problem", pinned, "extra problem E:c1,c2,... checked first");
  audit_cmd->add_option("--epsilons", epsilons);
  audit_cmd->add_option("--endowment", endowment, "endowment for the continuity estimate (default 6)");

  auto* alpha_cmd = app.add_subcommand("alpha", "bracket the guarantee levels alpha(z)");
  alpha_cmd->add_option("--rule", rule_text)->required();
  alpha_cmd->add_option("--n", n);
  alpha_cmd->add_option("--width", width);
  alpha_cmd->add_option("--problem", pinned, "extra problem E:c1,c2,... searched first");

  auto* badpair_cmd = app.add_subcommand("badpair", "relations B and B' between two weights");
  badpair_cmd->add_option("--u", u_text)->required();
  badpair_cmd->add_option("--v", v_text)->required();

  auto* witness_cmd = app.add_subcommand("witness", "impossibility witness for a bad pair");
  witness_cmd->add_option("--u", u_text)->required();
  witness_cmd->add_option("--v", v_text)->required();
  witness_cmd->add_option("--i", idx_i);
  witness_cmd->add_option("--j", idx_j);

  auto* indep_cmd = app.add_subcommand("independent-set", "greedy (B u B')-independent set of random weights");
  indep_cmd->add_option("--n", n);
  indep_cmd->add_option("--candidates", pairs, "number of seeded candidate weights");
  indep_cmd->add_option("--weights-out", weights_out, "write the set as a weight-list file");

  auto* simulate_cmd = app.add_subcommand("simulate", "order-inflation incentives in a Cournot market");
  simulate_cmd->add_option("--market", market_text, "a=12,b=1,costs=0,0,0")->required();
  simulate_cmd->add_option("--rule", rule_text)->required();
  simulate_cmd->add_option("--endowment", endowment)->required();
  simulate_cmd->add_option("--cap", cap, "deviation search cap (default 10 E)");

  auto* suite_cmd = app.add_subcommand("suite", "paper-checks, contract-audit or composite-property");
  suite_cmd->add_option("name", suite_name)->required();
  suite_cmd->add_option("--pairs", pairs);
  suite_cmd->add_option("--n", n);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  Report r;
  r.seed = seed;
  r.tol = tol;
  try {
    if (*allocate_cmd) {
      r.command = "allocate";
      const auto rule = parse_rule_spec(rule_text);
      const ClaimsProblem p(endowment, parse_vector(claims_text));
      r.config = {{"rule", to_string(rule)}, {"problem", problem_json(p)}};
      const auto z = allocate(rule, p);
      const auto c = check_rule_contract(z, p, tol * (1.0 + p.endowment()));
      r.extra["awards"] = z.awards;
      r.extra["lambda"] = z.lambda ? json(*z.lambda) : json(nullptr);
      r.metrics = {{"contractPassed", c.passed},
                   {"violatedEquation", c.violated_equation ? json(*c.violated_equation) : json(nullptr)},
                   {"discrepancy", c.discrepancy}};
      r.verdict = c.passed ? "pass" : "fail";
      r.exit_code = c.passed ? kSuccess : kFinding;
      r.rows.push_back({to_string(rule), "contract", "-", r.verdict, ""});
    } else if (*audit_cmd) {
      r.command = "audit";
      const auto rule = parse_rule_spec(rule_text);
      const std::size_t claimants = infer_claimants(rule, weights_text, n ? n : 3);
      const auto w = parse_weight_choice(weights_text).resolve(claimants);
      r.config = {{"rule", to_string(rule)}, {"axiom", axiom}, {"weights", weights_text},
                  {"n", claimants}, {"count", count}};
      SampleConfig s;
      s.seed = seed;
      s.count = count;
      s.claimants = claimants;
      s.tol = tol;
      for (const auto& text : pinned) s.pinned.push_back(parse_problem(text));
      SFGrid grid;
      grid.seed = seed;
      grid.random_probes = count;
      grid.tol = tol;
      for (const auto& text : points) {
        const auto v = parse_vector(text);
        if (v.size() != 4 || v[0] < 0 || v[0] != std::floor(v[0])) throw InputError("--point is i,lambda,E,c_i");
        grid.pinned.push_back({static_cast<std::size_t>(v[0]), v[1], v[2], v[3]});
      }
      if (points.empty()) grid.pinned.push_back({0, 3.0, 3.0, 2.0});
      CsfConfig csf;
      csf.seed = seed;
      csf.epsilons = parse_vector(epsilons);
      AxiomReport a;
      if (axiom == "homogeneity") {
        a = check_homogeneity(rule, s);
      } else if (axiom == "claims-monotonicity") {
        a = check_claims_monotonicity(rule, s);
      } else if (axiom == "anonymity") {
        a = check_anonymity(rule, s);
      } else if (axiom == "strategy-freedom") {
        a = check_strategy_free(rule, w, grid);
      } else if (axiom == "continuous-strategy-freedom") {
        a = check_continuous_strategy_free(rule, w, csf);
      } else if (axiom == "contract") {
        a = check_contract(rule, s);
      } else {
        const double E = endowment > 0.0 ? endowment : 6.0;
        const auto est = estimate_continuity_modulus(rule, E, claimants, csf);
        a.axiom = "continuity";
        a.rule = rule;
        a.verdict = est.verdict;
        a.witness = est.witness;
        a.samples_tested = est.samples_tested;
        a.seed = seed;
        r.metrics["epsilons"] = est.epsilon_grid;
        r.metrics["deltaAt"] = est.delta_at;
        r.metrics["maxObservedRatio"] = est.max_observed_ratio;
      }
      add_axiom(r, a);
      const json m = axiom_metrics(a);
      for (const auto& [k, v] : m.items()) r.metrics[k] = v;
      r.verdict = std::string(to_string(a.verdict));
      r.exit_code = a.verdict == Verdict::fail ? kFinding : kSuccess;
    } else if (*alpha_cmd) {
      r.command = "alpha";
      const auto rule = parse_rule_spec(rule_text);
      SampleConfig s;
      s.seed = seed;
      s.count = count;
      s.tol = tol;
      s.claimants = infer_claimants(rule, "uniform", n ? n : 3);
      for (const auto& text : pinned) s.pinned.push_back(parse_problem(text));
      r.config = {{"rule", to_string(rule)}, {"n", s.claimants}, {"width", width}, {"count", count}};
      const auto est = estimate_alpha(rule, width, s);
      r.metrics = {{"lower", est.lower}, {"upper", est.upper},
                   {"class", to_string(est.responsive_class)}, {"samplesTested", est.samples_tested}};
      std::string ref;
      for (std::size_t i = 0; i < est.witnesses.size(); ++i) {
        if (!est.witnesses[i]) continue;
        const auto& w = *est.witnesses[i];
        const auto id = add_witness(r, {{"claimant", i}, {"problem", problem_json(w.problem)},
                                        {"awards", w.awards}, {"refutedLevel", w.level},
                                        {"recheck", allocate_command(rule, w.problem)}});
        if (ref.empty()) ref = id;
      }
      r.verdict = std::string(to_string(est.responsive_class));
      r.rows.push_back({to_string(rule), "alpha", "-", r.verdict, ref});
    } else if (*badpair_cmd) {
      r.command = "badpair";
      const WeightVector u(parse_vector(u_text)), v(parse_vector(v_text));
      if (u.size() != v.size()) throw InputError("--u and --v have different lengths");
      r.config = {{"u", u.values()}, {"v", v.values()}};
      if (u == v) throw InputError("bad-pair test needs distinct weights");
      const auto uv = is_bad_pair(u, v);
      const auto vu = is_bad_pair(v, u);
      const auto bp = is_b_prime(u, v);
      auto idx = [](const BadPairResult& b) { return b.indices ? json{b.indices->first, b.indices->second} : json(nullptr); };
      r.metrics = {{"badUV", uv.bad}, {"indicesUV", idx(uv)}, {"badVU", vu.bad}, {"indicesVU", idx(vu)},
                   {"bPrime", bp.related}, {"bPrimeIndex", bp.index ? json(*bp.index) : json(nullptr)}};
      std::string ref;
      if (auto p = common_d_witness(u, v)) {
        ref = add_witness(r, {{"commonDWitness", problem_json(*p)}});
      }
      const bool related = uv.bad || vu.bad || bp.related;
      r.verdict = uv.bad || vu.bad ? "bad" : (bp.related ? "b-prime" : "independent");
      r.exit_code = related ? kFinding : kSuccess;
      r.rows.push_back({"-", "bad-pair", format_vector(u.values()) + " | " + format_vector(v.values()), r.verdict, ref});
    } else if (*witness_cmd) {
      r.command = "witness";
      const WeightVector u(parse_vector(u_text)), v(parse_vector(v_text));
      if (u.size() != v.size()) throw InputError("--u and --v have different lengths");
      if (u == v) throw InputError("witness needs distinct weights");
      std::pair<std::size_t, std::size_t> ij;
      if (idx_i && idx_j) {
        ij = {*idx_i, *idx_j};
      } else {
        const auto b = is_bad_pair(u, v);
        if (!b.bad) throw InputError("(u, v) is not a bad pair in this orientation");
        ij = *b.indices;
      }
      r.config = {{"u", u.values()}, {"v", v.values()}, {"i", ij.first}, {"j", ij.second}};
      const auto w = impossibility_witness(u, v, ij.first, ij.second);
      const auto ref = add_witness(r, {{"problem", problem_json(w.problem)},
                                       {"forcedAwardU", w.forced_award_u.awards},
                                       {"forcedAwardV", w.forced_award_v.awards},
                                       {"thresholds", {w.thresholds.first, w.thresholds.second}},
                                       {"disagreementIndex", ij.first}});
      r.metrics = {{"disagreement", std::abs(w.forced_award_u.awards[ij.first] - w.forced_award_v.awards[ij.first])}};
      r.verdict = "witness";
      r.exit_code = kFinding;
      r.rows.push_back({"-", "impossibility-witness", format_vector(u.values()) + " | " + format_vector(v.values()),
                        "witness", ref});
    } else if (*indep_cmd) {
      r.command = "independent-set";
      const std::size_t claimants = n ? n : 4;
      const std::size_t candidates = indep_cmd->count("--candidates") ? pairs : 50;
      r.config = {{"n", claimants}, {"candidates", candidates}};
      Rng rng(seed);
      std::vector<WeightVector> pool;
      for (std::size_t k = 0; k < candidates; ++k) pool.push_back(sample_weight(rng, claimants));
      const auto kept = greedy_independent_set(pool);
      json ws = json::array();
      for (const auto& w : kept) ws.push_back(w.values());
      r.extra["weights"] = ws;
      r.metrics = {{"size", kept.size()}};
      if (!weights_out.empty()) {
        std::ofstream f(weights_out);
        if (!f) throw InputError("cannot write '" + weights_out + "'");
        f << weight_list_json(kept);
      }
      r.verdict = "pass";
      r.rows.push_back({"-", "independent-set", "n=" + std::to_string(claimants), "pass", ""});
    } else if (*simulate_cmd) {
      r.command = "simulate";
      const auto m = parse_market(market_text);
      const auto rule = parse_rule_spec(rule_text);
      r.config = {{"market", to_string(m)}, {"rule", to_string(rule)}, {"endowment", endowment}, {"cap", cap}};
      const auto rep = equilibrium_preservation_report(m, rule, endowment, cap);
      json devs = json::array();
      std::string ref;
      for (const auto& d : rep.deviations) {
        json dj{{"retailer", d.retailer}, {"equilibriumOrder", d.equilibrium_order}, {"bestOrder", d.best_order},
                {"equilibriumPayoff", d.equilibrium_payoff}, {"bestPayoff", d.best_payoff}, {"gain", d.gain},
                {"received", d.received.awards}};
        devs.push_back(dj);
        if (d.gain > rep.cert_tol && ref.empty()) {
          std::vector<double> orders = rep.equilibrium;
          orders[d.retailer] = d.best_order;
          dj["recheck"] = allocate_command(rule, ClaimsProblem(endowment, orders));
          ref = add_witness(r, dj);
        }
      }
      r.metrics = {{"equilibrium", rep.equilibrium}, {"certTol", rep.cert_tol}, {"deviations", devs}};
      r.verdict = rep.preserved ? "preserved" : "not-preserved";
      r.exit_code = rep.preserved ? kSuccess : kFinding;
      r.rows.push_back({to_string(rule), "equilibrium-preservation", "-", r.verdict, ref});
    } else if (*suite_cmd) {
      r.command = "suite";
      r.config = {{"suite", suite_name}, {"count", count}};
      if (suite_name == "paper-checks") {
        suite_paper_checks(r, seed, count);
      } else if (suite_name == "contract-audit") {
        suite_contract_audit(r, seed, count);
      } else if (suite_name == "composite-property") {
        const std::size_t claimants = n ? n : 4;
        r.config["pairs"] = pairs;
        r.config["n"] = claimants;
        suite_composite(r, seed, pairs, claimants);
      } else {
        throw InputError("unknown suite '" + suite_name + "'");
      }
    }
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  r.config["seed"] = seed;

  // Suites print the verdict matrix unless asked otherwise.
  if (format.empty()) format = r.command == "suite" ? "csv" : "json";
  const auto text = render(r, format);
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(out_path);
    if (!f) {
      err << "input error: cannot write '" << out_path << "'\n";
      return kInputError;
    }
    f << text;
  }
  return r.exit_code;
}

}  // namespace claimslab::cli
