// Canonical text form of RuleSpec and the WeightList JSON file.
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "claimslab/rules.hpp"

namespace claimslab {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view token) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto* end = token.data() + token.size();
  const auto res = std::from_chars(token.data(), end, value);
  if (token.empty() || res.ec != std::errc() || res.ptr != end || !std::isfinite(value)) {
    throw InputError("malformed number '" + std::string(token) + "'");
  }
  return value;
}

std::string weight_text(const WeightChoice& w) {
  return w.is_uniform() ? "uniform" : format_vector(w.explicit_weight->values());
}

struct Params {
  std::vector<std::pair<std::string, std::string>> entries;

  std::optional<std::string> get(std::string_view key) const {
    for (const auto& [k, v] : entries) {
      if (k == key) return v;
    }
    return std::nullopt;
  }
};

Params parse_params(std::string_view text, std::initializer_list<std::string_view> allowed) {
  Params params;
  if (trim(text).empty()) return params;
  for (auto item : split(text, ';')) {
    item = trim(item);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw InputError("expected key=value in rule parameters, got '" + std::string(item) + "'");
    const auto key = trim(item.substr(0, eq));
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw InputError("unknown rule parameter '" + std::string(key) + "'");
    }
    params.entries.emplace_back(std::string(key), std::string(trim(item.substr(eq + 1))));
  }
  return params;
}

TableCaps parse_table(std::string_view text) {
  TableCaps table;
  for (auto claimant : split(text, '/')) {
    std::vector<std::pair<double, double>> knots;
    for (auto knot : split(claimant, ',')) {
      const auto colon = knot.find(':');
      if (colon == std::string_view::npos) throw InputError("cap table knots are written x:u");
      knots.emplace_back(parse_number(knot.substr(0, colon)), parse_number(knot.substr(colon + 1)));
    }
    table.knots.push_back(std::move(knots));
  }
  return table;
}

std::string table_text(const TableCaps& table) {
  std::string out;
  for (std::size_t i = 0; i < table.knots.size(); ++i) {
    if (i) out += '/';
    for (std::size_t k = 0; k < table.knots[i].size(); ++k) {
      if (k) out += ',';
      out += format_number(table.knots[i][k].first) + ":" + format_number(table.knots[i][k].second);
    }
  }
  return out;
}

std::vector<WeightVector> parse_inline_weights(std::string_view text) {
  std::vector<WeightVector> out;
  for (auto item : split(text, '|')) out.emplace_back(parse_vector(item));
  return out;
}

}  // namespace

std::vector<double> parse_vector(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw InputError("empty vector");
  std::vector<double> out;
  for (auto token : split(text, ',')) out.push_back(parse_number(token));
  return out;
}

WeightChoice parse_weight_choice(std::string_view text) {
  text = trim(text);
  if (text == "uniform") return WeightChoice::uniform();
  return WeightChoice::of(WeightVector(parse_vector(text)));
}

std::string to_string(const RuleSpec& spec) {
  std::string out(to_string(spec.kind));
  switch (spec.kind) {
    case RuleKind::cea:
      return out + ":w=" + weight_text(spec.weight);
    case RuleKind::ceaKappa:
      return out + ":w=" + weight_text(spec.weight) + ";kappa=" + format_number(spec.kappa);
    case RuleKind::separableDirectional:
      if (const auto* power = std::get_if<PowerLawCaps>(&spec.caps)) {
        return out + ":caps=powerLaw;w=" + weight_text(power->weight) + ";kappa=" + format_number(power->kappa);
      }
      if (const auto* table = std::get_if<TableCaps>(&spec.caps)) {
        return out + ":caps=table;table=" + table_text(*table);
      }
      return out + ":caps=identity";
    case RuleKind::patched: {
      out += ":";
      if (!spec.source_file.empty()) {
        out += "file=" + spec.source_file;
      } else {
        out += "W=";
        for (std::size_t k = 0; k < spec.independent_set.size(); ++k) {
          if (k) out += '|';
          out += format_vector(spec.independent_set[k].values());
        }
      }
      return out + ";fallback=" + to_string(*spec.fallback);
    }
    default:
      return out;
  }
}

RuleSpec parse_rule_spec(std::string_view text) {
  text = trim(text);
  const auto colon = text.find(':');
  const auto name = trim(text.substr(0, colon));
  const auto rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);

  if (name == "cea") {
    const auto params = parse_params(rest, {"w"});
    return RuleSpec::cea(parse_weight_choice(params.get("w").value_or("uniform")));
  }
  if (name == "ceaKappa") {
    const auto params = parse_params(rest, {"w", "kappa"});
    return RuleSpec::cea_kappa(parse_weight_choice(params.get("w").value_or("uniform")),
                               parse_number(params.get("kappa").value_or("0")));
  }
  if (name == "proportional") {
    parse_params(rest, {});
    return RuleSpec::proportional();
  }
  if (name == "separableDirectional") {
    const auto params = parse_params(rest, {"caps", "w", "kappa", "table"});
    const auto caps = params.get("caps").value_or("identity");
    if (caps == "identity") return RuleSpec::separable_directional(IdentityCaps{});
    if (caps == "powerLaw") {
      return RuleSpec::separable_directional(PowerLawCaps{parse_weight_choice(params.get("w").value_or("uniform")),
                                                          parse_number(params.get("kappa").value_or("0"))});
    }
    if (caps == "table") {
      const auto table = params.get("table");
      if (!table) throw InputError("caps=table needs table=...");
      return RuleSpec::separable_directional(parse_table(*table));
    }
    throw InputError("unknown cap family '" + caps + "'");
  }
  for (auto kind : {RuleKind::nonCharLiteral, RuleKind::nonCharRepaired, RuleKind::responsiveSFLiteral,
                    RuleKind::responsiveSFRepaired}) {
    if (name == to_string(kind)) {
      parse_params(rest, {});
      return RuleSpec::simple(kind);
    }
  }
  if (name == "patched") {
    const auto fb = rest.find("fallback=");
    if (fb == std::string_view::npos) throw InputError("patched rule needs fallback=<rule>");
    auto head = rest.substr(0, fb);
    if (!head.empty() && head.back() == ';') head.remove_suffix(1);
    const auto params = parse_params(head, {"file", "W"});
    RuleSpec fallback = parse_rule_spec(rest.substr(fb + 9));
    std::vector<WeightVector> set;
    std::string file;
    if (auto f = params.get("file")) {
      file = *f;
      set = load_weight_list(file);
    } else if (auto inline_set = params.get("W")) {
      if (!inline_set->empty()) set = parse_inline_weights(*inline_set);
    }
    auto spec = RuleSpec::patched(std::move(set), std::move(fallback));
    spec.source_file = file;
    return spec;
  }
  throw InputError("unknown rule '" + std::string(name) + "'");
}

std::vector<WeightVector> load_weight_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open weight list '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("weight list '" + path + "' is not valid JSON: " + e.what());
  }
  if (!doc.is_object() || !doc.contains("weights") || !doc["weights"].is_array()) {
    throw InputError("weight list '" + path + "' must be {\"weights\": [[...], ...]}");
  }
  std::vector<WeightVector> out;
  for (const auto& row : doc["weights"]) {
    try {
      out.emplace_back(row.get<std::vector<double>>());
    } catch (const nlohmann::json::exception& e) {
      throw InputError("weight list entry is not a numeric array: " + std::string(e.what()));
    }
  }
  return out;
}

std::string weight_list_json(std::span<const WeightVector> weights) {
  nlohmann::json doc;
  doc["weights"] = nlohmann::json::array();
  for (const auto& w : weights) doc["weights"].push_back(w.values());
  return doc.dump(2) + "\n";
}

}  // namespace claimslab
