#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "polystab/core.hpp"
#include "polystab/datko.hpp"
#include "polystab/gallery.hpp"

namespace polystab {

// Configuration rejection carrying the offending field name.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct InlineAtomConfig {
  std::int64_t id = 0;
  double weight = 0.0;
  State g_value;
  double alpha = 0.0;  // systems only; ignored for measure overrides
};

struct SystemConfig {
  std::string gallery_name;  // empty means inline system
  GalleryParams gallery_params;
  int inline_dim = 1;
  std::vector<InlineAtomConfig> inline_atoms;

  bool is_inline() const { return gallery_name.empty(); }
};

struct MeasureConfig {
  enum class Kind { system_default, finite_discrete, uniform_sampler };
  Kind kind = Kind::system_default;
  std::vector<InlineAtomConfig> atoms;  // finite_discrete override
  std::size_t budget = 100000;          // Monte Carlo budget for samplers
};

struct SequenceConfig {
  double exponent = 1.0;  // t_j = j^exponent
  std::optional<SabParams> envelope;

  SequenceSpec build() const {
    SequenceSpec seq = power_sequence(exponent);
    if (envelope) seq.sab = *envelope;
    return seq;
  }
};

struct LawsConfig {
  std::size_t triples = 2000;
  double tol = 1e-9;
  double span = 100.0;
};

struct ClassHConfig {
  std::vector<double> multipliers = {4.0, 16.0, 64.0, 256.0};
  std::int64_t inner_min = 1;
  std::int64_t inner_max = 100;
};

struct AnalysisConfig {
  SystemConfig system;
  MeasureConfig measure;
  std::uint64_t seed = 20240801;
  std::vector<std::string> observables = {"default"};
  std::vector<double> s_grid = default_s_grid();
  std::vector<double> t_grid = default_t_grid();
  std::vector<double> fit_t_grid = default_fit_grid();
  double discrete_horizon = 1e5;
  double continuous_horizon = 4e6;
  double space_p = 1.0;
  double convergence_tol = 1e-4;
  SequenceConfig sequence;
  double injectivity_eps = 1e-6;
  LawsConfig laws;
  ClassHConfig class_h;
  std::vector<std::string> analyses = {"laws", "growth-fit", "classify"};
  bool strict = false;
};

inline const std::vector<std::string>& known_analyses() {
  static const std::vector<std::string> kNames = {
      "laws",       "growth-fit", "datko-stability", "datko-instability",
      "certificates", "classify", "class-h"};
  return kNames;
}

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& obj, const std::string& where,
                                std::initializer_list<const char*> known) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ConfigError(where.empty() ? key : where + "." + key, "unknown field");
  }
}

inline double number_at(const nlohmann::json& obj, const char* key, const std::string& where,
                        double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) throw ConfigError(where + "." + key, "must be a number");
  return obj[key].get<double>();
}

inline std::vector<double> grid_field(const nlohmann::json& v, const std::string& where) {
  if (v.is_array()) {
    std::vector<double> out;
    for (const auto& x : v) {
      if (!x.is_number()) throw ConfigError(where, "grid entries must be numbers");
      out.push_back(x.get<double>());
    }
    return out;
  }
  if (v.is_object()) {
    reject_unknown_keys(v, where, {"min", "max", "points"});
    const double lo = number_at(v, "min", where, 1.0);
    const double hi = number_at(v, "max", where, 1000.0);
    const double pts = number_at(v, "points", where, 25.0);
    if (!(lo > 0.0) || !(hi > lo)) throw ConfigError(where, "need 0 < min < max");
    if (!(pts >= 2.0) || pts != std::floor(pts))
      throw ConfigError(where, "points must be an integer >= 2");
    return geometric_grid(lo, hi, static_cast<std::size_t>(pts));
  }
  throw ConfigError(where, "must be an array of numbers or {min, max, points}");
}

inline std::vector<InlineAtomConfig> atoms_field(const nlohmann::json& arr,
                                                 const std::string& where, bool with_alpha) {
  if (!arr.is_array() || arr.empty()) throw ConfigError(where, "must be a non-empty array");
  std::vector<InlineAtomConfig> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& a = arr[i];
    const std::string slot = where + "[" + std::to_string(i) + "]";
    if (!a.is_object()) throw ConfigError(slot, "must be an object");
    if (with_alpha)
      reject_unknown_keys(a, slot, {"id", "weight", "g_value", "alpha"});
    else
      reject_unknown_keys(a, slot, {"id", "weight", "g_value"});
    InlineAtomConfig atom;
    if (!a.contains("id") || !a["id"].is_number_integer())
      throw ConfigError(slot + ".id", "must be an integer");
    atom.id = a["id"].get<std::int64_t>();
    if (!a.contains("weight") || !a["weight"].is_number())
      throw ConfigError(slot + ".weight", "must be a number");
    atom.weight = a["weight"].get<double>();
    if (!a.contains("g_value") || !a["g_value"].is_array() || a["g_value"].empty())
      throw ConfigError(slot + ".g_value", "must be a non-empty array of numbers");
    for (const auto& c : a["g_value"]) {
      if (!c.is_number()) throw ConfigError(slot + ".g_value", "must contain numbers");
      atom.g_value.push_back(c.get<double>());
    }
    atom.alpha = with_alpha ? number_at(a, "alpha", slot, 0.0) : 0.0;
    out.push_back(std::move(atom));
  }
  return out;
}

}  // namespace detail

// Parses and validates a configuration document; throws ConfigError naming
// the offending field.
inline AnalysisConfig parse_config(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("config", "document must be a JSON object");
  detail::reject_unknown_keys(
      doc, "",
      {"system", "measure", "seed", "observables", "s_grid", "t_grid", "fit_t_grid", "horizon",
       "space", "sequence", "injectivity", "laws", "class_h", "analyses", "strict"});

  AnalysisConfig cfg;

  if (!doc.contains("system") || !doc["system"].is_object())
    throw ConfigError("system", "required object");
  const auto& sys = doc["system"];
  detail::reject_unknown_keys(sys, "system", {"gallery", "params", "inline"});
  if (sys.contains("gallery") == sys.contains("inline"))
    throw ConfigError("system", "exactly one of 'gallery' or 'inline' is required");
  if (sys.contains("gallery")) {
    if (!sys["gallery"].is_string()) throw ConfigError("system.gallery", "must be a string");
    cfg.system.gallery_name = sys["gallery"].get<std::string>();
    const auto names = gallery_names();
    if (std::find(names.begin(), names.end(), cfg.system.gallery_name) == names.end())
      throw ConfigError("system.gallery", "unknown gallery system '" + cfg.system.gallery_name +
                                              "'");
    if (sys.contains("params")) {
      detail::reject_unknown_keys(sys["params"], "system.params", {"levels"});
      const double levels = detail::number_at(sys["params"], "levels", "system.params", 8.0);
      if (!(levels >= 1.0) || levels != std::floor(levels))
        throw ConfigError("system.params.levels", "must be an integer >= 1");
      cfg.system.gallery_params.levels = static_cast<int>(levels);
    }
  } else {
    const auto& inl = sys["inline"];
    if (!inl.is_object()) throw ConfigError("system.inline", "must be an object");
    detail::reject_unknown_keys(inl, "system.inline", {"dim", "atoms"});
    const double dim = detail::number_at(inl, "dim", "system.inline", 1.0);
    if (!(dim >= 1.0) || dim != std::floor(dim))
      throw ConfigError("system.inline.dim", "must be an integer >= 1");
    cfg.system.inline_dim = static_cast<int>(dim);
    if (!inl.contains("atoms")) throw ConfigError("system.inline.atoms", "required");
    cfg.system.inline_atoms = detail::atoms_field(inl["atoms"], "system.inline.atoms", true);
    for (std::size_t i = 0; i < cfg.system.inline_atoms.size(); ++i)
      if (cfg.system.inline_atoms[i].id != static_cast<std::int64_t>(i))
        throw ConfigError("system.inline.atoms",
                          "atom ids must be 0..n-1 in order (they index the carrier)");
    double total = 0.0;
    for (const auto& a : cfg.system.inline_atoms) {
      if (!(a.weight >= 0.0)) throw ConfigError("system.inline.atoms", "weights must be >= 0");
      if (static_cast<int>(a.g_value.size()) != cfg.system.inline_dim)
        throw ConfigError("system.inline.atoms", "g_value length must equal dim");
      if (!(a.alpha >= 0.0)) throw ConfigError("system.inline.atoms", "alpha must be >= 0");
      total += a.weight;
    }
    if (std::abs(total - 1.0) > 1e-12)
      throw ConfigError("system.inline.atoms", "weights must sum to 1");
  }

  if (doc.contains("measure")) {
    const auto& m = doc["measure"];
    if (!m.is_object()) throw ConfigError("measure", "must be an object");
    detail::reject_unknown_keys(m, "measure", {"kind", "atoms", "budget"});
    const std::string kind = m.contains("kind") ? m["kind"].get<std::string>() : "default";
    if (kind == "default")
      cfg.measure.kind = MeasureConfig::Kind::system_default;
    else if (kind == "finite-discrete")
      cfg.measure.kind = MeasureConfig::Kind::finite_discrete;
    else if (kind == "uniform-sampler")
      cfg.measure.kind = MeasureConfig::Kind::uniform_sampler;
    else
      throw ConfigError("measure.kind",
                        "must be 'default', 'finite-discrete', or 'uniform-sampler'");
    if (cfg.measure.kind == MeasureConfig::Kind::finite_discrete) {
      if (!m.contains("atoms")) throw ConfigError("measure.atoms", "required for finite-discrete");
      cfg.measure.atoms = detail::atoms_field(m["atoms"], "measure.atoms", false);
      for (std::size_t i = 0; i < cfg.measure.atoms.size(); ++i)
        if (cfg.measure.atoms[i].id != static_cast<std::int64_t>(i))
          throw ConfigError("measure.atoms",
                            "atom ids must be 0..n-1 in order and cover the system carrier");
      double total = 0.0;
      for (const auto& a : cfg.measure.atoms) {
        if (!(a.weight >= 0.0)) throw ConfigError("measure.atoms", "weights must be >= 0");
        total += a.weight;
      }
      if (std::abs(total - 1.0) > 1e-12)
        throw ConfigError("measure.atoms", "weights must sum to 1");
    } else if (m.contains("atoms")) {
      throw ConfigError("measure.atoms", "only valid with kind 'finite-discrete'");
    }
    const double budget = detail::number_at(m, "budget", "measure", 100000.0);
    if (!(budget >= 1.0) || budget != std::floor(budget))
      throw ConfigError("measure.budget", "must be an integer >= 1");
    cfg.measure.budget = static_cast<std::size_t>(budget);
  }

  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned() && !doc["seed"].is_number_integer())
      throw ConfigError("seed", "must be a non-negative integer");
    const auto s = doc["seed"].get<std::int64_t>();
    if (s < 0) throw ConfigError("seed", "must be a non-negative integer");
    cfg.seed = static_cast<std::uint64_t>(s);
  }

  if (doc.contains("observables")) {
    if (!doc["observables"].is_array() || doc["observables"].empty())
      throw ConfigError("observables", "must be a non-empty array of names");
    cfg.observables.clear();
    for (const auto& o : doc["observables"]) {
      if (!o.is_string()) throw ConfigError("observables", "entries must be strings");
      const std::string name = o.get<std::string>();
      if (name != "default" && name != "uniform" && name != "param")
        throw ConfigError("observables", "unknown observable '" + name +
                                             "' (expected default, uniform, or param)");
      cfg.observables.push_back(name);
    }
  }

  if (doc.contains("s_grid")) {
    cfg.s_grid = detail::grid_field(doc["s_grid"], "s_grid");
    if (cfg.s_grid.empty()) throw ConfigError("s_grid", "must not be empty");
    for (double s : cfg.s_grid)
      if (!(s > 0.0)) throw ConfigError("s_grid", "base times must be positive");
  }
  if (doc.contains("t_grid")) {
    cfg.t_grid = detail::grid_field(doc["t_grid"], "t_grid");
    if (cfg.t_grid.empty()) throw ConfigError("t_grid", "must not be empty");
    for (double t : cfg.t_grid)
      if (!(t >= 1.0)) throw ConfigError("t_grid", "multipliers must be >= 1");
  }
  if (doc.contains("fit_t_grid")) {
    cfg.fit_t_grid = detail::grid_field(doc["fit_t_grid"], "fit_t_grid");
    if (cfg.fit_t_grid.empty()) throw ConfigError("fit_t_grid", "must not be empty");
  }

  if (doc.contains("horizon")) {
    const auto& h = doc["horizon"];
    if (h.is_number()) {
      cfg.discrete_horizon = h.get<double>();
    } else if (h.is_object()) {
      detail::reject_unknown_keys(h, "horizon", {"discrete", "continuous"});
      cfg.discrete_horizon = detail::number_at(h, "discrete", "horizon", cfg.discrete_horizon);
      cfg.continuous_horizon =
          detail::number_at(h, "continuous", "horizon", cfg.continuous_horizon);
    } else {
      throw ConfigError("horizon", "must be a number or {discrete, continuous}");
    }
    if (!(cfg.discrete_horizon >= 2.0))
      throw ConfigError("horizon.discrete", "must be >= 2");
    if (!(cfg.continuous_horizon >= 2.0))
      throw ConfigError("horizon.continuous", "must be >= 2");
  }

  if (doc.contains("space")) {
    const auto& sp = doc["space"];
    if (!sp.is_object()) throw ConfigError("space", "must be an object");
    detail::reject_unknown_keys(sp, "space", {"p", "convergence_tol"});
    cfg.space_p = detail::number_at(sp, "p", "space", 1.0);
    if (!(cfg.space_p > 0.0)) throw ConfigError("space.p", "must be positive");
    cfg.convergence_tol = detail::number_at(sp, "convergence_tol", "space", 1e-4);
    if (!(cfg.convergence_tol > 0.0)) throw ConfigError("space.convergence_tol", "must be positive");
  }

  if (doc.contains("sequence")) {
    const auto& sq = doc["sequence"];
    if (!sq.is_object()) throw ConfigError("sequence", "must be an object");
    detail::reject_unknown_keys(sq, "sequence", {"kind", "exponent", "a", "b"});
    const std::string kind = sq.contains("kind") ? sq["kind"].get<std::string>() : "linear";
    if (kind == "linear")
      cfg.sequence.exponent = 1.0;
    else if (kind == "quadratic")
      cfg.sequence.exponent = 2.0;
    else if (kind == "power")
      cfg.sequence.exponent = detail::number_at(sq, "exponent", "sequence", 1.0);
    else
      throw ConfigError("sequence.kind", "must be 'linear', 'quadratic', or 'power'");
    if (!(cfg.sequence.exponent > 0.0))
      throw ConfigError("sequence.exponent",
                        "bounded time sequences force vanishing means; must be positive");
    if (sq.contains("a") != sq.contains("b"))
      throw ConfigError("sequence", "growth envelope needs both 'a' and 'b'");
    if (sq.contains("a")) {
      SabParams env{detail::number_at(sq, "a", "sequence", 1.0),
                    detail::number_at(sq, "b", "sequence", 1.0)};
      try {
        env.validate();
      } catch (const std::invalid_argument& e) {
        throw ConfigError("sequence", e.what());
      }
      cfg.sequence.envelope = env;
    }
  }

  if (doc.contains("injectivity")) {
    const auto& inj = doc["injectivity"];
    if (!inj.is_object()) throw ConfigError("injectivity", "must be an object");
    detail::reject_unknown_keys(inj, "injectivity", {"eps"});
    cfg.injectivity_eps = detail::number_at(inj, "eps", "injectivity", 1e-6);
    if (!(cfg.injectivity_eps > 0.0)) throw ConfigError("injectivity.eps", "must be positive");
  }

  if (doc.contains("laws")) {
    const auto& lw = doc["laws"];
    if (!lw.is_object()) throw ConfigError("laws", "must be an object");
    detail::reject_unknown_keys(lw, "laws", {"triples", "tol", "span"});
    const double triples = detail::number_at(lw, "triples", "laws", 2000.0);
    if (!(triples >= 1.0) || triples != std::floor(triples))
      throw ConfigError("laws.triples", "must be an integer >= 1");
    cfg.laws.triples = static_cast<std::size_t>(triples);
    cfg.laws.tol = detail::number_at(lw, "tol", "laws", 1e-9);
    if (!(cfg.laws.tol > 0.0)) throw ConfigError("laws.tol", "must be positive");
    cfg.laws.span = detail::number_at(lw, "span", "laws", 100.0);
    if (!(cfg.laws.span > 0.0)) throw ConfigError("laws.span", "must be positive");
  }

  if (doc.contains("class_h")) {
    const auto& ch = doc["class_h"];
    if (!ch.is_object()) throw ConfigError("class_h", "must be an object");
    detail::reject_unknown_keys(ch, "class_h", {"multipliers", "inner_min", "inner_max"});
    if (ch.contains("multipliers")) {
      cfg.class_h.multipliers = detail::grid_field(ch["multipliers"], "class_h.multipliers");
      if (cfg.class_h.multipliers.empty())
        throw ConfigError("class_h.multipliers", "must not be empty");
    }
    const double lo = detail::number_at(ch, "inner_min", "class_h", 1.0);
    const double hi = detail::number_at(ch, "inner_max", "class_h", 100.0);
    if (!(lo >= 1.0) || lo != std::floor(lo) || !(hi >= lo) || hi != std::floor(hi))
      throw ConfigError("class_h", "need integers 1 <= inner_min <= inner_max");
    cfg.class_h.inner_min = static_cast<std::int64_t>(lo);
    cfg.class_h.inner_max = static_cast<std::int64_t>(hi);
  }

  if (doc.contains("analyses")) {
    if (!doc["analyses"].is_array() || doc["analyses"].empty())
      throw ConfigError("analyses", "must be a non-empty array");
    cfg.analyses.clear();
    for (const auto& a : doc["analyses"]) {
      if (!a.is_string()) throw ConfigError("analyses", "entries must be strings");
      const std::string name = a.get<std::string>();
      const auto& known = known_analyses();
      if (std::find(known.begin(), known.end(), name) == known.end())
        throw ConfigError("analyses", "unknown analysis '" + name + "'");
      cfg.analyses.push_back(name);
    }
  }

  if (doc.contains("strict")) {
    if (!doc["strict"].is_boolean()) throw ConfigError("strict", "must be a boolean");
    cfg.strict = doc["strict"].get<bool>();
  }

  // Cross-field checks.
  if (cfg.measure.kind == MeasureConfig::Kind::uniform_sampler) {
    if (cfg.system.is_inline() || cfg.system.gallery_name == "partitioned-decay")
      throw ConfigError("measure.kind",
                        "uniform-sampler needs a fiber-independent system; atom-indexed "
                        "systems have no meaning off their atoms");
    for (const auto& name : cfg.observables)
      if (name == "default")
        throw ConfigError("observables",
                          "'default' reads atoms; use 'param' or 'uniform' with a sampler");
  }
  return cfg;
}

inline AnalysisConfig parse_config_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(doc);
}

// Normalized echo of the effective configuration, embedded in every report.
inline nlohmann::ordered_json config_to_json(const AnalysisConfig& cfg) {
  nlohmann::ordered_json j;
  if (!cfg.system.is_inline()) {
    j["system"] = {{"gallery", cfg.system.gallery_name}};
    if (cfg.system.gallery_name == "partitioned-decay")
      j["system"]["params"] = {{"levels", cfg.system.gallery_params.levels}};
  } else {
    nlohmann::ordered_json atoms = nlohmann::ordered_json::array();
    for (const auto& a : cfg.system.inline_atoms)
      atoms.push_back({{"id", a.id}, {"weight", a.weight}, {"g_value", a.g_value},
                       {"alpha", a.alpha}});
    j["system"] = {{"inline", {{"dim", cfg.system.inline_dim}, {"atoms", atoms}}}};
  }
  const char* mkind = cfg.measure.kind == MeasureConfig::Kind::system_default ? "default"
                      : cfg.measure.kind == MeasureConfig::Kind::finite_discrete
                          ? "finite-discrete"
                          : "uniform-sampler";
  j["measure"] = {{"kind", mkind}, {"budget", cfg.measure.budget}};
  if (cfg.measure.kind == MeasureConfig::Kind::finite_discrete) {
    nlohmann::ordered_json atoms = nlohmann::ordered_json::array();
    for (const auto& a : cfg.measure.atoms)
      atoms.push_back({{"id", a.id}, {"weight", a.weight}, {"g_value", a.g_value}});
    j["measure"]["atoms"] = atoms;
  }
  j["seed"] = cfg.seed;
  j["observables"] = cfg.observables;
  j["s_grid"] = cfg.s_grid;
  j["t_grid"] = cfg.t_grid;
  j["fit_t_grid"] = cfg.fit_t_grid;
  j["horizon"] = {{"discrete", cfg.discrete_horizon}, {"continuous", cfg.continuous_horizon}};
  j["space"] = {{"p", cfg.space_p}, {"convergence_tol", cfg.convergence_tol}};
  j["sequence"] = {{"exponent", cfg.sequence.exponent}};
  if (cfg.sequence.envelope)
    j["sequence"]["envelope"] = {{"a", cfg.sequence.envelope->a},
                                 {"b", cfg.sequence.envelope->b}};
  j["injectivity"] = {{"eps", cfg.injectivity_eps}};
  j["laws"] = {{"triples", cfg.laws.triples}, {"tol", cfg.laws.tol}, {"span", cfg.laws.span}};
  j["class_h"] = {{"multipliers", cfg.class_h.multipliers},
                  {"inner_min", cfg.class_h.inner_min},
                  {"inner_max", cfg.class_h.inner_max}};
  j["analyses"] = cfg.analyses;
  j["strict"] = cfg.strict;
  return j;
}

// JSON Schema for the configuration document, printed by the `schema`
// subcommand.
inline const char* config_schema_text() {
  return R"SCHEMA({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "polystab analysis configuration",
  "type": "object",
  "required": ["system"],
  "additionalProperties": false,
  "properties": {
    "system": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "gallery": {
          "type": "string",
          "enum": ["inverse-linear", "linear-growth", "partitioned-decay",
                   "evolution-family-power", "constant-identity"]
        },
        "params": {
          "type": "object",
          "additionalProperties": false,
          "properties": {"levels": {"type": "integer", "minimum": 1}}
        },
        "inline": {
          "type": "object",
          "additionalProperties": false,
          "required": ["atoms"],
          "properties": {
            "dim": {"type": "integer", "minimum": 1},
            "atoms": {
              "type": "array",
              "minItems": 1,
              "items": {
                "type": "object",
                "additionalProperties": false,
                "required": ["id", "weight", "g_value"],
                "properties": {
                  "id": {"type": "integer", "minimum": 0},
                  "weight": {"type": "number", "minimum": 0},
                  "g_value": {"type": "array", "minItems": 1, "items": {"type": "number"}},
                  "alpha": {"type": "number", "minimum": 0}
                }
              }
            }
          }
        }
      },
      "oneOf": [{"required": ["gallery"]}, {"required": ["inline"]}]
    },
    "measure": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "kind": {"type": "string", "enum": ["default", "finite-discrete", "uniform-sampler"]},
        "atoms": {
          "type": "array",
          "minItems": 1,
          "items": {
            "type": "object",
            "additionalProperties": false,
            "required": ["id", "weight", "g_value"],
            "properties": {
              "id": {"type": "integer", "minimum": 0},
              "weight": {"type": "number", "minimum": 0},
              "g_value": {"type": "array", "minItems": 1, "items": {"type": "number"}}
            }
          }
        },
        "budget": {"type": "integer", "minimum": 1}
      }
    },
    "seed": {"type": "integer", "minimum": 0},
    "observables": {
      "type": "array",
      "minItems": 1,
      "items": {"type": "string", "enum": ["default", "uniform", "param"]}
    },
    "s_grid": {"$ref": "#/definitions/grid"},
    "t_grid": {"$ref": "#/definitions/grid"},
    "fit_t_grid": {"$ref": "#/definitions/grid"},
    "horizon": {
      "oneOf": [
        {"type": "number", "minimum": 2},
        {
          "type": "object",
          "additionalProperties": false,
          "properties": {
            "discrete": {"type": "number", "minimum": 2},
            "continuous": {"type": "number", "minimum": 2}
          }
        }
      ]
    },
    "space": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "p": {"type": "number", "exclusiveMinimum": 0},
        "convergence_tol": {"type": "number", "exclusiveMinimum": 0}
      }
    },
    "sequence": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "kind": {"type": "string", "enum": ["linear", "quadratic", "power"]},
        "exponent": {"type": "number", "exclusiveMinimum": 0},
        "a": {"type": "number", "minimum": 1},
        "b": {"type": "number", "minimum": 1}
      }
    },
    "injectivity": {
      "type": "object",
      "additionalProperties": false,
      "properties": {"eps": {"type": "number", "exclusiveMinimum": 0}}
    },
    "laws": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "triples": {"type": "integer", "minimum": 1},
        "tol": {"type": "number", "exclusiveMinimum": 0},
        "span": {"type": "number", "exclusiveMinimum": 0}
      }
    },
    "class_h": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "multipliers": {"$ref": "#/definitions/grid"},
        "inner_min": {"type": "integer", "minimum": 1},
        "inner_max": {"type": "integer", "minimum": 1}
      }
    },
    "analyses": {
      "type": "array",
      "minItems": 1,
      "items": {
        "type": "string",
        "enum": ["laws", "growth-fit", "datko-stability", "datko-instability",
                 "certificates", "classify", "class-h"]
      }
    },
    "strict": {"type": "boolean"}
  },
  "definitions": {
    "grid": {
      "oneOf": [
        {"type": "array", "minItems": 1, "items": {"type": "number"}},
        {
          "type": "object",
          "additionalProperties": false,
          "properties": {
            "min": {"type": "number", "exclusiveMinimum": 0},
            "max": {"type": "number", "exclusiveMinimum": 0},
            "points": {"type": "integer", "minimum": 2}
          }
        }
      ]
    }
  }
})SCHEMA";
}

}  // namespace polystab
