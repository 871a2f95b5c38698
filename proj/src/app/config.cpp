#include "dyadic/app/config.hpp"

#include "dyadic/core/errors.hpp"

#include <map>

#ifndef DYADIC_VERSION
#define DYADIC_VERSION "0.0.0"
#endif

namespace dyadic::app {

const char* code_version() { return DYADIC_VERSION; }

namespace {

const nlohmann::json& lookup(const nlohmann::json& params, const std::string& key) {
  const auto it = params.find(key);
  if (it == params.end()) throw DomainError("missing parameter '" + key + "'");
  return *it;
}

using Specs = std::vector<ParamSpec>;

Specs dirichlet_specs() {
  return {{"tol", 1e-13, "max-norm residual tolerance"}, {"max-sweeps", 200000, "sweep limit"}};
}

Specs k1_specs() {
  Specs s{{"inner", 6, "depth of the absorbing level"},
          {"target", 7, "depth whose vertices start the walk"},
          {"outer", 19, "truncation depth"},
          {"symmetrize", true, "average the law with its reflection"}};
  for (auto& d : dirichlet_specs()) s.push_back(d);
  return s;
}

std::map<std::string, Specs> build_specs() {
  std::map<std::string, Specs> m;
  m["crest"] = {{"max-depth", 20, "largest truncation depth n"},
                {"window", 14, "trailing terms used by the extrapolation"},
                {"dump-depth", 10, "deepest level written to the field table"}};
  for (auto& d : dirichlet_specs()) m["crest"].push_back(d);

  m["stationary-chain"] = {{"length", 12, "number of low bits L"},
                           {"tol", 1e-13, "L1 change between iterates"},
                           {"max-iterations", 1000000, "iteration limit"},
                           {"leading", "zero", "bit entering on removal: zero or uniform"},
                           {"trend-from", 8, "first L of the trend table"},
                           {"trend-to", 16, "last L of the trend table; below trend-from disables it"},
                           {"trend-bits", 6, "width of the fixed low-bit marginal compared in the trend table"}};

  m["k1-law"] = k1_specs();
  m["harmonic"] = {{"terms", 22, "number of convolved increments"},
                   {"resolution", 14, "output resolution m"},
                   {"tv-from", 6, "first resolution of the TV report"},
                   {"tv-to", 14, "last resolution of the TV report"}};
  for (auto& d : k1_specs()) m["harmonic"].push_back(d);

  m["mc"] = {{"steps", 10000000, "total steps for p3, speed and dual-speed"},
             {"walkers", 16, "independent walks sharing the steps"},
             {"batches", 25, "batch means per walker"},
             {"graph", "wrapped", "p3 graph: wrapped or gamma-a"},
             {"samples", 1000000, "walks for leaving and harmonic sampling"},
             {"levels", 2, "deepest leaving level"},
             {"depth", 20, "depth N left for good in harmonic sampling"},
             {"resolution", 8, "histogram resolution for harmonic sampling"},
             {"confirmation", 40, "extra depth confirming a leaving time"},
             {"budget", 10000000, "step budget per walk"},
             {"bits", 1000000, "length of the stationary sample"},
             {"patterns", "0,1,00,01", "comma separated substrings"},
             {"write-sample", false, "also write the stationary sample as text"}};

  m["structure"] = {{"seeds", 100, "number of seeded providers"},
                    {"bits", 64, "root bits read per provider"},
                    {"min-depth", 2, "shallowest depth of the edge window"},
                    {"max-depth", 12, "deepest depth of the edge window"},
                    {"max-offset", 32, "largest |offset| in the edge window"},
                    {"label-bits", 16, "label bits written to the edge dump"}};

  m["verify"] = {};
  return m;
}

const std::map<std::string, Specs>& all_specs() {
  static const auto m = build_specs();
  return m;
}

}  // namespace

std::int64_t ExperimentConfig::integer(const std::string& key) const {
  const auto& v = lookup(params, key);
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d == static_cast<double>(static_cast<std::int64_t>(d))) return static_cast<std::int64_t>(d);
  }
  throw DomainError("parameter '" + key + "' must be an integer");
}

std::uint64_t ExperimentConfig::count(const std::string& key) const {
  const std::int64_t v = integer(key);
  if (v < 0) throw DomainError("parameter '" + key + "' must be non-negative");
  return static_cast<std::uint64_t>(v);
}

double ExperimentConfig::real(const std::string& key) const {
  const auto& v = lookup(params, key);
  if (!v.is_number()) throw DomainError("parameter '" + key + "' must be a number");
  return v.get<double>();
}

bool ExperimentConfig::flag(const std::string& key) const {
  const auto& v = lookup(params, key);
  if (!v.is_boolean()) throw DomainError("parameter '" + key + "' must be a boolean");
  return v.get<bool>();
}

std::string ExperimentConfig::text(const std::string& key) const {
  const auto& v = lookup(params, key);
  if (!v.is_string()) throw DomainError("parameter '" + key + "' must be a string");
  return v.get<std::string>();
}

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> s{"crest", "stationary-chain", "k1-law", "harmonic", "mc", "structure", "verify"};
  return s;
}

const std::vector<std::string>& modes(const std::string& subcommand) {
  static const std::vector<std::string> none;
  static const std::vector<std::string> mc{"p3",         "speed",         "leaving",          "harmonic-sample",
                                           "dual-speed", "dual-harmonic", "stationary-sample"};
  static const std::vector<std::string> structure{"read-bits", "classify", "orient"};
  static const std::vector<std::string> verify{"quick", "full"};
  if (subcommand == "mc") return mc;
  if (subcommand == "structure") return structure;
  if (subcommand == "verify") return verify;
  return none;
}

const std::vector<ParamSpec>& param_specs(const std::string& subcommand) {
  const auto it = all_specs().find(subcommand);
  if (it == all_specs().end()) throw DomainError("unknown subcommand '" + subcommand + "'");
  return it->second;
}

nlohmann::json resolve_params(const std::string& subcommand, const nlohmann::json& overrides) {
  nlohmann::json p = nlohmann::json::object();
  for (const auto& s : param_specs(subcommand)) p[s.name] = s.value;
  for (const auto& [k, v] : overrides.items()) {
    if (!p.contains(k)) throw DomainError("unknown parameter '" + k + "' for " + subcommand);
    p[k] = v;
  }
  return p;
}

nlohmann::json manifest_json(const ExperimentConfig& cfg, const std::vector<std::string>& outputs) {
  nlohmann::json j;
  j["version"] = code_version();
  j["subcommand"] = cfg.subcommand;
  if (!cfg.mode.empty()) j["mode"] = cfg.mode;
  j["params"] = cfg.params;
  j["seed"] = cfg.seed;
  j["seed_auto"] = cfg.seed_auto;
  j["threads"] = cfg.threads;
  j["format"] = to_string(cfg.format);
  j["outputs"] = outputs;
  return j;
}

}  // namespace dyadic::app
