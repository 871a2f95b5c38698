#pragma once

#include "dyadic/app/emit.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace dyadic::app {

const char* code_version();

/// A fully resolved run. `params` holds every numeric and string parameter
/// of the subcommand, keyed by flag name without the leading dashes.
struct ExperimentConfig {
  std::string subcommand;
  std::string mode;  // mc / structure kind, verify scale; empty otherwise
  nlohmann::json params = nlohmann::json::object();
  std::uint64_t seed = 0;
  bool seed_auto = false;
  unsigned threads = 1;
  std::filesystem::path out = "dyadic-out";
  Format format = Format::Csv;

  std::int64_t integer(const std::string& key) const;
  std::uint64_t count(const std::string& key) const;  // rejects negatives
  double real(const std::string& key) const;
  bool flag(const std::string& key) const;
  std::string text(const std::string& key) const;
};

struct ParamSpec {
  std::string name;
  nlohmann::json value;  // default; its JSON type is the parameter's type
  std::string help;
};

const std::vector<std::string>& subcommands();
/// Allowed modes, empty when the subcommand takes none.
const std::vector<std::string>& modes(const std::string& subcommand);
const std::vector<ParamSpec>& param_specs(const std::string& subcommand);
/// Defaults overlaid with `overrides`; unknown keys throw DomainError.
nlohmann::json resolve_params(const std::string& subcommand, const nlohmann::json& overrides);

/// The manifest never holds timings or host details.
nlohmann::json manifest_json(const ExperimentConfig& cfg, const std::vector<std::string>& outputs);

}  // namespace dyadic::app
