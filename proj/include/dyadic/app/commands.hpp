#pragma once

#include "dyadic/app/config.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace dyadic::app {

enum ExitCode : int { Success = 0, CheckFailure = 1, UsageError = 2, SolverFailure = 3 };

struct RunResult {
  std::vector<std::string> files;  // relative to cfg.out, manifest last
  nlohmann::json summary;
  int exit_code = Success;
};

/// Runs one subcommand, writes its outputs and manifest.json into cfg.out.
/// Library exceptions propagate; see exit_code_for.
RunResult run(const ExperimentConfig& cfg);

/// Maps an exception escaping run() to an exit code.
int exit_code_for(const std::exception& e);

}  // namespace dyadic::app
