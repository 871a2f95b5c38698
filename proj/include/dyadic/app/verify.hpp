#pragma once

#include "json.hpp"

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace dyadic::app {

enum class Scale { Quick, Full };

struct Check {
  std::string name;
  int criterion = 0;
  bool passed = false;
  bool soft = false;
  double measured = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  std::string relation;  // how measured is compared with target
  double runtime = 0.0;  // seconds spent in the check's section
  std::string detail;
};

struct VerifyReport {
  Scale scale = Scale::Quick;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::vector<Check> checks;

  /// True iff every non-soft check passed.
  bool passed() const;
  nlohmann::json to_json() const;
};

struct VerifyOptions {
  Scale scale = Scale::Quick;
  std::uint64_t seed = 7;
  unsigned threads = 1;
  /// Criteria to run, all when empty.
  std::set<int> criteria;
  /// Mutation switch forwarded to every crest solve.
  bool single_root_edge = false;
};

VerifyReport verify(const VerifyOptions& opt);
VerifyReport verify(Scale scale, std::uint64_t seed, unsigned threads);

struct ChiSquare {
  double statistic = 0.0;
  double critical = 0.0;
  std::size_t dof = 0;
  double alpha = 0.0;
  bool passed = false;
  nlohmann::json to_json() const;
};

/// Pearson test of equal cell probabilities at level alpha.
ChiSquare chi_square_uniform(const std::vector<std::uint64_t>& counts, double alpha = 0.001);

}  // namespace dyadic::app
