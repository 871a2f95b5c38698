#pragma once

#include "dyadic/core/word.hpp"
#include "dyadic/dirichlet/layered.hpp"

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace dyadic {

/// esc_n: probability of reaching the root before depth n, on the wrapped
/// graph truncated at depth n. Values are 1 at the root and 0 at depth n.
struct CrestField {
  unsigned n = 0;
  double tol = 0.0;
  double residual = 0.0;
  std::uint64_t sweeps = 0;
  std::vector<double> values;  // layered, depths 0..n

  double value(unsigned depth, std::uint64_t v) const { return values[layer_index(depth, v)]; }
  double value(const Word& w) const;
  std::vector<double> level(unsigned k) const;
};

/// Requires 2 <= n <= 22. A warm start from the n - 1 field speeds up the
/// solve; values below depth n - 1 start at zero.
CrestField solve_crest(unsigned n, const DirichletOptions& opt = {}, const CrestField* warm = nullptr);

/// Level k of the field rescaled to sum to 1. Throws DegenerateLevel.
std::vector<double> normalize_level(const CrestField& f, unsigned k);

struct Extrapolation {
  double limit = 0.0;
  double slope = 0.0;  // b in s_n = limit - b 2^-n
  double rms_residual = 0.0;
  double max_residual = 0.0;
  std::size_t window = 0;
  bool fit_warning = false;
  std::string warning;
};

/// Least-squares fit of s_n = s_inf - b 2^-n over the trailing `window`
/// terms of (n, s_n). Needs at least 4 terms; non-monotone trailing terms set
/// the warning flag instead of failing.
Extrapolation extrapolate_ratio2(const std::vector<std::pair<int, double>>& seq, std::size_t window = 14);

enum class ConvertDirection { EscToP3, P3ToEsc };

/// esc(0) = 3(1 - p3)/(3 + p3) and its inverse, which has the same form.
double esc_p3_convert(double x, ConvertDirection dir);

struct CrestLevel {
  unsigned n = 0;
  std::uint64_t sweeps = 0;
  double residual = 0.0;
  std::array<double, 2> raw1{};   // esc_n(0), esc_n(1)
  std::array<double, 2> norm1{};  // level 1 normalized
  std::array<double, 4> norm2{};  // level 2 normalized (n >= 3), order 00, 01, 10, 11
};

struct CrestPipeline {
  std::vector<CrestLevel> levels;
  Extrapolation esc0;
  Extrapolation esc1;
  Extrapolation raw_sum;  // esc_n(0) + esc_n(1), not normalized
  std::array<Extrapolation, 4> esc2;
  double p3 = 0.0;
  CrestField last;
};

/// Solves for n = 2..max_depth with warm starts, normalizes levels 1 and 2,
/// and extrapolates each sequence over the trailing window.
CrestPipeline run_crest_pipeline(unsigned max_depth, const DirichletOptions& opt = {}, std::size_t window = 14);

/// CSV columns depth, label, value, normalized_value for depths < min(n, max_depth + 1).
void write_crest_csv(std::ostream& os, const CrestField& f, unsigned max_depth);

}  // namespace dyadic
