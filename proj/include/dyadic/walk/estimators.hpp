#pragma once

#include "dyadic/core/dyadic_rational.hpp"
#include "dyadic/core/word.hpp"
#include "dyadic/lattice/graphs.hpp"
#include "dyadic/walk/estimate.hpp"
#include "dyadic/walk/walk.hpp"

#include <boost/rational.hpp>

#include <cstdint>
#include <vector>

namespace dyadic {

struct LevelRecord {
  std::size_t level = 0;
  std::uint64_t time = 0;  // T_level
  Word vertex;             // X at T_level
  DyadicRational position;
  /// Change in position since the previous level (since the start for the first).
  DyadicRational increment;
  /// Moves M_{T_level + 1} ... M_{T_{level + 1}}; empty for the last level.
  std::vector<Move> segment;
};

struct LeavingRecord {
  std::size_t target_level = 0;
  std::size_t confirmation = 0;
  std::uint64_t steps = 0;
  DyadicRational start_position;
  std::vector<LevelRecord> levels;
};

/// Runs the primal walk until it reaches depth n + c, then reads off the
/// leaving times T_k (last visit to depth k) for levels from the start depth
/// to n. Throws BudgetExceeded if depth n + c is not reached within `budget`.
LeavingRecord run_with_leaving_times(WalkState s, std::size_t n, std::size_t c = 40,
                                     std::uint64_t budget = 10'000'000);

struct WalkOptions {
  std::uint64_t seed = 1;
  std::size_t confirmation = 40;
  std::uint64_t budget = 10'000'000;
  unsigned threads = 1;
};

struct LeavingDistribution {
  std::size_t n = 0;
  std::uint64_t samples = 0;
  std::uint64_t budget_exceeded = 0;
  /// counts[k][v]: walks with X_{T_k} equal to the depth-k word of value v.
  std::vector<std::vector<std::uint64_t>> counts;
  /// gaps[k][i] = T_{k+1} - T_k for accepted walk i.
  std::vector<std::vector<std::uint64_t>> gaps;

  double mass(std::size_t level, std::uint64_t v) const;
  /// Binomial standard error of mass(level, v).
  double std_error(std::size_t level, std::uint64_t v) const;
};

/// Empirical law of X_{T_k}, k <= n, for walks from the root of the wrapped
/// graph. Walk i uses stream i of the seed. Requires n + c <= 62.
LeavingDistribution leaving_distribution(std::size_t n, std::uint64_t samples, const WalkOptions& opt,
                                         bool record_gaps = false);

enum class P3Graph { Wrapped, GammaA };

struct P3Result {
  Estimate p3;
  Estimate speed;
  /// Paired per-batch difference speed - p3/3, whose mean is zero.
  Estimate speed_gap;
  std::uint64_t steps = 0;
};

/// Fraction of time at degree-3 vertices and depth gained per step, from
/// `walkers` independent walks split into `batches` batch means each.
P3Result estimate_p3(std::uint64_t total_steps, const WalkOptions& opt, P3Graph graph = P3Graph::Wrapped,
                     unsigned walkers = 16, unsigned batches = 25);

/// Depth gained per step of the dual walk.
Estimate estimate_dual_speed(std::uint64_t total_steps, const WalkOptions& opt, unsigned walkers = 16,
                             unsigned batches = 25);

struct HarmonicSample {
  DyadicRational position;  // unwrapped position at T_N
  DyadicRational wrapped;   // position mod 1
  /// Bound on the expected distance to the limiting position.
  double error_bound = 0.0;
  std::uint64_t steps = 0;
};

/// Position when depth N is left for good. `abs_increment_bound` bounds
/// E|2^n K_n|; the reported error is that bound times 2^-N.
HarmonicSample sample_harmonic_point(std::size_t N, std::uint64_t stream, const WalkOptions& opt, bool dual = false,
                                     double abs_increment_bound = 2.0);

struct HarmonicCounts {
  unsigned resolution = 0;
  std::uint64_t samples = 0;
  std::uint64_t budget_exceeded = 0;
  std::vector<std::uint64_t> counts;
};

/// Histogram of harmonic samples at resolution 2^-m.
HarmonicCounts harmonic_sample_counts(unsigned m, std::uint64_t samples, std::size_t N, const WalkOptions& opt,
                                      bool dual = false);

/// Approximate stationary sample: the low `bits` bits of the label reached
/// after a fixed number of steps of the label dynamics, started from the
/// zero dyadic integer. The dual dynamics give the product measure.
Word sample_stationary_bits(std::size_t bits, std::uint64_t stream, const WalkOptions& opt, bool dual = false);
/// Short form with bits <= 64.
Word sample_stationary_string(std::size_t L, std::uint64_t stream, const WalkOptions& opt, bool dual = false);
std::uint64_t stationary_steps(std::size_t bits, bool dual);

using Rational = boost::rational<std::int64_t>;

struct DriftTable {
  Rational degree3;
  Rational degree4_up3;
  Rational degree4_up4;
};

/// E[depth after two steps - depth now] by exhaustive enumeration over every
/// two-move sequence, for each vertex class, checked across many vertices.
DriftTable two_step_drift_table();

/// Fraction of walks with depth(X_{2t}) <= depth(X_0) + 1.
double depth_gain_tail(std::uint64_t t, std::uint64_t samples, const WalkOptions& opt);

}  // namespace dyadic
