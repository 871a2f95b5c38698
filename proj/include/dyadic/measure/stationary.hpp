#pragma once

#include "dyadic/measure/histogram.hpp"

#include <cstdint>
#include <vector>

namespace dyadic {

/// What enters at the top of the window when the last bit is removed.
enum class LeadingBit { Zero, Uniform };

/// Stationary law of the walk's label dynamics restricted to the last L
/// bits. State s holds a_{-L+1} ... a_0 with a_0 as its units bit.
struct StationaryChain {
  unsigned L = 0;
  LeadingBit policy = LeadingBit::Zero;
  std::vector<double> pi;
  std::uint64_t iterations = 0;
  double last_change = 0.0;  // L1 distance between the final two iterates

  /// Mass of odd states, i.e. of degree-3 labels.
  double implied_p3() const;
  /// Law of the low k bits.
  std::vector<double> marginal(unsigned k) const;
  /// Histogram of x = 0.a_0 a_{-1} ... a_{-L+1}.
  DyadicHistogram histogram() const;
};

/// One application of the chain's kernel to a distribution on 2^L states.
std::vector<double> chain_step(const std::vector<double>& p, unsigned L, LeadingBit policy = LeadingBit::Zero,
                               unsigned threads = 1);

/// Power iteration from the uniform vector until successive iterates differ
/// by at most tol in L1. Requires 2 <= L <= 20; throws SolverError.
StationaryChain truncated_stationary(unsigned L, double tol = 1e-13, LeadingBit policy = LeadingBit::Zero,
                                     unsigned threads = 1, std::uint64_t max_iterations = 1'000'000);

}  // namespace dyadic
