#pragma once

#include "dyadic/core/word.hpp"
#include "dyadic/dirichlet/k1_law.hpp"
#include "dyadic/measure/histogram.hpp"
#include "dyadic/walk/estimate.hpp"

#include "json.hpp"

#include <iosfwd>
#include <utility>
#include <vector>

namespace dyadic {

struct HarmonicHistogram {
  DyadicHistogram histogram;
  unsigned terms = 0;
  /// E|sum over n > terms of Z_n 2^-n|, bounded by E|Z| 2^-terms.
  double tail_bound = 0.0;
};

/// Law of sum_{n=1}^{terms} Z_n / 2^n mod 1 for IID Z_n with the given law,
/// by exact convolution on the 2^-terms grid, aggregated to 2^-resolution.
HarmonicHistogram harmonic_histogram(const IncrementLaw& law, unsigned terms = 22, unsigned resolution = 14,
                                     unsigned threads = 1);

/// The dual walk's harmonic measure is uniform.
DyadicHistogram dual_harmonic_exact(unsigned resolution);

/// One step of the dual label chain on 2^L states: +1, -1, drop the last bit
/// with a fair new leading bit, append 0, append 1, each with weight 1/5.
std::vector<double> dual_chain_step(const std::vector<double>& p, unsigned L);
/// L1 distance between the uniform vector and its image under one step.
double dual_stationary_invariance_check(unsigned L);

struct GMeasureProfile {
  unsigned resolution = 0;
  std::vector<double> g;  // NaN on flagged bins
  std::vector<std::size_t> flagged;
  double entropy = 0.0;
  /// (g[k+1] - g[k]) 2^m; NaN next to flagged bins.
  std::vector<double> derivative;
};

/// g on each bin as mass(I) / (mass(I) + mass(I + 1/2)) and h = -sum mass log2 g.
GMeasureProfile g_profile(const DyadicHistogram& h);
/// CSV: a "# h=..." header line, then bin_index, g, derivative.
void write_g_profile_csv(std::ostream& os, const GMeasureProfile& p);

struct TwoBitStats {
  double m00 = 0, m01 = 0, m10 = 0, m11 = 0;
  double excess = 0;  // m00 + m11 - 1/2
  double error = 0;   // numerical error estimate carried from the caller
};

TwoBitStats two_bit_statistics(const DyadicHistogram& h, double error = 0.0);

/// TV distance to uniform for each resolution in [lo, hi], by coarsening.
std::vector<std::pair<unsigned, double>> singularity_report(const DyadicHistogram& h, unsigned lo = 6,
                                                            unsigned hi = 14);
nlohmann::json singularity_json(const std::vector<std::pair<unsigned, double>>& report);

struct SubstringDensity {
  double frequency = 0.0;
  std::uint64_t matches = 0;
  std::uint64_t windows = 0;
};

/// Sliding-window frequency of sigma in s. Requires |s| >= 10^4 2^|sigma|.
SubstringDensity substring_density(const Word& s, const Word& sigma);
/// Same frequency with a batch-means standard error over contiguous blocks.
Estimate substring_density_estimate(const Word& s, const Word& sigma, unsigned batches = 100);

}  // namespace dyadic
