#pragma once

#include "dyadic/core/word.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace dyadic {

/// Probability masses of the 2^m intervals [k 2^-m, (k+1) 2^-m) of [0, 1).
class DyadicHistogram {
 public:
  DyadicHistogram() = default;
  DyadicHistogram(unsigned resolution, std::vector<double> mass);

  static DyadicHistogram uniform(unsigned resolution);
  /// From raw counts; masses are counts / total.
  static DyadicHistogram from_counts(unsigned resolution, const std::vector<std::uint64_t>& counts);

  unsigned resolution() const { return m_; }
  std::size_t bins() const { return mass_.size(); }
  double operator[](std::size_t k) const { return mass_[k]; }
  const std::vector<double>& masses() const { return mass_; }
  double total() const;

  /// Sums adjacent bins down to the target resolution.
  DyadicHistogram coarsen(unsigned target) const;
  /// Mass of the cylinder of points whose binary expansion starts with sigma.
  double prefix_mass(const Word& sigma) const;
  /// Index of the bin containing 1 - x for x in bin k.
  std::size_t mirror(std::size_t k) const { return mass_.size() - 1 - k; }
  /// Push-forward under x -> 2x mod 1, at resolution m - 1.
  DyadicHistogram doubling_pushforward() const;

 private:
  unsigned m_ = 0;
  std::vector<double> mass_;
};

/// Half the L1 distance between two histograms at the same resolution.
double total_variation(const DyadicHistogram& a, const DyadicHistogram& b);
double tv_to_uniform(const DyadicHistogram& h);

/// CSV columns bin_index, left_endpoint ("k/2^m"), mass, density, bit_changes.
void write_histogram_csv(std::ostream& os, const DyadicHistogram& h);

}  // namespace dyadic
