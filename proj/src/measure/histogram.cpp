#include "dyadic/measure/histogram.hpp"

#include "dyadic/core/errors.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

namespace dyadic {

DyadicHistogram::DyadicHistogram(unsigned resolution, std::vector<double> mass) : m_(resolution), mass_(std::move(mass)) {
  if (mass_.size() != (std::size_t{1} << m_)) throw DomainError("DyadicHistogram: bin count must be 2^m");
}

DyadicHistogram DyadicHistogram::uniform(unsigned resolution) {
  const std::size_t n = std::size_t{1} << resolution;
  return {resolution, std::vector<double>(n, 1.0 / static_cast<double>(n))};
}

DyadicHistogram DyadicHistogram::from_counts(unsigned resolution, const std::vector<std::uint64_t>& counts) {
  const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
  std::vector<double> mass(counts.size());
  for (std::size_t k = 0; k < counts.size(); ++k) mass[k] = total > 0 ? static_cast<double>(counts[k]) / total : 0.0;
  return {resolution, std::move(mass)};
}

double DyadicHistogram::total() const { return std::accumulate(mass_.begin(), mass_.end(), 0.0); }

DyadicHistogram DyadicHistogram::coarsen(unsigned target) const {
  if (target > m_) throw ResolutionError("coarsen: target resolution exceeds the histogram's");
  const std::size_t group = std::size_t{1} << (m_ - target);
  std::vector<double> out(std::size_t{1} << target, 0.0);
  for (std::size_t k = 0; k < mass_.size(); ++k) out[k / group] += mass_[k];
  return {target, std::move(out)};
}

double DyadicHistogram::prefix_mass(const Word& sigma) const {
  if (sigma.depth() > m_) throw ResolutionError("prefix_mass: word longer than the resolution");
  const std::size_t shift = m_ - sigma.depth();
  const std::size_t first = static_cast<std::size_t>(sigma.value_u64()) << shift;
  double s = 0.0;
  for (std::size_t k = first; k < first + (std::size_t{1} << shift); ++k) s += mass_[k];
  return s;
}

DyadicHistogram DyadicHistogram::doubling_pushforward() const {
  if (m_ == 0) throw ResolutionError("doubling_pushforward: needs resolution >= 1");
  const std::size_t half = mass_.size() / 2;
  std::vector<double> out(half, 0.0);
  for (std::size_t k = 0; k < mass_.size(); ++k) out[k % half] += mass_[k];
  return {m_ - 1, std::move(out)};
}

double total_variation(const DyadicHistogram& a, const DyadicHistogram& b) {
  if (a.resolution() != b.resolution()) throw ResolutionError("total_variation: resolutions differ");
  double s = 0.0;
  for (std::size_t k = 0; k < a.bins(); ++k) s += std::fabs(a[k] - b[k]);
  return 0.5 * s;
}

double tv_to_uniform(const DyadicHistogram& h) {
  const double u = 1.0 / static_cast<double>(h.bins());
  double s = 0.0;
  for (std::size_t k = 0; k < h.bins(); ++k) s += std::fabs(h[k] - u);
  return 0.5 * s;
}

void write_histogram_csv(std::ostream& os, const DyadicHistogram& h) {
  os << "bin_index,left_endpoint,mass,density,bit_changes\n";
  char buf[160];
  const unsigned m = h.resolution();
  for (std::size_t k = 0; k < h.bins(); ++k) {
    // Bit changes along the m-digit expansion of k / 2^m.
    const std::uint64_t x = k;
    const int changes = m > 1 ? std::popcount((x ^ (x >> 1)) & ((std::uint64_t{1} << (m - 1)) - 1)) : 0;
    std::snprintf(buf, sizeof buf, "%zu,%zu/2^%u,%.17g,%.17g,%d\n", k, k, m, h[k], std::ldexp(h[k], static_cast<int>(m)),
                  changes);
    os << buf;
  }
}

}  // namespace dyadic
