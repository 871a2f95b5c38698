#include "dyadic/measure/harmonic.hpp"

#include "dyadic/core/errors.hpp"
#include "dyadic/core/parallel.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

namespace dyadic {

HarmonicHistogram harmonic_histogram(const IncrementLaw& law, unsigned terms, unsigned resolution, unsigned threads) {
  if (resolution > terms) throw ResolutionError("harmonic_histogram: resolution exceeds the number of terms");
  if (terms > 28) throw ResolutionError("harmonic_histogram: internal grid too large");
  const int h = law.half();
  // Support split by parity, so each output point visits only matching z.
  std::vector<std::pair<int, double>> by_parity[2];
  for (int z = -h; z <= h; ++z) {
    if (law.at(z) != 0.0) by_parity[((z % 2) + 2) % 2].emplace_back(z, law.at(z));
  }
  std::vector<double> cur{1.0};  // law of the empty sum on the 2^0 grid
  for (unsigned k = 1; k <= terms; ++k) {
    const std::size_t grid = std::size_t{1} << k;
    const std::size_t mask = grid - 1;
    std::vector<double> next(grid, 0.0);
    // Adding the finest term: x = z 2^-k + y with y on the 2^-(k-1) grid.
    parallel_chunks(grid, 1 << 14, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
      for (std::size_t j = begin; j < end; ++j) {
        double acc = 0.0;
        for (const auto& [z, w] : by_parity[j & 1U]) {
          const std::size_t t = (j - static_cast<std::size_t>(static_cast<std::ptrdiff_t>(z))) & mask;
          acc += w * cur[t >> 1];
        }
        next[j] = acc;
      }
    });
    cur.swap(next);
  }
  HarmonicHistogram out;
  out.terms = terms;
  out.histogram = DyadicHistogram(terms, std::move(cur)).coarsen(resolution);
  out.tail_bound = law.abs_mean() * std::ldexp(1.0, -static_cast<int>(terms));
  return out;
}

DyadicHistogram dual_harmonic_exact(unsigned resolution) { return DyadicHistogram::uniform(resolution); }

std::vector<double> dual_chain_step(const std::vector<double>& p, unsigned L) {
  const std::size_t n = std::size_t{1} << L;
  if (p.size() != n) throw DomainError("dual_chain_step: vector size must be 2^L");
  const std::size_t mask = n - 1;
  const std::size_t top = n >> 1;
  std::vector<double> q(n, 0.0);
  for (std::size_t s = 0; s < n; ++s) {
    const double w = p[s] / 5.0;
    q[(s + 1) & mask] += w;
    q[(s - 1) & mask] += w;
    q[s >> 1] += 0.5 * w;
    q[(s >> 1) | top] += 0.5 * w;
    q[(2 * s) & mask] += w;
    q[(2 * s + 1) & mask] += w;
  }
  return q;
}

double dual_stationary_invariance_check(unsigned L) {
  if (L < 1 || L > 16) throw DomainError("dual_stationary_invariance_check: L must lie in [1, 16]");
  const std::size_t n = std::size_t{1} << L;
  const std::vector<double> u(n, 1.0 / static_cast<double>(n));
  const std::vector<double> q = dual_chain_step(u, L);
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += std::fabs(q[k] - u[k]);
  return s;
}

GMeasureProfile g_profile(const DyadicHistogram& h) {
  if (h.resolution() < 8) throw ResolutionError("g_profile: resolution must be >= 8");
  const std::size_t n = h.bins();
  const std::size_t half = n / 2;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  GMeasureProfile p;
  p.resolution = h.resolution();
  p.g.assign(n, nan);
  for (std::size_t k = 0; k < n; ++k) {
    const double den = h[k] + h[(k + half) % n];
    if (den > 0) {
      p.g[k] = h[k] / den;
      if (h[k] > 0) p.entropy -= h[k] * std::log2(p.g[k]);
    } else {
      p.flagged.push_back(k);
    }
  }
  p.derivative.assign(n - 1, nan);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    p.derivative[k] = std::ldexp(p.g[k + 1] - p.g[k], static_cast<int>(p.resolution));
  }
  return p;
}

void write_g_profile_csv(std::ostream& os, const GMeasureProfile& p) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "# h=%.17g\n", p.entropy);
  os << buf << "bin_index,g,derivative\n";
  for (std::size_t k = 0; k < p.g.size(); ++k) {
    const double d = k < p.derivative.size() ? p.derivative[k] : std::numeric_limits<double>::quiet_NaN();
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", k, p.g[k], d);
    os << buf;
  }
}

TwoBitStats two_bit_statistics(const DyadicHistogram& h, double error) {
  if (h.resolution() < 2) throw ResolutionError("two_bit_statistics: resolution must be >= 2");
  const DyadicHistogram q = h.coarsen(2);
  TwoBitStats s;
  s.m00 = q[0];
  s.m01 = q[1];
  s.m10 = q[2];
  s.m11 = q[3];
  s.excess = s.m00 + s.m11 - 0.5;
  s.error = error;
  return s;
}

std::vector<std::pair<unsigned, double>> singularity_report(const DyadicHistogram& h, unsigned lo, unsigned hi) {
  if (hi > h.resolution() || lo > hi) throw ResolutionError("singularity_report: invalid resolution range");
  std::vector<std::pair<unsigned, double>> out;
  for (unsigned m = lo; m <= hi; ++m) out.emplace_back(m, tv_to_uniform(h.coarsen(m)));
  return out;
}

nlohmann::json singularity_json(const std::vector<std::pair<unsigned, double>>& report) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [m, tv] : report) j[std::to_string(m)] = tv;
  return j;
}

namespace {

void check_length(const Word& s, const Word& sigma) {
  const double need = 1e4 * std::ldexp(1.0, static_cast<int>(sigma.depth()));
  if (static_cast<double>(s.depth()) < need) throw DomainError("substring_density: string too short for the pattern");
}

bool match_at(const Word& s, const Word& sigma, std::size_t i) {
  for (std::size_t j = 0; j < sigma.depth(); ++j) {
    if (s.bit(i + j) != sigma.bit(j)) return false;
  }
  return true;
}

}  // namespace

SubstringDensity substring_density(const Word& s, const Word& sigma) {
  check_length(s, sigma);
  SubstringDensity d;
  d.windows = s.depth() - sigma.depth() + 1;
  for (std::size_t i = 0; i < d.windows; ++i) d.matches += match_at(s, sigma, i);
  d.frequency = static_cast<double>(d.matches) / static_cast<double>(d.windows);
  return d;
}

Estimate substring_density_estimate(const Word& s, const Word& sigma, unsigned batches) {
  check_length(s, sigma);
  batches = std::max(batches, 2U);
  const std::size_t windows = s.depth() - sigma.depth() + 1;
  const std::size_t per = windows / batches;
  Estimate e;
  for (unsigned b = 0; b < batches; ++b) {
    std::uint64_t hits = 0;
    for (std::size_t i = b * per; i < (b + 1) * per; ++i) hits += match_at(s, sigma, i);
    e.add(static_cast<double>(hits) / static_cast<double>(per));
  }
  return e;
}

}  // namespace dyadic
