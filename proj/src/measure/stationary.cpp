#include "dyadic/measure/stationary.hpp"

#include "dyadic/core/errors.hpp"
#include "dyadic/core/parallel.hpp"

#include <cmath>
#include <cstdio>

namespace dyadic {

namespace {

constexpr std::size_t state_chunk = 1 << 15;

inline double out_weight(const std::vector<double>& p, std::uint64_t s) { return p[s] / ((s & 1U) ? 3.0 : 4.0); }

}  // namespace

std::vector<double> chain_step(const std::vector<double>& p, unsigned L, LeadingBit policy, unsigned threads) {
  const std::uint64_t n = std::uint64_t{1} << L;
  const std::uint64_t mask = n - 1;
  const std::uint64_t top = n >> 1;
  if (p.size() != n) throw DomainError("chain_step: vector size must be 2^L");
  std::vector<double> q(n);
  // Pull form: each target sums over its predecessors, so targets are independent.
  parallel_chunks(n, state_chunk, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::uint64_t t = begin; t < end; ++t) {
      double acc = out_weight(p, (t - 1) & mask) + out_weight(p, (t + 1) & mask);
      if ((t & 1U) == 0) acc += out_weight(p, t >> 1) + out_weight(p, (t >> 1) + top);
      if (policy == LeadingBit::Zero) {
        if (t < top) acc += out_weight(p, 2 * t);
      } else {
        acc += 0.5 * out_weight(p, 2 * (t & (top - 1)));
      }
      q[t] = acc;
    }
  });
  return q;
}

double StationaryChain::implied_p3() const {
  double s = 0.0;
  for (std::size_t k = 1; k < pi.size(); k += 2) s += pi[k];
  return s;
}

std::vector<double> StationaryChain::marginal(unsigned k) const {
  if (k > L) throw DomainError("StationaryChain::marginal: k exceeds L");
  const std::size_t mask = (std::size_t{1} << k) - 1;
  std::vector<double> out(std::size_t{1} << k, 0.0);
  for (std::size_t s = 0; s < pi.size(); ++s) out[s & mask] += pi[s];
  return out;
}

DyadicHistogram StationaryChain::histogram() const {
  std::vector<double> out(pi.size(), 0.0);
  for (std::size_t s = 0; s < pi.size(); ++s) {
    std::size_t r = 0;
    for (unsigned i = 0; i < L; ++i) r |= ((s >> i) & 1U) << (L - 1 - i);
    out[r] += pi[s];
  }
  return {L, std::move(out)};
}

StationaryChain truncated_stationary(unsigned L, double tol, LeadingBit policy, unsigned threads,
                                     std::uint64_t max_iterations) {
  if (L < 2 || L > 20) throw DomainError("truncated_stationary: L must lie in [2, 20]");
  const std::size_t n = std::size_t{1} << L;
  StationaryChain c;
  c.L = L;
  c.policy = policy;
  c.pi.assign(n, 1.0 / static_cast<double>(n));
  while (true) {
    std::vector<double> q = chain_step(c.pi, L, policy, threads);
    double diff = 0.0;
    for (std::size_t s = 0; s < n; ++s) diff += std::fabs(q[s] - c.pi[s]);
    c.pi.swap(q);
    ++c.iterations;
    c.last_change = diff;
    if (diff <= tol) return c;
    if (c.iterations >= max_iterations) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "truncated_stationary: L1 change %.3e after %llu iterations", diff,
                    static_cast<unsigned long long>(c.iterations));
      throw SolverError(buf);
    }
  }
}

}  // namespace dyadic
