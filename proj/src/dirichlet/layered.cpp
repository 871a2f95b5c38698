#include "dyadic/dirichlet/layered.hpp"

#include "dyadic/core/errors.hpp"
#include "dyadic/core/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace dyadic {

namespace {

constexpr std::size_t sweep_chunk = 1 << 14;

// Neighbour mean at (d, v) for d >= 1.
inline double neighbour_mean(const std::vector<double>& e, unsigned d, std::uint64_t v, bool single_root_edge) {
  const std::uint64_t mask = (std::uint64_t{1} << d) - 1;
  const double* row = e.data() + layer_index(d, 0);
  double s = e[layer_index(d + 1, 2 * v)];
  int deg = 3;
  if (d == 1 && single_root_edge) {
    s += row[v ^ 1U];
    deg = 2;
  } else {
    s += row[(v + 1) & mask] + row[(v - 1) & mask];
  }
  if ((v & 1U) == 0) {
    s += e[layer_index(d - 1, v >> 1)];
    ++deg;
  }
  return s / deg;
}

void relax_depth(std::vector<double>& e, unsigned d, const DirichletOptions& opt) {
  const std::uint64_t count = std::uint64_t{1} << d;
  for (std::uint64_t colour = 0; colour < 2 && colour < count; ++colour) {
    const std::uint64_t n = (count - colour + 1) / 2;
    parallel_chunks(n, sweep_chunk, opt.threads, [&](std::size_t, std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        const std::uint64_t v = colour + 2 * i;
        e[layer_index(d, v)] = neighbour_mean(e, d, v, opt.single_root_edge);
      }
    });
  }
}

}  // namespace

double layered_residual(const std::vector<double>& e, unsigned first, unsigned last, const DirichletOptions& opt) {
  double res = 0.0;
  for (unsigned d = first; d <= last; ++d) {
    const std::uint64_t count = std::uint64_t{1} << d;
    std::vector<double> part(chunk_count(count, sweep_chunk), 0.0);
    parallel_chunks(count, sweep_chunk, opt.threads, [&](std::size_t ci, std::size_t begin, std::size_t end) {
      double r = 0.0;
      for (std::size_t v = begin; v < end; ++v) {
        r = std::max(r, std::fabs(neighbour_mean(e, d, v, opt.single_root_edge) - e[layer_index(d, v)]));
      }
      part[ci] = r;
    });
    for (double r : part) res = std::max(res, r);
  }
  return res;
}

DirichletStats solve_layered(std::vector<double>& values, unsigned first, unsigned last, const DirichletOptions& opt) {
  if (first < 1 || first > last) throw DomainError("solve_layered: empty or invalid interior");
  if (values.size() < layer_size(last + 1)) throw DomainError("solve_layered: value array too small");
  DirichletStats st;
  const unsigned every = std::max(opt.check_every, 1U);
  while (true) {
    for (unsigned d = first; d <= last; ++d) relax_depth(values, d, opt);
    for (unsigned d = last + 1; d-- > first;) relax_depth(values, d, opt);
    ++st.sweeps;
    if (st.sweeps % every == 0 || st.sweeps >= opt.max_sweeps) {
      st.residual = layered_residual(values, first, last, opt);
      if (st.residual <= opt.tol) return st;
      if (st.sweeps >= opt.max_sweeps) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "solve_layered: residual %.3e after %llu sweeps (tol %.3e)", st.residual,
                      static_cast<unsigned long long>(st.sweeps), opt.tol);
        throw SolverError(buf);
      }
    }
  }
}

}  // namespace dyadic
