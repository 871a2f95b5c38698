#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace dyadic {

/// Values on the wrapped graph truncated at some depth, stored level by
/// level: the word of depth d and value v lives at index 2^d - 1 + v.
inline std::size_t layer_index(unsigned depth, std::uint64_t v) { return ((std::size_t{1} << depth) - 1) + v; }
inline std::size_t layer_size(unsigned max_depth) { return (std::size_t{1} << (max_depth + 1)) - 1; }

struct DirichletOptions {
  double tol = 1e-13;
  std::uint64_t max_sweeps = 200'000;
  unsigned threads = 1;
  unsigned check_every = 5;
  /// Mutation switch: count the double edge between 0 and 1 only once.
  bool single_root_edge = false;
};

struct DirichletStats {
  std::uint64_t sweeps = 0;
  double residual = 0.0;
};

/// Gauss-Seidel for the harmonic equations at depths [first, last]; every
/// other entry of `values` is boundary data. Each sweep visits depths in
/// ascending then descending order, updating even then odd labels within a
/// depth; same-colour updates are independent, so the result does not depend
/// on the thread count. Stops when the max-norm residual is <= tol and throws
/// SolverError after max_sweeps.
DirichletStats solve_layered(std::vector<double>& values, unsigned first, unsigned last, const DirichletOptions& opt);

/// Max-norm of (neighbour mean - value) over the interior depths.
double layered_residual(const std::vector<double>& values, unsigned first, unsigned last,
                        const DirichletOptions& opt);

}  // namespace dyadic
