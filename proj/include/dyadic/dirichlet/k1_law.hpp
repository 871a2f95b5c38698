#pragma once

#include "dyadic/dirichlet/layered.hpp"

#include <iosfwd>
#include <vector>

namespace dyadic {

/// Law of the integer Z = 2^target K_target on [-2^(target-1), 2^(target-1)],
/// the horizontal change between consecutive leaving times measured in
/// units of the target depth's spacing.
struct IncrementLaw {
  unsigned inner = 6;
  unsigned target = 7;
  unsigned outer = 19;
  std::vector<double> mass;  // mass[z + half]
  double raw_total = 0.0;    // hitting mass before normalization
  double truncation_tv = -1.0;  // TV to the law solved at outer - 1; negative if not computed
  bool symmetrized = false;
  std::uint64_t sweeps = 0;
  double residual = 0.0;

  int half() const { return static_cast<int>(mass.size() / 2); }
  double at(int z) const;
  double abs_mean() const;
  double total() const;
};

/// Averages the law with its reflection z -> -z.
IncrementLaw symmetrize(const IncrementLaw& law);
double total_variation(const IncrementLaw& a, const IncrementLaw& b);

/// For each depth-target vertex v, solves for the probability of hitting the
/// depth-inner word 0...0 before any other depth-inner vertex or depth outer.
/// Vertex v is a signed displacement of v (v < half) or v - 2 half (v > half);
/// the antipode v = half is split evenly between +half and -half.
IncrementLaw k1_law(unsigned inner = 6, unsigned target = 7, unsigned outer = 19, const DirichletOptions& opt = {},
                    bool symmetrize_law = true, bool estimate_truncation = true);

/// CSV columns displacement_num, mass.
void write_increment_csv(std::ostream& os, const IncrementLaw& law);

}  // namespace dyadic
