#include "dyadic/dirichlet/k1_law.hpp"

#include "dyadic/core/errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <ostream>

namespace dyadic {

double IncrementLaw::at(int z) const {
  const int h = half();
  return (z < -h || z > h) ? 0.0 : mass[static_cast<std::size_t>(z + h)];
}

double IncrementLaw::abs_mean() const {
  double s = 0.0;
  for (int z = -half(); z <= half(); ++z) s += std::abs(z) * at(z);
  return s;
}

double IncrementLaw::total() const { return std::accumulate(mass.begin(), mass.end(), 0.0); }

IncrementLaw symmetrize(const IncrementLaw& law) {
  IncrementLaw out = law;
  const int h = law.half();
  for (int z = -h; z <= h; ++z) out.mass[static_cast<std::size_t>(z + h)] = 0.5 * (law.at(z) + law.at(-z));
  out.symmetrized = true;
  return out;
}

double total_variation(const IncrementLaw& a, const IncrementLaw& b) {
  const int h = std::max(a.half(), b.half());
  double s = 0.0;
  for (int z = -h; z <= h; ++z) s += std::fabs(a.at(z) - b.at(z));
  return 0.5 * s;
}

namespace {

IncrementLaw solve_once(unsigned inner, unsigned target, unsigned outer, const DirichletOptions& opt, bool sym) {
  std::vector<double> e(layer_size(outer), 0.0);
  e[layer_index(inner, 0)] = 1.0;
  const DirichletStats st = solve_layered(e, inner + 1, outer - 1, opt);

  IncrementLaw law;
  law.inner = inner;
  law.target = target;
  law.outer = outer;
  law.sweeps = st.sweeps;
  law.residual = st.residual;
  const std::uint64_t count = std::uint64_t{1} << target;
  const std::int64_t h = static_cast<std::int64_t>(count / 2);
  law.mass.assign(static_cast<std::size_t>(2 * h + 1), 0.0);
  for (std::uint64_t v = 0; v < count; ++v) {
    const double p = e[layer_index(target, v)];
    const auto sv = static_cast<std::int64_t>(v);
    if (sv < h) {
      law.mass[static_cast<std::size_t>(sv + h)] += p;
    } else if (sv > h) {
      law.mass[static_cast<std::size_t>(sv - 2 * h + h)] += p;
    } else {
      law.mass.front() += 0.5 * p;
      law.mass.back() += 0.5 * p;
    }
  }
  law.raw_total = law.total();
  if (!(law.raw_total > 0)) throw SolverError("k1_law: zero hitting mass");
  for (auto& m : law.mass) m /= law.raw_total;
  return sym ? symmetrize(law) : law;
}

}  // namespace

IncrementLaw k1_law(unsigned inner, unsigned target, unsigned outer, const DirichletOptions& opt, bool symmetrize_law,
                    bool estimate_truncation) {
  if (!(inner < target && target < outer)) throw DomainError("k1_law: need inner < target < outer");
  if (outer > 24) throw DomainError("k1_law: outer depth too large");
  IncrementLaw law = solve_once(inner, target, outer, opt, symmetrize_law);
  if (estimate_truncation && outer - 1 > target) {
    law.truncation_tv = total_variation(law, solve_once(inner, target, outer - 1, opt, symmetrize_law));
  }
  return law;
}

void write_increment_csv(std::ostream& os, const IncrementLaw& law) {
  os << "displacement_num,mass\n";
  char buf[64];
  for (int z = -law.half(); z <= law.half(); ++z) {
    std::snprintf(buf, sizeof buf, "%d,%.17g\n", z, law.at(z));
    os << buf;
  }
}

}  // namespace dyadic
