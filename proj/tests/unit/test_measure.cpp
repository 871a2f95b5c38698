#include "doctest.h"

#include "dyadic/core/errors.hpp"
#include "dyadic/measure/harmonic.hpp"
#include "dyadic/measure/histogram.hpp"
#include "dyadic/measure/stationary.hpp"
#include "dyadic/walk/estimators.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>

using namespace dyadic;

namespace {

// Stationary vector of the label chain from a dense transition matrix,
// built from the move rules rather than the pull-form kernel.
std::vector<double> dense_stationary(unsigned L, LeadingBit policy) {
  const int n = 1 << L;
  const int mask = n - 1, top = n >> 1;
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
  for (int s = 0; s < n; ++s) {
    const bool odd = s & 1;
    const double w = odd ? 1.0 / 3 : 1.0 / 4;
    P(s, (s + 1) & mask) += w;
    P(s, (s - 1) & mask) += w;
    P(s, (2 * s) & mask) += w;
    if (!odd) {
      if (policy == LeadingBit::Zero) {
        P(s, s >> 1) += w;
      } else {
        P(s, s >> 1) += w / 2;
        P(s, (s >> 1) | top) += w / 2;
      }
    }
  }
  Eigen::MatrixXd A = P.transpose() - Eigen::MatrixXd::Identity(n, n);
  A.row(n - 1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(n - 1) = 1.0;
  const Eigen::VectorXd pi = A.fullPivLu().solve(b);
  return {pi.data(), pi.data() + n};
}

IncrementLaw toy_law() {
  IncrementLaw law;
  law.mass = {0.05, 0.1, 0.2, 0.3, 0.15, 0.12, 0.08};  // z = -3..3
  return law;
}

}  // namespace

TEST_CASE("histogram coarsening is exact") {
  std::vector<double> m(16);
  for (std::size_t k = 0; k < 16; ++k) m[k] = static_cast<double>(k + 1) / 136.0;
  const DyadicHistogram h(4, m);
  const DyadicHistogram c = h.coarsen(3);
  for (std::size_t k = 0; k < 8; ++k) CHECK(c[k] == m[2 * k] + m[2 * k + 1]);
  CHECK(h.coarsen(0)[0] == doctest::Approx(1.0));
  CHECK(h.prefix_mass(Word::parse("01")) == doctest::Approx(m[4] + m[5] + m[6] + m[7]));
  CHECK(h.prefix_mass(Word{}) == doctest::Approx(1.0));
  CHECK(h.mirror(0) == 15);
  CHECK_THROWS(h.prefix_mass(Word::parse("01010")));
}

TEST_CASE("uniform histograms") {
  const DyadicHistogram u = DyadicHistogram::uniform(6);
  CHECK(u.total() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(total_variation(u.doubling_pushforward(), u.coarsen(5)) == 0.0);
  CHECK(tv_to_uniform(u) == 0.0);
  const DyadicHistogram d = dual_harmonic_exact(1);
  CHECK(d[0] == 0.5);
  CHECK(d[1] == 0.5);
  const DyadicHistogram c = DyadicHistogram::from_counts(1, {3, 1});
  CHECK(c[0] == 0.75);
  CHECK(total_variation(c, d) == doctest::Approx(0.25));
}

TEST_CASE("histogram CSV uses exact endpoints") {
  std::ostringstream os;
  write_histogram_csv(os, DyadicHistogram::uniform(2));
  CHECK(os.str() ==
        "bin_index,left_endpoint,mass,density,bit_changes\n"
        "0,0/2^2,0.25,1,0\n1,1/2^2,0.25,1,1\n2,2/2^2,0.25,1,1\n3,3/2^2,0.25,1,0\n");
}

TEST_CASE("truncated chain matches a dense solve for small L") {
  for (LeadingBit policy : {LeadingBit::Zero, LeadingBit::Uniform}) {
    for (unsigned L = 2; L <= 4; ++L) {
      const StationaryChain c = truncated_stationary(L, 1e-14, policy);
      const auto want = dense_stationary(L, policy);
      for (std::size_t s = 0; s < want.size(); ++s) CHECK(std::fabs(c.pi[s] - want[s]) < 1e-11);
    }
  }
}

TEST_CASE("truncated chain is a stationary probability vector") {
  const StationaryChain c = truncated_stationary(10, 1e-13, LeadingBit::Zero, 3);
  double s = 0.0;
  for (double p : c.pi) {
    CHECK(p >= 0.0);
    s += p;
  }
  CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  const auto q = chain_step(c.pi, 10);
  double d = 0.0;
  for (std::size_t k = 0; k < q.size(); ++k) d += std::fabs(q[k] - c.pi[k]);
  CHECK(d < 1e-12);
  CHECK(truncated_stationary(10, 1e-13, LeadingBit::Zero, 1).pi == c.pi);
  CHECK(c.marginal(1)[1] == doctest::Approx(c.implied_p3()).epsilon(1e-14));
  CHECK_THROWS_AS(truncated_stationary(1), DomainError);
  CHECK_THROWS_AS(truncated_stationary(8, 1e-13, LeadingBit::Zero, 1, 3), SolverError);
}

TEST_CASE("low-bit marginals of the truncated chains converge") {
  std::vector<StationaryChain> c;
  for (unsigned L = 7; L <= 13; ++L) c.push_back(truncated_stationary(L));
  double last = 1.0;
  for (std::size_t i = 1; i < c.size(); ++i) {
    const auto a = c[i].marginal(6), b = c[i - 1].marginal(6);
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) d += std::fabs(a[k] - b[k]);
    CHECK(d < last);
    last = d;
  }
  CHECK(std::fabs(c.back().implied_p3() - 0.382332) < 5e-6);
}

TEST_CASE("dual chain leaves the uniform vector invariant") {
  CHECK(dual_stationary_invariance_check(1) == 0.0);
  CHECK(dual_stationary_invariance_check(8) <= 1e-14);
  std::vector<double> point(1 << 6, 0.0);
  point[5] = 1.0;
  const auto q = dual_chain_step(point, 6);
  double d = 0.0;
  for (std::size_t k = 0; k < q.size(); ++k) d += std::fabs(q[k] - point[k]);
  CHECK(d > 0.5);
}

TEST_CASE("g profile on simple histograms") {
  const GMeasureProfile u = g_profile(DyadicHistogram::uniform(8));
  for (double g : u.g) CHECK(g == 0.5);
  CHECK(u.entropy == 1.0);
  CHECK(u.flagged.empty());
  std::vector<double> m(256, 1.0 / 254);
  m[3] = m[3 + 128] = 0.0;
  const GMeasureProfile f = g_profile(DyadicHistogram(8, m));
  CHECK(f.flagged == std::vector<std::size_t>{3, 131});
  CHECK(std::isnan(f.g[3]));
  CHECK_THROWS_AS(g_profile(DyadicHistogram::uniform(7)), ResolutionError);
}

TEST_CASE("two-bit statistics of the uniform histogram") {
  const TwoBitStats t = two_bit_statistics(DyadicHistogram::uniform(5));
  CHECK(t.m00 == 0.25);
  CHECK(t.m11 == 0.25);
  CHECK(t.excess == 0.0);
}

TEST_CASE("convolution matches brute-force enumeration") {
  const IncrementLaw law = toy_law();
  const unsigned T = 6;
  std::vector<double> want(1 << T, 0.0);
  std::vector<int> z(T, -3);
  while (true) {
    double p = 1.0;
    long long x = 0;
    for (unsigned n = 1; n <= T; ++n) {
      p *= law.at(z[n - 1]);
      x += static_cast<long long>(z[n - 1]) << (T - n);
    }
    want[static_cast<std::size_t>(((x % 64) + 64) % 64)] += p;
    unsigned i = 0;
    while (i < T && z[i] == 3) z[i++] = -3;
    if (i == T) break;
    ++z[i];
  }
  const HarmonicHistogram h = harmonic_histogram(law, T, T, 2);
  for (std::size_t k = 0; k < want.size(); ++k) CHECK(std::fabs(h.histogram[k] - want[k]) < 1e-15);
  const HarmonicHistogram coarse = harmonic_histogram(law, T, 3);
  CHECK(coarse.histogram.masses() == h.histogram.coarsen(3).masses());
  CHECK_THROWS_AS(harmonic_histogram(law, 4, 6), ResolutionError);
}

TEST_CASE("harmonic histogram structure at reduced scale") {
  const IncrementLaw law = k1_law(5, 6, 14);
  const HarmonicHistogram h = harmonic_histogram(law, 18, 12, 4);
  const DyadicHistogram& hist = h.histogram;
  CHECK(hist.total() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::fabs(hist.coarsen(1)[0] - 0.5) < 1e-6);
  for (std::size_t k = 0; k < hist.bins(); ++k) CHECK(std::fabs(hist[k] - hist[hist.mirror(k)]) < 1e-6);
  CHECK(two_bit_statistics(hist).excess > 0.005);

  // Doubling invariance: bin by bin within the reported tail bound; in TV
  // within the chance that the neglected tail moves a point across a bin.
  const DyadicHistogram push = hist.doubling_pushforward(), coarse = hist.coarsen(11);
  double worst = 0.0;
  for (std::size_t k = 0; k < push.bins(); ++k) worst = std::max(worst, std::fabs(push[k] - coarse[k]));
  CHECK(worst <= h.tail_bound);
  CHECK(total_variation(push, coarse) <= std::ldexp(h.tail_bound, 11));

  const auto tv = singularity_report(hist, 6, 12);
  for (std::size_t i = 1; i < tv.size(); ++i) CHECK(tv[i].second > tv[i - 1].second);
  CHECK(harmonic_histogram(law, 18, 12, 1).histogram.masses() == hist.masses());
}

TEST_CASE("convolved two-bit masses agree with sampled harmonic points") {
  const HarmonicHistogram h = harmonic_histogram(k1_law(), 22, 14);
  WalkOptions opt;
  opt.seed = 77;
  opt.threads = 4;
  const HarmonicCounts c = harmonic_sample_counts(2, 100000, 20, opt);
  const DyadicHistogram two = h.histogram.coarsen(2);
  for (std::size_t k = 0; k < 4; ++k) {
    const double p = static_cast<double>(c.counts[k]) / static_cast<double>(c.samples);
    CHECK(std::fabs(p - two[k]) < 3 * std::sqrt(two[k] * (1 - two[k]) / static_cast<double>(c.samples)));
  }
}

TEST_CASE("substring densities") {
  WalkOptions opt;
  opt.seed = 3;
  const Word s = sample_stationary_bits(100000, 0, opt, true);
  CHECK(substring_density(s, Word{}).frequency == 1.0);
  const Estimate e = substring_density_estimate(s, Word::parse("0"));
  CHECK(std::fabs(e.value() - 0.5) < 3 * e.std_error());
  const SubstringDensity d = substring_density(s, Word::parse("01"));
  CHECK(d.windows == 99999);
  CHECK_THROWS_AS(substring_density(s, Word::parse("0101010")), DomainError);
}
