#include "doctest.h"

#include "dyadic/walk/estimators.hpp"
#include "dyadic/walk/walk.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace dyadic;

namespace {

Word follow(const Word& w, Move m) {
  for (const auto& [x, mv] : neighbors_wrapped(w)) {
    if (mv == m) return x;
  }
  FAIL("move not available");
  return w;
}

// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const std::uint64_t x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

}  // namespace

TEST_CASE("identical seeds give identical trajectories") {
  std::ostringstream a, b, c;
  write_trajectory(a, start_walk(3, 8), 500);
  write_trajectory(b, start_walk(3, 8), 500);
  write_trajectory(c, start_walk(3, 9), 500);
  CHECK(a.str() == b.str());
  CHECK(a.str() != c.str());
  CHECK(a.str().rfind("t,depth,label,move,position_num,position_exp\n", 0) == 0);
}

TEST_CASE("compact walks follow the word walks step for step") {
  for (std::uint64_t stream = 0; stream < 50; ++stream) {
    for (bool dual : {false, true}) {
      WalkState s = start_walk(11, stream);
      CompactWalk c;
      c.rng = s.rng;
      while (c.depth < 55 && s.time < 2000) {
        const Move a = dual ? walk_step_dual(s) : walk_step(s);
        const Move b = dual ? walk_step_dual(c) : walk_step(c);
        REQUIRE(a == b);
        REQUIRE(s.vertex == c.word());
        REQUIRE(s.position() == c.position());
      }
    }
  }
}

TEST_CASE("leaving records account for every position change") {
  for (std::uint64_t stream = 0; stream < 200; ++stream) {
    const LeavingRecord r = run_with_leaving_times(start_walk(5, stream), 6, 30);
    REQUIRE(r.levels.size() == 7);
    DyadicRational sum = r.start_position;
    for (std::size_t k = 0; k < r.levels.size(); ++k) {
      const LevelRecord& l = r.levels[k];
      sum += l.increment;
      CHECK(l.vertex.depth() == l.level);
      CHECK(l.position == sum);
      if (k > 0) CHECK(l.time > r.levels[k - 1].time);
      if (k + 1 < r.levels.size()) {
        // Replay the segment: it ends at the next record and never comes back to depth k.
        Word w = l.vertex;
        for (Move m : l.segment) {
          w = follow(w, m);
          REQUIRE(w.depth() > l.level);
        }
        CHECK(w == r.levels[k + 1].vertex);
        CHECK(l.segment.size() == r.levels[k + 1].time - l.time);
      }
    }
    CHECK(sum == r.levels.back().position);
  }
}

TEST_CASE("leaving gaps are identically distributed across levels") {
  WalkOptions opt;
  opt.seed = 21;
  opt.threads = 4;
  const std::uint64_t n = 100000;
  const LeavingDistribution d = leaving_distribution(4, n, opt, true);
  REQUIRE(d.budget_exceeded == 0);
  const double crit = 1.949 * std::sqrt(2.0 / static_cast<double>(n));  // alpha = 0.001
  CHECK(ks_statistic(d.gaps[1], d.gaps[2]) < crit);
  CHECK(ks_statistic(d.gaps[2], d.gaps[3]) < crit);
  CHECK(ks_statistic(d.gaps[1], d.gaps[3]) < crit);
  // Exponential tail: long gaps are rare.
  const auto big = std::count_if(d.gaps[2].begin(), d.gaps[2].end(), [](std::uint64_t g) { return g > 400; });
  CHECK(big < static_cast<long>(n / 1000));
}

TEST_CASE("leaving distribution sums to one and ignores the thread count") {
  WalkOptions opt;
  opt.seed = 2;
  opt.threads = 1;
  const LeavingDistribution a = leaving_distribution(3, 20000, opt);
  opt.threads = 4;
  const LeavingDistribution b = leaving_distribution(3, 20000, opt);
  CHECK(a.counts == b.counts);
  for (std::size_t k = 1; k <= 3; ++k) {
    double s = 0.0;
    for (std::uint64_t v = 0; v < (1ULL << k); ++v) s += a.mass(k, v);
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  }
  // Reflection symmetry of the walk: 01 and 11 are equally likely.
  CHECK(std::fabs(a.mass(2, 1) - a.mass(2, 3)) < 4 * std::hypot(a.std_error(2, 1), a.std_error(2, 3)));
}

TEST_CASE("two-step drift table is exact") {
  const DriftTable t = two_step_drift_table();
  CHECK(t.degree3 == Rational(1, 3));
  CHECK(t.degree4_up3 == Rational(1, 4));
  CHECK(t.degree4_up4 == Rational(1, 6));
}

TEST_CASE("depth gain tail respects the Hoeffding bound") {
  WalkOptions opt;
  opt.seed = 4;
  opt.threads = 4;
  for (std::uint64_t t : {50, 100}) {
    const double p = depth_gain_tail(t, 20000, opt);
    CHECK(p <= std::exp(-static_cast<double>(t) / 1152.0));
  }
}

TEST_CASE("p3 agrees on the wrapped graph and the full lattice") {
  WalkOptions opt;
  opt.seed = 9;
  opt.threads = 4;
  const P3Result w = estimate_p3(2'000'000, opt, P3Graph::Wrapped);
  const P3Result a = estimate_p3(2'000'000, opt, P3Graph::GammaA);
  CHECK(std::fabs(w.p3.value() - a.p3.value()) < 3 * std::hypot(w.p3.std_error(), a.p3.std_error()));
  CHECK(std::fabs(w.p3.value() - 0.382333) < 3 * w.p3.std_error());
  opt.threads = 1;
  const P3Result w1 = estimate_p3(2'000'000, opt, P3Graph::Wrapped);
  CHECK(w1.p3.value() == w.p3.value());
  CHECK(w1.speed.std_error() == w.speed.std_error());
}

TEST_CASE("harmonic samples: fair first bit, light middle half") {
  WalkOptions opt;
  opt.seed = 13;
  opt.threads = 4;
  const HarmonicCounts c = harmonic_sample_counts(2, 100000, 20, opt);
  REQUIRE(c.budget_exceeded == 0);
  const double n = static_cast<double>(c.samples);
  const double first = static_cast<double>(c.counts[0] + c.counts[1]) / n;
  const double middle = static_cast<double>(c.counts[1] + c.counts[2]) / n;
  CHECK(std::fabs(first - 0.5) < 3 * std::sqrt(0.25 / n));
  CHECK(middle < 0.5);
  const HarmonicSample s = sample_harmonic_point(20, 3, opt);
  CHECK(s.error_bound == doctest::Approx(2.0 * std::ldexp(1.0, -20)));
  CHECK(s.wrapped == s.position.frac());
}

TEST_CASE("stationary samples") {
  WalkOptions opt;
  opt.seed = 17;
  // Dual samples are fair coin flips.
  const Word d = sample_stationary_bits(200000, 1, opt, true);
  std::uint64_t ones = 0;
  for (auto b : d.bits()) ones += b;
  CHECK(std::fabs(static_cast<double>(ones) / 200000 - 0.5) < 3 * std::sqrt(0.25 / 200000));
  // Primal: the units bit is 1 with probability p3.
  const int n = 10000;
  int odd = 0;
  for (int i = 0; i < n; ++i) odd += sample_stationary_string(8, static_cast<std::uint64_t>(i), opt).last_bit();
  const double p = static_cast<double>(odd) / n;
  CHECK(std::fabs(p - 0.382333) < 3 * std::sqrt(0.2362 / n));
  CHECK(sample_stationary_string(16, 5, opt) == sample_stationary_string(16, 5, opt));
}

TEST_CASE("dual speed is one fifth") {
  WalkOptions opt;
  opt.seed = 31;
  opt.threads = 4;
  const Estimate e = estimate_dual_speed(2'000'000, opt);
  CHECK(std::fabs(e.value() - 0.2) < 3 * e.std_error());
}

TEST_CASE("estimates merge like a single pass") {
  Estimate all, left, right;
  for (int i = 0; i < 1000; ++i) {
    const double x = std::sin(i * 0.37);
    all.add(x);
    (i < 400 ? left : right).add(x);
  }
  Estimate merged = left;
  merged.merge(right);
  CHECK(merged.samples() == all.samples());
  CHECK(merged.value() == doctest::Approx(all.value()).epsilon(1e-12));
  CHECK(merged.variance() == doctest::Approx(all.variance()).epsilon(1e-12));
  Estimate other = right;
  other.merge(left);
  CHECK(other.value() == doctest::Approx(merged.value()).epsilon(1e-12));
}
