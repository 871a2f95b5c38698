#include "doctest.h"

#include "dyadic/core/errors.hpp"
#include "dyadic/dirichlet/crest.hpp"
#include "dyadic/dirichlet/k1_law.hpp"
#include "dyadic/lattice/graphs.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>

using namespace dyadic;

namespace {

// Dense direct solve of the crest problem on the wrapped graph truncated at
// depth n, assembled from neighbors_wrapped alone.
std::map<Word, double> dense_crest(unsigned n) {
  std::vector<Word> interior;
  std::map<Word, int> index;
  for (unsigned d = 1; d < n; ++d) {
    for (std::uint64_t v = 0; v < (1ULL << d); ++v) {
      index[Word::from_value(v, d)] = static_cast<int>(interior.size());
      interior.push_back(Word::from_value(v, d));
    }
  }
  const int m = static_cast<int>(interior.size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
  for (int i = 0; i < m; ++i) {
    const auto inc = neighbors_wrapped(interior[i]);
    A(i, i) = static_cast<double>(inc.size());
    for (const auto& [x, mv] : inc) {
      if (x.empty()) b(i) += 1.0;
      else if (x.depth() < n) A(i, index.at(x)) -= 1.0;
    }
  }
  const Eigen::VectorXd u = A.partialPivLu().solve(b);
  std::map<Word, double> out;
  for (int i = 0; i < m; ++i) out[interior[i]] = u(i);
  return out;
}

}  // namespace

TEST_CASE("crest solver matches a dense direct solve") {
  for (unsigned n : {2u, 3u, 4u, 7u}) {
    const CrestField f = solve_crest(n);
    for (const auto& [w, u] : dense_crest(n)) CHECK(std::fabs(f.value(w) - u) < 1e-12);
  }
  const CrestField f2 = solve_crest(2);
  CHECK(std::fabs(f2.value(1, 0) - 3.0 / 8) < 1e-12);
  CHECK(std::fabs(f2.value(1, 1) - 1.0 / 4) < 1e-12);
}

TEST_CASE("normalize_level example and errors") {
  const CrestField f = solve_crest(2);
  const auto p = normalize_level(f, 1);
  CHECK(p[0] == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(p[1] == doctest::Approx(0.4).epsilon(1e-12));
  CHECK_THROWS_AS(normalize_level(f, 2), DomainError);
  CrestField flat;
  flat.n = 3;
  flat.values.assign(layer_size(3), 0.0);
  CHECK_THROWS_AS(normalize_level(flat, 1), DegenerateLevel);
  CHECK_THROWS_AS(solve_crest(1), DomainError);
}

TEST_CASE("crest values obey the maximum principle and grow with n") {
  CrestField prev = solve_crest(3);
  for (unsigned n = 4; n <= 11; ++n) {
    const CrestField f = solve_crest(n, {}, &prev);
    for (unsigned d = 1; d < n; ++d) {
      for (std::uint64_t v = 0; v < (1ULL << d); ++v) {
        REQUIRE(f.value(d, v) > 0.0);
        REQUIRE(f.value(d, v) < 1.0);
        if (d < prev.n) REQUIRE(f.value(d, v) >= prev.value(d, v) - 1e-12);
      }
    }
    prev = f;
  }
}

TEST_CASE("warm and cold starts agree") {
  const CrestField cold = solve_crest(9);
  const CrestField eight = solve_crest(8);
  const CrestField warm = solve_crest(9, {}, &eight);
  for (std::size_t i = 0; i < cold.values.size(); ++i) CHECK(std::fabs(cold.values[i] - warm.values[i]) < 1e-11);
  DirichletOptions four;
  four.threads = 4;
  CHECK(solve_crest(9, four).values == cold.values);
}

TEST_CASE("ratio-2 extrapolation") {
  std::vector<std::pair<int, double>> s;
  for (int n = 2; n <= 20; ++n) s.emplace_back(n, 1.0 - std::ldexp(1.0, -n));
  const Extrapolation x = extrapolate_ratio2(s);
  CHECK(x.limit == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(x.slope == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(x.window == 14);
  CHECK_FALSE(x.fit_warning);
  s.back().second = 0.5;
  CHECK(extrapolate_ratio2(s).fit_warning);
  CHECK_THROWS(extrapolate_ratio2({{1, 0.1}, {2, 0.2}}));
}

TEST_CASE("esc and p3 conversion") {
  CHECK(esc_p3_convert(3.0 / 8, ConvertDirection::P3ToEsc) == doctest::Approx(5.0 / 9).epsilon(1e-15));
  CHECK(esc_p3_convert(0.547846, ConvertDirection::EscToP3) == doctest::Approx(0.382333).epsilon(1e-6));
  for (double x : {0.1, 0.38, 0.6}) {
    CHECK(esc_p3_convert(esc_p3_convert(x, ConvertDirection::EscToP3), ConvertDirection::P3ToEsc) ==
          doctest::Approx(x).epsilon(1e-14));
  }
}

TEST_CASE("crest pipeline at moderate depth") {
  const CrestPipeline p = run_crest_pipeline(14, {}, 8);
  CHECK(p.levels.size() == 13);
  CHECK(std::fabs(p.esc0.limit - 0.547846) < 5e-4);
  CHECK(std::fabs(p.esc0.limit + p.esc1.limit - 1.0) < 1e-12);
  CHECK(p.p3 == doctest::Approx(esc_p3_convert(p.esc0.limit, ConvertDirection::EscToP3)));
  // Raw values approach their limit from below.
  for (std::size_t i = 1; i < p.levels.size(); ++i) CHECK(p.levels[i].raw1[0] >= p.levels[i - 1].raw1[0]);
}

TEST_CASE("miscounting the double root edge breaks the exact small case") {
  DirichletOptions bad;
  bad.single_root_edge = true;
  const CrestField f = solve_crest(2, bad);
  CHECK(std::fabs(f.value(1, 0) - 3.0 / 8) > 1e-3);
}

TEST_CASE("increment law is a symmetric probability vector") {
  const IncrementLaw raw = k1_law(3, 4, 10, {}, false, true);
  const IncrementLaw law = symmetrize(raw);
  CHECK(law.total() == doctest::Approx(1.0).epsilon(1e-12));
  for (int z = -law.half(); z <= law.half(); ++z) {
    CHECK(law.at(z) >= 0.0);
    CHECK(law.at(z) == doctest::Approx(law.at(-z)).epsilon(1e-15));
    // The solver itself is already symmetric up to its tolerance.
    CHECK(std::fabs(raw.at(z) - raw.at(-z)) < 1e-9);
  }
  CHECK(raw.truncation_tv >= 0.0);
  CHECK(raw.truncation_tv < 1e-2);
  CHECK(total_variation(law, law) == 0.0);
  CHECK(law.abs_mean() > 0.5);
  CHECK_THROWS_AS(k1_law(4, 4, 10), DomainError);
}
