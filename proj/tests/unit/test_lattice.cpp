#include "doctest.h"

#include "dyadic/core/errors.hpp"
#include "dyadic/core/hash.hpp"
#include "dyadic/lattice/graphs.hpp"
#include "dyadic/lattice/rooted.hpp"
#include "dyadic/lattice/structure.hpp"

#include <algorithm>
#include <set>

using namespace dyadic;

namespace {

using Edge = std::pair<std::string, Move>;

std::multiset<Edge> edges_of(const Incidence<Word>& inc) {
  std::multiset<Edge> out;
  for (const auto& [w, m] : inc) out.emplace(w.str(), m);
  return out;
}

std::multiset<Edge> expect(std::initializer_list<Edge> e) { return {e}; }

LatticeVertex lattice_vertex(std::int64_t depth, std::int64_t label) {
  LatticeVertex v;
  v.depth = depth;
  Word w = Word::from_value(static_cast<std::uint64_t>(label), 16);
  v.label = LazyDyadic(BitProvider::zero_tail(w));
  return v;
}

}  // namespace

TEST_CASE("wrapped neighbours examples") {
  CHECK(edges_of(neighbors_wrapped(Word::parse("10"))) ==
        expect({{"11", Move::R}, {"01", Move::L}, {"100", Move::D}, {"1", Move::U}}));
  CHECK(edges_of(neighbors_wrapped(Word::parse("1"))) == expect({{"0", Move::R}, {"0", Move::L}, {"10", Move::D}}));
  CHECK(edges_of(neighbors_wrapped(Word{})) == expect({{"~", Move::L}, {"~", Move::R}, {"0", Move::D}}));
  // Fixed move order R, L, D, U.
  const auto inc = neighbors_wrapped(Word::parse("10"));
  CHECK(inc[0].second == Move::R);
  CHECK(inc[3].second == Move::U);
}

TEST_CASE("degree rule holds exhaustively to depth 12") {
  for (unsigned n = 1; n <= 12; ++n) {
    for (std::uint64_t v = 0; v < (1ULL << n); ++v) {
      const Word w = Word::from_value(v, n);
      REQUIRE(degree_wrapped(w) == (v % 2 == 0 ? 4 : 3));
      REQUIRE(neighbors_wrapped(w).size() == static_cast<std::size_t>(degree_wrapped(w)));
    }
  }
}

TEST_CASE("edges are symmetric in the wrapped graph") {
  for (unsigned n = 0; n <= 8; ++n) {
    for (std::uint64_t v = 0; v < (1ULL << n); ++v) {
      const Word w = Word::from_value(v, n);
      const auto out = neighbors_wrapped(w);
      for (const auto& [x, m] : out) {
        const auto back = neighbors_wrapped(x);
        const auto count = std::count_if(back.begin(), back.end(), [&](const auto& e) { return e.first == w; });
        const auto forward = std::count_if(out.begin(), out.end(), [&](const auto& e) { return e.first == x; });
        REQUIRE(count == forward);
      }
    }
  }
}

TEST_CASE("mirror maps conjugate primal and dual neighbours") {
  for (unsigned n = 0; n <= 9; ++n) {
    for (std::uint64_t v = 0; v < (1ULL << n); ++v) {
      const Word w = Word::from_value(v, n);
      std::multiset<Edge> mapped;
      for (const auto& [x, m] : neighbors_wrapped(w)) mapped.emplace(reflect_word(x).str(), mirror(m));
      REQUIRE(edges_of(neighbors_wrapped(reflect_word(w))) == mapped);
      std::multiset<Edge> dual_mapped;
      for (const auto& [x, m] : neighbors_dual(w)) dual_mapped.emplace(complement_word(x).str(), mirror(m));
      REQUIRE(edges_of(neighbors_dual(complement_word(w))) == dual_mapped);
    }
  }
}

TEST_CASE("negation is not a symmetry of the dual walk") {
  // Dropping the last bit of 01 gives 0, whose negation is 0; negating first
  // gives 11, whose parent is 1.
  const Word w = Word::parse("01");
  CHECK(word_shift(reflect_word(w), Shift::Pop) != reflect_word(word_shift(w, Shift::Pop)));
  CHECK(word_shift(complement_word(w), Shift::Pop) == complement_word(word_shift(w, Shift::Pop)));
}

TEST_CASE("dual neighbours examples") {
  CHECK(edges_of(neighbors_dual(Word::parse("1"))) ==
        expect({{"0", Move::R}, {"0", Move::L}, {"~", Move::U}, {"10", Move::D0}, {"11", Move::D1}}));
  CHECK(edges_of(neighbors_dual(Word{})) ==
        expect({{"~", Move::L}, {"~", Move::R}, {"~", Move::U}, {"0", Move::D0}, {"1", Move::D1}}));
  const LazyDyadic a(BitProvider::seeded(4));
  CHECK(neighbors_dual(a).size() == 5);
}

TEST_CASE("lattice neighbours examples") {
  const LatticeVertex even = lattice_vertex(0, 6);
  const auto inc = neighbors_lattice(even, LatticeKind::GammaA);
  REQUIRE(inc.size() == 4);
  const auto up = std::find_if(inc.begin(), inc.end(), [](const auto& e) { return e.second == Move::U; });
  REQUIRE(up != inc.end());
  CHECK(up->first.depth == -1);
  CHECK(up->first.label.low_bits(8) == Word::from_value(3, 8));
  CHECK(degree_lattice(even, LatticeKind::GammaPlus) == 3);
  CHECK(degree_lattice(lattice_vertex(0, 7), LatticeKind::GammaPlus) == 3);

  const auto odd = neighbors_lattice(lattice_vertex(1, 5), LatticeKind::GammaA);
  std::set<std::pair<std::int64_t, std::uint64_t>> got;
  for (const auto& [x, m] : odd) got.emplace(x.depth, x.label.low_value(16).convert_to<std::uint64_t>());
  CHECK(got == std::set<std::pair<std::int64_t, std::uint64_t>>{{1, 4}, {1, 6}, {2, 10}});
}

TEST_CASE("lattice positions move by the level spacing") {
  LatticeVertex v = lattice_vertex(3, 6);
  const DyadicRational start = v.position;
  apply_move(v, Move::R);
  CHECK(v.position - start == DyadicRational::pow2(-3));
  apply_move(v, Move::D);
  apply_move(v, Move::L);
  CHECK(v.position - start == DyadicRational::pow2(-3) - DyadicRational::pow2(-4));
}

TEST_CASE("edge classification examples on the zero lattice") {
  const RootedLattice g(BitProvider::zero_tail());
  CHECK(classify_edge(g, {0, 0}, {1, 0}) == Orientation::Vertical);
  CHECK(classify_edge(g, {0, 0}, {0, 1}) == Orientation::Horizontal);
  CHECK(classify_edge(g, {0, 1}, {1, 2}) == Orientation::Vertical);
  CHECK(orient_vertical_edge(g, {0, 0}, {1, 0}) == NodeKey{0, 0});
  CHECK(orient_vertical_edge(g, {1, 2}, {0, 1}) == NodeKey{0, 1});
  CHECK_THROWS_AS(classify_edge(g, {0, 0}, {3, 3}), StructureError);
}

TEST_CASE("avoiding distance in the vertical case is 6") {
  // Exhaustive BFS oracle: the classifier only needs "more than 3".
  for (std::uint64_t s = 0; s < 30; ++s) {
    const RootedLattice g(s == 0 ? BitProvider::zero_tail() : BitProvider::seeded(s));
    for (std::int64_t k = -6; k <= 6; ++k) {
      const NodeKey x{4, 2 * k + 1};
      if (g.degree(x) != 3) continue;
      const NodeKey y = g.step(x, Move::D);
      const NodeKey z = g.step(y, Move::D);
      const auto dist = avoiding_distance(g, x, z, y, 8);
      REQUIRE(dist.has_value());
      CHECK(*dist == 6);
    }
  }
  const RootedLattice g(BitProvider::zero_tail());
  CHECK(avoiding_distance(g, {0, 1}, {2, 4}, {1, 2}, 8) == 6);
}

TEST_CASE("read_root_bits examples") {
  const RootedLattice zero(BitProvider::zero_tail());
  CHECK(read_root_bits(zero, 20) == Word::from_value(0, 20));
  const RootedLattice alt(BitProvider::periodic_tail({}, Word::parse("01")));
  CHECK(read_root_bits(alt, 6) == Word::parse("010101"));
}

TEST_CASE("read_root_bits round trips seeded providers") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const RootedLattice g(BitProvider::seeded(mix64(s, 17), Word::from_value(s % 8, 3)));
    for (std::size_t k : {1, 7, 64}) REQUIRE(read_root_bits(g, k) == LazyDyadic(g.provider()).low_bits(k));
  }
}

TEST_CASE("classification agrees with construction on seeded windows") {
  std::uint64_t edges = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const RootedLattice g(BitProvider::seeded(mix64(s, 23)));
    for (const auto& e : classify_window(g, 2, 7, 10)) {
      ++edges;
      const bool vertical = RootedLattice::is_vertical(e.u, e.v);
      REQUIRE(vertical == (e.cls.orientation == Orientation::Vertical));
      if (vertical) {
        REQUIRE(e.cls.upper.has_value());
        CHECK(*e.cls.upper == (e.u.depth < e.v.depth ? e.u : e.v));
      }
    }
  }
  CHECK(edges > 10000);
}

TEST_CASE("oracle windows and automorphisms") {
  const RootedLattice g(BitProvider::seeded(1), RootedLattice::DepthWindow{-3, 5});
  CHECK_NOTHROW(g.degree({5, 0}));
  CHECK_THROWS_AS(g.degree({6, 0}), InsufficientContext);
  CHECK_THROWS_AS(g.degree({-4, 0}), InsufficientContext);
  CHECK(has_nontrivial_automorphism(BitProvider::zero_tail(Word::parse("1011"))));
  CHECK(has_nontrivial_automorphism(BitProvider::periodic_tail(Word::parse("1"), Word::parse("011"))));
  CHECK_FALSE(has_nontrivial_automorphism(BitProvider::seeded(9)));
}
