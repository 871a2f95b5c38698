#pragma once

#include "dyadic/core/dyadic_rational.hpp"
#include "dyadic/core/lazy_dyadic.hpp"
#include "dyadic/core/word.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace dyadic {

/// Primal moves are L, R, U, D; the dual walk uses L, R, U, D0, D1.
enum class Move : std::uint8_t { L, R, U, D, D0, D1 };

const char* to_string(Move m);
Move mirror(Move m);

template <class V>
using Incidence = std::vector<std::pair<V, Move>>;

/// Edges at a vertex of the wrapped graph, ordered R, L, D, U. The root has
/// two self-loops (counted once each) and its down edge; depth-1 vertices
/// reach each other along two distinct edges.
Incidence<Word> neighbors_wrapped(const Word& w);
int degree_wrapped(const Word& w);

/// Five dual moves ordered R, L, U, D0, D1. At the root R, L and U are loops.
Incidence<Word> neighbors_dual(const Word& w);
/// Dual moves on a left-infinite label; popping is always legal here.
Incidence<LazyDyadic> neighbors_dual(const LazyDyadic& a);

/// The reflection automorphism v -> -v mod 2^depth.
Word reflect_word(const Word& w);
/// v -> 2^depth - 1 - v. This, not reflect_word, is the mirror symmetry of
/// the dual walk: negation does not commute with dropping an odd last bit.
Word complement_word(const Word& w);

struct LatticeVertex {
  std::int64_t depth = 0;
  LazyDyadic label;
  DyadicRational position;
};

enum class LatticeKind { GammaA, GammaPlus };

/// Neighbours ordered R, L, D, U with exact positions.
Incidence<LatticeVertex> neighbors_lattice(const LatticeVertex& v, LatticeKind kind);
int degree_lattice(const LatticeVertex& v, LatticeKind kind);
/// In-place move; the walk engine uses this to avoid copying labels.
void apply_move(LatticeVertex& v, Move m);

}  // namespace dyadic
