#pragma once

#include "dyadic/core/dyadic_rational.hpp"
#include "dyadic/core/word.hpp"
#include "dyadic/lattice/graphs.hpp"
#include "dyadic/walk/rng.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace dyadic {

/// Walk on the wrapped graph (primal or dual) with an integer winding
/// number, which together with the word gives the exact position in the
/// half graph: winding + v(word) / 2^depth.
struct WalkState {
  Word vertex;
  std::int64_t winding = 0;
  std::uint64_t time = 0;
  CounterRng rng;

  std::size_t depth() const { return vertex.depth(); }
  DyadicRational position() const;
};

WalkState start_walk(std::uint64_t seed, std::uint64_t stream, Word at = {});

/// One uniform step among the incident edges in neighbors_wrapped order.
Move walk_step(WalkState& s);
/// One uniform step among the five dual moves in neighbors_dual order.
Move walk_step_dual(WalkState& s);

/// Same dynamics with the word packed in a machine integer (depth <= 62).
/// Draws exactly the same random numbers as WalkState, so trajectories agree.
struct CompactWalk {
  std::uint64_t value = 0;
  int depth = 0;
  std::int64_t winding = 0;
  std::uint64_t time = 0;
  CounterRng rng;

  static constexpr int max_depth = 62;
  DyadicRational position() const;
  Word word() const { return Word::from_value(value, static_cast<unsigned>(depth)); }
};

Move walk_step(CompactWalk& s);
Move walk_step_dual(CompactWalk& s);

/// Walk on the full lattice or the half graph with LazyDyadic labels.
struct LatticeWalk {
  LatticeVertex vertex;
  LatticeKind kind = LatticeKind::GammaA;
  std::uint64_t time = 0;
  CounterRng rng;
};

Move walk_step(LatticeWalk& s);

/// CSV columns t, depth, label, move, position_num, position_exp.
void write_trajectory(std::ostream& os, WalkState s, std::uint64_t steps, bool dual = false);

}  // namespace dyadic
