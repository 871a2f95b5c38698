#include "dyadic/walk/walk.hpp"

#include "dyadic/core/errors.hpp"

#include <ostream>

namespace dyadic {

DyadicRational WalkState::position() const {
  return DyadicRational::integer(winding) + position_of(vertex);
}

WalkState start_walk(std::uint64_t seed, std::uint64_t stream, Word at) {
  WalkState s;
  s.vertex = std::move(at);
  s.rng = CounterRng(seed, stream);
  return s;
}

namespace {

// Primal order R, L, D, U; the root's R and L are loops that move the
// winding, exactly like the integer vertices of the half graph's top row.
constexpr Move primal_order[] = {Move::R, Move::L, Move::D, Move::U};

int primal_degree(bool root, bool even) { return (!root && even) ? 4 : 3; }

constexpr Move dual_order[] = {Move::R, Move::L, Move::U, Move::D0, Move::D1};

}  // namespace

Move walk_step(WalkState& s) {
  Word& w = s.vertex;
  const bool root = w.empty();
  const Move m = primal_order[s.rng.below(primal_degree(root, w.is_even()))];
  switch (m) {
    case Move::R: s.winding += root ? 1 : w.add(1); break;
    case Move::L: s.winding += root ? -1 : w.add(-1); break;
    case Move::D: w.push_back(0); break;
    case Move::U: w.pop_back(); break;
    default: break;
  }
  ++s.time;
  return m;
}

Move walk_step_dual(WalkState& s) {
  Word& w = s.vertex;
  const Move m = dual_order[s.rng.below(5)];
  if (w.empty()) {
    // Root convention: R, L and U are loops and leave the winding alone.
    if (m == Move::D0) w.push_back(0);
    if (m == Move::D1) w.push_back(1);
  } else {
    switch (m) {
      case Move::R: s.winding += w.add(1); break;
      case Move::L: s.winding += w.add(-1); break;
      case Move::U: w.pop_back(); break;
      case Move::D0: w.push_back(0); break;
      case Move::D1: w.push_back(1); break;
      default: break;
    }
  }
  ++s.time;
  return m;
}

DyadicRational CompactWalk::position() const {
  return DyadicRational::integer(winding) + DyadicRational(BigInt(value), static_cast<unsigned>(depth));
}

namespace {

void compact_horizontal(CompactWalk& s, int delta) {
  if (s.depth == 0) {
    s.winding += delta;
    return;
  }
  const std::uint64_t mask = (std::uint64_t{1} << s.depth) - 1;
  const std::uint64_t next = (s.value + static_cast<std::uint64_t>(static_cast<std::int64_t>(delta))) & mask;
  if (delta > 0 && next == 0) ++s.winding;
  if (delta < 0 && s.value == 0) --s.winding;
  s.value = next;
}

void compact_down(CompactWalk& s, std::uint64_t bit) {
  if (s.depth >= CompactWalk::max_depth) throw DomainError("CompactWalk: depth limit exceeded");
  s.value = (s.value << 1) | bit;
  ++s.depth;
}

}  // namespace

Move walk_step(CompactWalk& s) {
  const bool root = s.depth == 0;
  const bool even = (s.value & 1U) == 0;
  const Move m = primal_order[s.rng.below(primal_degree(root, even))];
  switch (m) {
    case Move::R: compact_horizontal(s, 1); break;
    case Move::L: compact_horizontal(s, -1); break;
    case Move::D: compact_down(s, 0); break;
    case Move::U:
      s.value >>= 1;
      --s.depth;
      break;
    default: break;
  }
  ++s.time;
  return m;
}

Move walk_step_dual(CompactWalk& s) {
  const Move m = dual_order[s.rng.below(5)];
  if (s.depth == 0) {
    if (m == Move::D0) compact_down(s, 0);
    if (m == Move::D1) compact_down(s, 1);
  } else {
    switch (m) {
      case Move::R: compact_horizontal(s, 1); break;
      case Move::L: compact_horizontal(s, -1); break;
      case Move::U:
        s.value >>= 1;
        --s.depth;
        break;
      case Move::D0: compact_down(s, 0); break;
      case Move::D1: compact_down(s, 1); break;
      default: break;
    }
  }
  ++s.time;
  return m;
}

Move walk_step(LatticeWalk& s) {
  const int deg = degree_lattice(s.vertex, s.kind);
  const Move m = primal_order[s.rng.below(static_cast<std::uint32_t>(deg))];
  apply_move(s.vertex, m);
  ++s.time;
  return m;
}

void write_trajectory(std::ostream& os, WalkState s, std::uint64_t steps, bool dual) {
  os << "t,depth,label,move,position_num,position_exp\n";
  auto row = [&](const char* move) {
    const DyadicRational p = s.position();
    os << s.time << ',' << s.depth() << ',' << s.vertex.str() << ',' << move << ',' << p.numerator().str() << ','
       << p.exponent() << '\n';
  };
  row("");
  for (std::uint64_t i = 0; i < steps; ++i) {
    const Move m = dual ? walk_step_dual(s) : walk_step(s);
    row(to_string(m));
  }
}

}  // namespace dyadic
