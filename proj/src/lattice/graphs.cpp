#include "dyadic/lattice/graphs.hpp"

#include "dyadic/core/errors.hpp"

namespace dyadic {

const char* to_string(Move m) {
  switch (m) {
    case Move::L: return "L";
    case Move::R: return "R";
    case Move::U: return "U";
    case Move::D: return "D";
    case Move::D0: return "D0";
    case Move::D1: return "D1";
  }
  return "?";
}

Move mirror(Move m) {
  switch (m) {
    case Move::L: return Move::R;
    case Move::R: return Move::L;
    case Move::D0: return Move::D1;
    case Move::D1: return Move::D0;
    default: return m;
  }
}

Incidence<Word> neighbors_wrapped(const Word& w) {
  if (w.empty()) {
    return {{w, Move::R}, {w, Move::L}, {Word::parse("0"), Move::D}};
  }
  Incidence<Word> out;
  out.reserve(4);
  out.emplace_back(word_add(w, 1), Move::R);
  out.emplace_back(word_add(w, -1), Move::L);
  out.emplace_back(word_shift(w, Shift::Append0), Move::D);
  if (w.last_bit() == 0) out.emplace_back(word_shift(w, Shift::Pop), Move::U);
  return out;
}

int degree_wrapped(const Word& w) { return w.is_even() && !w.empty() ? 4 : 3; }

Incidence<Word> neighbors_dual(const Word& w) {
  Incidence<Word> out;
  out.reserve(5);
  if (w.empty()) {
    out.emplace_back(w, Move::R);
    out.emplace_back(w, Move::L);
    out.emplace_back(w, Move::U);
  } else {
    out.emplace_back(word_add(w, 1), Move::R);
    out.emplace_back(word_add(w, -1), Move::L);
    out.emplace_back(word_shift(w, Shift::Pop), Move::U);
  }
  out.emplace_back(word_shift(w, Shift::Append0), Move::D0);
  out.emplace_back(word_shift(w, Shift::Append1), Move::D1);
  return out;
}

Incidence<LazyDyadic> neighbors_dual(const LazyDyadic& a) {
  Incidence<LazyDyadic> out;
  out.reserve(5);
  out.emplace_back(lazy_arith(a, LazyOp::Add1), Move::R);
  out.emplace_back(lazy_arith(a, LazyOp::Sub1), Move::L);
  LazyDyadic up = a;
  up.drop_last();
  out.emplace_back(std::move(up), Move::U);
  LazyDyadic d0 = a;
  d0.append(0);
  out.emplace_back(std::move(d0), Move::D0);
  LazyDyadic d1 = a;
  d1.append(1);
  out.emplace_back(std::move(d1), Move::D1);
  return out;
}

Word complement_word(const Word& w) {
  std::vector<std::uint8_t> bits = w.bits();
  for (auto& b : bits) b ^= 1U;
  return Word(std::move(bits));
}

Word reflect_word(const Word& w) {
  if (w.empty()) return w;
  // -v = (~v) + 1 in two's complement on depth bits.
  std::vector<std::uint8_t> bits = w.bits();
  for (auto& b : bits) b ^= 1U;
  Word out(std::move(bits));
  out.add(1);
  return out;
}

namespace {

DyadicRational step_size(std::int64_t depth) { return DyadicRational::pow2(static_cast<int>(-depth)); }

bool has_up(const LatticeVertex& v, LatticeKind kind) {
  if (kind == LatticeKind::GammaPlus && v.depth <= 0) return false;
  return v.label.is_even();
}

}  // namespace

Incidence<LatticeVertex> neighbors_lattice(const LatticeVertex& v, LatticeKind kind) {
  if (kind == LatticeKind::GammaPlus && v.depth < 0) {
    throw DomainError("neighbors_lattice: negative depth in the half graph");
  }
  Incidence<LatticeVertex> out;
  out.reserve(4);
  for (Move m : {Move::R, Move::L, Move::D, Move::U}) {
    if (m == Move::U && !has_up(v, kind)) continue;
    LatticeVertex n = v;
    apply_move(n, m);
    out.emplace_back(std::move(n), m);
  }
  return out;
}

int degree_lattice(const LatticeVertex& v, LatticeKind kind) { return has_up(v, kind) ? 4 : 3; }

void apply_move(LatticeVertex& v, Move m) {
  switch (m) {
    case Move::R:
      v.label.add(1);
      v.position += step_size(v.depth);
      break;
    case Move::L:
      v.label.add(-1);
      v.position -= step_size(v.depth);
      break;
    case Move::D:
      v.label.mul2();
      ++v.depth;
      break;
    case Move::U:
      v.label.div2();
      --v.depth;
      break;
    default:
      throw DomainError("apply_move: dual move on a primal vertex");
  }
}

}  // namespace dyadic
