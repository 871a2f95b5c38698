#include "dyadic/lattice/rooted.hpp"

#include "dyadic/core/errors.hpp"

#include <string>

namespace dyadic {

RootedLattice::RootedLattice(BitProvider provider, std::optional<DepthWindow> window)
    : provider_(std::move(provider)), window_(window) {}

int RootedLattice::beta(std::int64_t m) const {
  return m <= 0 ? provider_.bit(static_cast<std::uint64_t>(-m)) : 0;
}

void RootedLattice::check(NodeKey v) const {
  if (window_ && (v.depth < window_->min_depth || v.depth > window_->max_depth)) {
    throw InsufficientContext("RootedLattice: depth " + std::to_string(v.depth) + " outside oracle window");
  }
}

bool RootedLattice::has_up(NodeKey v) const {
  check(v);
  return ((beta(v.depth) + v.offset) & 1) == 0;
}

int RootedLattice::degree(NodeKey v) const { return has_up(v) ? 4 : 3; }

NodeKey RootedLattice::step(NodeKey v, Move m) const {
  check(v);
  switch (m) {
    case Move::L: return {v.depth, v.offset - 1};
    case Move::R: return {v.depth, v.offset + 1};
    case Move::D: return {v.depth + 1, 2 * v.offset - beta(v.depth + 1)};
    case Move::U:
      if (!has_up(v)) throw DomainError("RootedLattice::step: odd vertex has no up edge");
      return {v.depth - 1, (v.offset + beta(v.depth)) / 2};
    default:
      throw DomainError("RootedLattice::step: dual move");
  }
}

std::vector<NodeKey> RootedLattice::rotation(NodeKey v) const {
  std::vector<NodeKey> out{step(v, Move::L), step(v, Move::D), step(v, Move::R)};
  if (has_up(v)) out.push_back(step(v, Move::U));
  return out;
}

LazyDyadic RootedLattice::label(NodeKey v) const {
  LazyDyadic b(provider_);
  for (std::int64_t m = 0; m < v.depth; ++m) b.mul2();
  for (std::int64_t m = 0; m > v.depth; --m) b.drop_last();
  for (std::int64_t k = 0; k < v.offset; ++k) b.add(1);
  for (std::int64_t k = 0; k > v.offset; --k) b.add(-1);
  return b;
}

}  // namespace dyadic
