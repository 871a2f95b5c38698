#pragma once

#include "dyadic/core/lazy_dyadic.hpp"
#include "dyadic/lattice/graphs.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace dyadic {

/// Vertex of a rooted lattice in offset coordinates: the label of
/// (depth m, offset k) is B_m + k, where B_0 = a is the root label and
/// B_{m+1} = 2 B_m + beta_{m+1}, with beta_m = a_m for m <= 0 and 0 below.
struct NodeKey {
  std::int64_t depth = 0;
  std::int64_t offset = 0;
  friend auto operator<=>(const NodeKey&, const NodeKey&) = default;
};

/// Neighbour oracle for the full lattice rooted at (0, a). Answers degree
/// and adjacency queries from offset arithmetic alone, so it also serves as
/// ground truth for the structure-recovery algorithms.
class RootedLattice {
 public:
  struct DepthWindow {
    std::int64_t min_depth;
    std::int64_t max_depth;
  };

  explicit RootedLattice(BitProvider provider, std::optional<DepthWindow> window = std::nullopt);

  static constexpr NodeKey root() { return {0, 0}; }

  int degree(NodeKey v) const;
  bool has_up(NodeKey v) const;
  /// Neighbour along a labelled move; U on an odd vertex throws DomainError.
  NodeKey step(NodeKey v, Move m) const;
  /// Neighbours in counter-clockwise order L, D, R, U.
  std::vector<NodeKey> rotation(NodeKey v) const;
  LazyDyadic label(NodeKey v) const;
  /// Construction-time truth: edges between different depths are vertical.
  static bool is_vertical(NodeKey u, NodeKey v) { return u.depth != v.depth; }

  const BitProvider& provider() const { return provider_; }

 private:
  int beta(std::int64_t m) const;
  void check(NodeKey v) const;

  BitProvider provider_;
  std::optional<DepthWindow> window_;
};

}  // namespace dyadic

template <>
struct std::hash<dyadic::NodeKey> {
  std::size_t operator()(const dyadic::NodeKey& k) const noexcept {
    return std::hash<std::int64_t>{}(k.depth * 0x9e3779b97f4a7c15LL ^ k.offset);
  }
};
