#pragma once

#include "dyadic/core/word.hpp"
#include "dyadic/lattice/rooted.hpp"

#include <iosfwd>
#include <optional>
#include <unordered_map>
#include <vector>

namespace dyadic {

enum class Orientation { Horizontal, Vertical };

const char* to_string(Orientation o);

struct EdgeClass {
  Orientation orientation = Orientation::Horizontal;
  std::optional<NodeKey> upper;  // set for vertical edges
};

/// Breadth-first distance from `from` to `to` in the graph with `avoid`
/// deleted, exploring at most `radius` steps. Uses only the unlabelled
/// adjacency of the oracle.
std::optional<int> avoiding_distance(const RootedLattice& g, NodeKey from, NodeKey to, NodeKey avoid, int radius);

/// Recovers edge orientations from degrees and unlabelled adjacency only.
/// Keeps a cache of classified edges, so reuse one instance for a region.
class EdgeClassifier {
 public:
  explicit EdgeClassifier(const RootedLattice& g) : g_(g) {}

  /// Throws StructureError for non-edges or impossible degree patterns.
  Orientation classify(NodeKey u, NodeKey v);
  /// Upper endpoint of a vertical edge, found by counting H,V,H,H walks.
  NodeKey orient(NodeKey u, NodeKey v);
  EdgeClass describe(NodeKey u, NodeKey v);

 private:
  int count_hvhh(NodeKey from, NodeKey to);
  std::vector<NodeKey> adjacent(NodeKey v) const { return g_.rotation(v); }

  struct PairHash {
    std::size_t operator()(const std::pair<NodeKey, NodeKey>& p) const noexcept {
      return std::hash<NodeKey>{}(p.first) * 31 + std::hash<NodeKey>{}(p.second);
    }
  };

  const RootedLattice& g_;
  std::unordered_map<std::pair<NodeKey, NodeKey>, Orientation, PairHash> cache_;
};

Orientation classify_edge(const RootedLattice& g, NodeKey u, NodeKey v);
NodeKey orient_vertical_edge(const RootedLattice& g, NodeKey u, NodeKey v);

/// Reads k root bits by the degree walk: degree 4 means bit 0 and step up,
/// degree 3 means bit 1 and step left then up. Returned with a_0 as the last
/// character, matching LazyDyadic::low_bits.
Word read_root_bits(const RootedLattice& g, std::size_t k);

/// The rooted lattice has a nontrivial automorphism iff the root label is
/// eventually periodic; for providers this is decided by the tail kind.
bool has_nontrivial_automorphism(const BitProvider& p);

struct EdgeRecord {
  NodeKey u;
  NodeKey v;
  EdgeClass cls;
};

/// All edges with both endpoints at depths [min_depth, max_depth] and
/// offsets |k| <= max_offset, classified and oriented structurally.
std::vector<EdgeRecord> classify_window(const RootedLattice& g, std::int64_t min_depth, std::int64_t max_depth,
                                        std::int64_t max_offset);

/// CSV columns depth_u, label_u, depth_v, label_v, class, upper. Labels are
/// the low `label_bits` bits of each endpoint label in Word format.
void write_edge_dump(std::ostream& os, const RootedLattice& g, const std::vector<EdgeRecord>& edges,
                     std::size_t label_bits = 16);

}  // namespace dyadic
