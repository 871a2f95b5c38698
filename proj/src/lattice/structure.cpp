#include "dyadic/lattice/structure.hpp"

#include "dyadic/core/errors.hpp"

#include <algorithm>
#include <deque>
#include <ostream>
#include <unordered_set>

namespace dyadic {

const char* to_string(Orientation o) { return o == Orientation::Horizontal ? "horizontal" : "vertical"; }

std::optional<int> avoiding_distance(const RootedLattice& g, NodeKey from, NodeKey to, NodeKey avoid, int radius) {
  if (from == to) return 0;
  std::unordered_map<NodeKey, int> dist{{from, 0}};
  std::deque<NodeKey> queue{from};
  while (!queue.empty()) {
    const NodeKey u = queue.front();
    queue.pop_front();
    const int du = dist[u];
    if (du >= radius) continue;
    for (const NodeKey& w : g.rotation(u)) {
      if (w == avoid || dist.count(w)) continue;
      if (w == to) return du + 1;
      dist.emplace(w, du + 1);
      queue.push_back(w);
    }
  }
  return std::nullopt;
}

Orientation EdgeClassifier::classify(NodeKey u, NodeKey v) {
  const auto key = u < v ? std::pair{u, v} : std::pair{v, u};
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  const auto nu = adjacent(u);
  if (std::find(nu.begin(), nu.end(), v) == nu.end()) throw StructureError("classify_edge: not an edge");
  const int du = g_.degree(u);
  const int dv = g_.degree(v);
  Orientation result;
  if (du == 4 && dv == 4) {
    result = Orientation::Vertical;
  } else if (du == 3 && dv == 3) {
    throw StructureError("classify_edge: two adjacent degree-3 vertices");
  } else {
    const NodeKey x = du == 3 ? u : v;
    const NodeKey y = du == 3 ? v : u;
    std::vector<NodeKey> even;
    for (const NodeKey& w : adjacent(y)) {
      if (g_.degree(w) == 4) even.push_back(w);
    }
    if (even.size() >= 2) {
      result = Orientation::Horizontal;
    } else if (even.empty()) {
      throw StructureError("classify_edge: degree-4 vertex without degree-4 neighbours");
    } else {
      const auto d = avoiding_distance(g_, x, even.front(), y, 3);
      result = d ? Orientation::Horizontal : Orientation::Vertical;
    }
  }
  cache_.emplace(key, result);
  return result;
}

int EdgeClassifier::count_hvhh(NodeKey from, NodeKey to) {
  static constexpr Orientation pattern[] = {Orientation::Horizontal, Orientation::Vertical, Orientation::Horizontal,
                                            Orientation::Horizontal};
  int count = 0;
  // Depth-first enumeration of walks following the pattern.
  auto rec = [&](auto&& self, NodeKey at, int i) -> void {
    if (i == 4) {
      count += at == to;
      return;
    }
    for (const NodeKey& w : adjacent(at)) {
      if (classify(at, w) == pattern[i]) self(self, w, i + 1);
    }
  };
  rec(rec, from, 0);
  return count;
}

NodeKey EdgeClassifier::orient(NodeKey u, NodeKey v) {
  if (classify(u, v) != Orientation::Vertical) throw StructureError("orient_vertical_edge: edge is horizontal");
  const int from_u = count_hvhh(u, v);
  const int from_v = count_hvhh(v, u);
  if (from_u == 2 && from_v == 0) return u;
  if (from_v == 2 && from_u == 0) return v;
  throw StructureError("orient_vertical_edge: pattern counts " + std::to_string(from_u) + "/" +
                       std::to_string(from_v));
}

EdgeClass EdgeClassifier::describe(NodeKey u, NodeKey v) {
  EdgeClass c;
  c.orientation = classify(u, v);
  if (c.orientation == Orientation::Vertical) c.upper = orient(u, v);
  return c;
}

Orientation classify_edge(const RootedLattice& g, NodeKey u, NodeKey v) { return EdgeClassifier(g).classify(u, v); }

NodeKey orient_vertical_edge(const RootedLattice& g, NodeKey u, NodeKey v) { return EdgeClassifier(g).orient(u, v); }

Word read_root_bits(const RootedLattice& g, std::size_t k) {
  std::vector<std::uint8_t> bits(k);
  NodeKey at = RootedLattice::root();
  for (std::size_t i = 0; i < k; ++i) {
    if (g.degree(at) == 4) {
      bits[k - 1 - i] = 0;
    } else {
      bits[k - 1 - i] = 1;
      at = g.step(at, Move::L);
    }
    at = g.step(at, Move::U);
  }
  return Word(std::move(bits));
}

bool has_nontrivial_automorphism(const BitProvider& p) { return p.eventually_periodic(); }

std::vector<EdgeRecord> classify_window(const RootedLattice& g, std::int64_t min_depth, std::int64_t max_depth,
                                        std::int64_t max_offset) {
  EdgeClassifier classifier(g);
  std::vector<EdgeRecord> out;
  for (std::int64_t m = min_depth; m <= max_depth; ++m) {
    for (std::int64_t k = -max_offset; k <= max_offset; ++k) {
      const NodeKey u{m, k};
      if (k < max_offset) {
        const NodeKey v = g.step(u, Move::R);
        out.push_back({u, v, classifier.describe(u, v)});
      }
      if (m < max_depth) {
        const NodeKey v = g.step(u, Move::D);
        if (v.offset >= -max_offset && v.offset <= max_offset) out.push_back({u, v, classifier.describe(u, v)});
      }
    }
  }
  return out;
}

void write_edge_dump(std::ostream& os, const RootedLattice& g, const std::vector<EdgeRecord>& edges,
                     std::size_t label_bits) {
  os << "depth_u,label_u,depth_v,label_v,class,upper\n";
  for (const auto& e : edges) {
    os << e.u.depth << ',' << g.label(e.u).low_bits(label_bits).str() << ',' << e.v.depth << ','
       << g.label(e.v).low_bits(label_bits).str() << ',' << to_string(e.cls.orientation) << ',';
    if (e.cls.upper) os << (*e.cls.upper == e.u ? "u" : "v");
    os << '\n';
  }
}

}  // namespace dyadic
