#include "dyadic/app/tables.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace dyadic::app {

namespace {

std::int64_t i64(std::uint64_t x) { return static_cast<std::int64_t>(x); }

std::string endpoint(std::size_t k, unsigned m) { return std::to_string(k) + "/2^" + std::to_string(m); }

int bit_changes(std::uint64_t k, unsigned m) {
  return m > 1 ? std::popcount((k ^ (k >> 1)) & ((std::uint64_t{1} << (m - 1)) - 1)) : 0;
}

}  // namespace

Table crest_table(const CrestField& f, unsigned max_depth) {
  Table t{{"depth", "label", "value", "normalized_value"}, {}};
  const unsigned top = std::min(f.n - 1, max_depth);
  for (unsigned d = 0; d <= top; ++d) {
    const auto norm = d == 0 ? std::vector<double>{1.0} : normalize_level(f, d);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << d); ++v) {
      t.rows.push_back({std::int64_t{d}, Word::from_value(v, d).str(), f.value(d, v), norm[v]});
    }
  }
  return t;
}

Table histogram_table(const DyadicHistogram& h) {
  Table t{{"bin_index", "left_endpoint", "mass", "density", "bit_changes"}, {}};
  const unsigned m = h.resolution();
  for (std::size_t k = 0; k < h.bins(); ++k) {
    t.rows.push_back({i64(k), endpoint(k, m), h[k], std::ldexp(h[k], static_cast<int>(m)),
                      std::int64_t{bit_changes(k, m)}});
  }
  return t;
}

Table increment_table(const IncrementLaw& law) {
  Table t{{"displacement_num", "mass"}, {}};
  for (int z = -law.half(); z <= law.half(); ++z) t.rows.push_back({std::int64_t{z}, law.at(z)});
  return t;
}

Table edge_table(const RootedLattice& g, const std::vector<EdgeRecord>& edges, std::size_t label_bits) {
  Table t{{"depth_u", "label_u", "depth_v", "label_v", "class", "upper"}, {}};
  for (const auto& e : edges) {
    std::string upper;
    if (e.cls.upper) upper = *e.cls.upper == e.u ? "u" : "v";
    t.rows.push_back({e.u.depth, g.label(e.u).low_bits(label_bits).str(), e.v.depth,
                      g.label(e.v).low_bits(label_bits).str(), std::string(to_string(e.cls.orientation)), upper});
  }
  return t;
}

Table crest_levels_table(const CrestPipeline& p) {
  Table t{{"n", "sweeps", "residual", "esc_0", "esc_1", "norm_0", "norm_1", "norm_00", "norm_01", "norm_10",
           "norm_11"},
          {}};
  for (const auto& l : p.levels) {
    t.rows.push_back({std::int64_t{l.n}, i64(l.sweeps), l.residual, l.raw1[0], l.raw1[1], l.norm1[0], l.norm1[1],
                      l.norm2[0], l.norm2[1], l.norm2[2], l.norm2[3]});
  }
  return t;
}

Table g_profile_table(const GMeasureProfile& p) {
  Table t{{"bin_index", "left_endpoint", "g", "derivative"}, {}};
  for (std::size_t k = 0; k < p.g.size(); ++k) {
    const double d = k < p.derivative.size() ? p.derivative[k] : std::nan("");
    t.rows.push_back({i64(k), endpoint(k, p.resolution), p.g[k], d});
  }
  return t;
}

Table counts_table(const std::vector<std::uint64_t>& counts, unsigned resolution) {
  Table t{{"bin_index", "left_endpoint", "count"}, {}};
  for (std::size_t k = 0; k < counts.size(); ++k) t.rows.push_back({i64(k), endpoint(k, resolution), i64(counts[k])});
  return t;
}

}  // namespace dyadic::app
