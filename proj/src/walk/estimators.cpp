#include "dyadic/walk/estimators.hpp"

#include "dyadic/core/errors.hpp"
#include "dyadic/core/lazy_dyadic.hpp"
#include "dyadic/core/parallel.hpp"
#include "dyadic/lattice/rooted.hpp"

#include <cmath>
#include <optional>
#include <string>

namespace dyadic {

LeavingRecord run_with_leaving_times(WalkState s, std::size_t n, std::size_t c, std::uint64_t budget) {
  if (c < 1) throw DomainError("run_with_leaving_times: confirmation depth must be >= 1");
  const std::size_t d0 = s.depth();
  if (n < d0) throw DomainError("run_with_leaving_times: target level above the start");

  struct Visit {
    std::uint64_t time = 0;
    Word vertex;
    std::int64_t winding = 0;
  };
  std::vector<Visit> last(n + 1);
  std::vector<Move> moves;
  const DyadicRational start = s.position();
  const std::uint64_t t0 = s.time;

  auto note = [&] {
    if (s.depth() <= n) last[s.depth()] = {s.time, s.vertex, s.winding};
  };
  note();
  while (s.depth() < n + c) {
    if (s.time - t0 >= budget) {
      throw BudgetExceeded("run_with_leaving_times: no confirmation after " + std::to_string(budget) + " steps");
    }
    moves.push_back(walk_step(s));
    note();
  }

  LeavingRecord rec;
  rec.target_level = n;
  rec.confirmation = c;
  rec.steps = s.time - t0;
  rec.start_position = start;
  DyadicRational prev = start;
  for (std::size_t k = d0; k <= n; ++k) {
    LevelRecord lr;
    lr.level = k;
    lr.time = last[k].time;
    lr.vertex = last[k].vertex;
    lr.position = DyadicRational::integer(last[k].winding) + position_of(lr.vertex);
    lr.increment = lr.position - prev;
    prev = lr.position;
    if (k < n) {
      lr.segment.assign(moves.begin() + static_cast<std::ptrdiff_t>(last[k].time - t0),
                        moves.begin() + static_cast<std::ptrdiff_t>(last[k + 1].time - t0));
    }
    rec.levels.push_back(std::move(lr));
  }
  return rec;
}

double LeavingDistribution::mass(std::size_t level, std::uint64_t v) const {
  const std::uint64_t accepted = samples - budget_exceeded;
  return accepted ? static_cast<double>(counts[level][v]) / static_cast<double>(accepted) : 0.0;
}

double LeavingDistribution::std_error(std::size_t level, std::uint64_t v) const {
  const std::uint64_t accepted = samples - budget_exceeded;
  const double p = mass(level, v);
  return accepted ? std::sqrt(p * (1 - p) / static_cast<double>(accepted)) : 0.0;
}

namespace {

constexpr std::size_t walker_chunk = 4096;

void check_compact(std::size_t depth) {
  if (depth > static_cast<std::size_t>(CompactWalk::max_depth)) {
    throw DomainError("walk depth " + std::to_string(depth) + " exceeds the packed-word limit");
  }
}

}  // namespace

LeavingDistribution leaving_distribution(std::size_t n, std::uint64_t samples, const WalkOptions& opt,
                                         bool record_gaps) {
  check_compact(n + opt.confirmation);
  const std::size_t target = n + opt.confirmation;

  struct Partial {
    std::vector<std::vector<std::uint64_t>> counts;
    std::vector<std::vector<std::uint64_t>> gaps;
    std::uint64_t rejected = 0;
  };
  std::vector<Partial> parts(chunk_count(samples, walker_chunk));

  parallel_chunks(samples, walker_chunk, opt.threads, [&](std::size_t ci, std::size_t begin, std::size_t end) {
    Partial& part = parts[ci];
    part.counts.assign(n + 1, {});
    for (std::size_t k = 0; k <= n; ++k) part.counts[k].assign(std::size_t{1} << k, 0);
    if (record_gaps) part.gaps.assign(n, {});
    std::vector<std::uint64_t> last_time(n + 1);
    std::vector<std::uint64_t> last_value(n + 1);
    for (std::size_t i = begin; i < end; ++i) {
      CompactWalk w;
      w.rng = CounterRng(opt.seed, i);
      last_time[0] = 0;
      last_value[0] = 0;
      bool ok = true;
      while (static_cast<std::size_t>(w.depth) < target) {
        if (w.time >= opt.budget) {
          ok = false;
          break;
        }
        walk_step(w);
        if (static_cast<std::size_t>(w.depth) <= n) {
          last_time[w.depth] = w.time;
          last_value[w.depth] = w.value;
        }
      }
      if (!ok) {
        ++part.rejected;
        continue;
      }
      for (std::size_t k = 0; k <= n; ++k) ++part.counts[k][last_value[k]];
      if (record_gaps) {
        for (std::size_t k = 0; k < n; ++k) part.gaps[k].push_back(last_time[k + 1] - last_time[k]);
      }
    }
  });

  LeavingDistribution out;
  out.n = n;
  out.samples = samples;
  out.counts.assign(n + 1, {});
  for (std::size_t k = 0; k <= n; ++k) out.counts[k].assign(std::size_t{1} << k, 0);
  if (record_gaps) out.gaps.assign(n, {});
  for (const auto& part : parts) {
    out.budget_exceeded += part.rejected;
    for (std::size_t k = 0; k <= n; ++k) {
      for (std::size_t v = 0; v < part.counts[k].size(); ++v) out.counts[k][v] += part.counts[k][v];
    }
    for (std::size_t k = 0; k < part.gaps.size(); ++k) {
      out.gaps[k].insert(out.gaps[k].end(), part.gaps[k].begin(), part.gaps[k].end());
    }
  }
  return out;
}

namespace {

// Batch means for a per-step indicator and depth increment, shared by the
// primal estimators. `step` advances one step and returns
// {was_at_degree3, depth_change}.
template <class Step>
void batch_means(std::uint64_t steps_per_batch, unsigned batches, Step&& step, Estimate& p3, Estimate& speed,
                 Estimate& gap) {
  for (unsigned b = 0; b < batches; ++b) {
    std::uint64_t deg3 = 0;
    std::int64_t dz = 0;
    for (std::uint64_t t = 0; t < steps_per_batch; ++t) {
      const auto [odd, d] = step();
      deg3 += odd;
      dz += d;
    }
    const double f = static_cast<double>(deg3) / static_cast<double>(steps_per_batch);
    const double v = static_cast<double>(dz) / static_cast<double>(steps_per_batch);
    p3.add(f);
    speed.add(v);
    gap.add(v - f / 3.0);
  }
}

}  // namespace

P3Result estimate_p3(std::uint64_t total_steps, const WalkOptions& opt, P3Graph graph, unsigned walkers,
                     unsigned batches) {
  if (total_steps < 10'000) throw DomainError("estimate_p3: need at least 10^4 steps");
  walkers = std::max(walkers, 1U);
  batches = std::max(batches, 1U);
  const std::uint64_t per_batch = total_steps / (static_cast<std::uint64_t>(walkers) * batches);
  std::vector<P3Result> parts(walkers);

  parallel_chunks(walkers, 1, opt.threads, [&](std::size_t wi, std::size_t, std::size_t) {
    P3Result& r = parts[wi];
    if (graph == P3Graph::Wrapped) {
      WalkState s = start_walk(opt.seed, wi);
      batch_means(
          per_batch, batches,
          [&] {
            const bool odd = s.vertex.empty() || s.vertex.last_bit() == 1;
            const auto d = static_cast<std::int64_t>(s.depth());
            walk_step(s);
            return std::pair<int, std::int64_t>{odd, static_cast<std::int64_t>(s.depth()) - d};
          },
          r.p3, r.speed, r.speed_gap);
    } else {
      // Label dynamics of the full lattice from a seeded root label.
      LazyDyadic a(BitProvider::seeded(mix64(opt.seed, 0x5eed0000 + wi)));
      CounterRng rng(opt.seed, wi);
      batch_means(
          per_batch, batches,
          [&] {
            const bool even = a.is_even();
            const std::uint32_t pick = rng.below(even ? 4 : 3);
            std::int64_t d = 0;
            switch (pick) {
              case 0: a.add(1); break;
              case 1: a.add(-1); break;
              case 2: a.mul2(); d = 1; break;
              default: a.div2(); d = -1; break;
            }
            return std::pair<int, std::int64_t>{!even, d};
          },
          r.p3, r.speed, r.speed_gap);
    }
    r.steps = per_batch * batches;
  });

  P3Result out;
  for (const auto& r : parts) {
    out.p3.merge(r.p3);
    out.speed.merge(r.speed);
    out.speed_gap.merge(r.speed_gap);
    out.steps += r.steps;
  }
  return out;
}

Estimate estimate_dual_speed(std::uint64_t total_steps, const WalkOptions& opt, unsigned walkers,
                             unsigned batches) {
  walkers = std::max(walkers, 1U);
  batches = std::max(batches, 1U);
  const std::uint64_t per_batch = std::max<std::uint64_t>(total_steps / (std::uint64_t{walkers} * batches), 1);
  std::vector<Estimate> parts(walkers);
  parallel_chunks(walkers, 1, opt.threads, [&](std::size_t wi, std::size_t, std::size_t) {
    WalkState s = start_walk(opt.seed, wi);
    for (unsigned b = 0; b < batches; ++b) {
      const auto d0 = static_cast<std::int64_t>(s.depth());
      for (std::uint64_t t = 0; t < per_batch; ++t) walk_step_dual(s);
      parts[wi].add(static_cast<double>(static_cast<std::int64_t>(s.depth()) - d0) / static_cast<double>(per_batch));
    }
  });
  Estimate out;
  for (const auto& e : parts) out.merge(e);
  return out;
}

namespace {

template <class W, class StepFn>
std::optional<std::pair<W, std::uint64_t>> run_to_leaving(W w, std::size_t N, std::size_t target,
                                                          std::uint64_t budget, StepFn&& step) {
  W at_level = w;
  while (w.depth < static_cast<int>(target)) {
    if (w.time >= budget) return std::nullopt;
    step(w);
    if (w.depth == static_cast<int>(N)) at_level = w;
  }
  return std::pair{at_level, w.time};
}

}  // namespace

HarmonicSample sample_harmonic_point(std::size_t N, std::uint64_t stream, const WalkOptions& opt, bool dual,
                                     double abs_increment_bound) {
  const std::size_t target = N + opt.confirmation;
  HarmonicSample out;
  out.error_bound = abs_increment_bound * std::ldexp(1.0, -static_cast<int>(N));
  if (target <= static_cast<std::size_t>(CompactWalk::max_depth)) {
    CompactWalk w;
    w.rng = CounterRng(opt.seed, stream);
    auto r = dual ? run_to_leaving(w, N, target, opt.budget, [](CompactWalk& x) { walk_step_dual(x); })
                  : run_to_leaving(w, N, target, opt.budget, [](CompactWalk& x) { walk_step(x); });
    if (!r) throw BudgetExceeded("sample_harmonic_point: budget exhausted");
    out.position = r->first.position();
    out.steps = r->second;
  } else {
    WalkState s = start_walk(opt.seed, stream);
    WalkState at_level = s;
    while (s.depth() < target) {
      if (s.time >= opt.budget) throw BudgetExceeded("sample_harmonic_point: budget exhausted");
      dual ? walk_step_dual(s) : walk_step(s);
      if (s.depth() == N) at_level = s;
    }
    out.position = at_level.position();
    out.steps = s.time;
  }
  out.wrapped = out.position.frac();
  return out;
}

HarmonicCounts harmonic_sample_counts(unsigned m, std::uint64_t samples, std::size_t N, const WalkOptions& opt,
                                      bool dual) {
  if (m > N) throw DomainError("harmonic_sample_counts: resolution exceeds the sampling depth");
  const std::size_t target = N + opt.confirmation;
  check_compact(target);
  struct Partial {
    std::vector<std::uint64_t> counts;
    std::uint64_t rejected = 0;
  };
  std::vector<Partial> parts(chunk_count(samples, walker_chunk));
  parallel_chunks(samples, walker_chunk, opt.threads, [&](std::size_t ci, std::size_t begin, std::size_t end) {
    Partial& part = parts[ci];
    part.counts.assign(std::size_t{1} << m, 0);
    for (std::size_t i = begin; i < end; ++i) {
      CompactWalk w;
      w.rng = CounterRng(opt.seed, i);
      auto r = dual ? run_to_leaving(w, N, target, opt.budget, [](CompactWalk& x) { walk_step_dual(x); })
                    : run_to_leaving(w, N, target, opt.budget, [](CompactWalk& x) { walk_step(x); });
      if (!r) {
        ++part.rejected;
        continue;
      }
      ++part.counts[r->first.value >> (N - m)];
    }
  });
  HarmonicCounts out;
  out.resolution = m;
  out.samples = samples;
  out.counts.assign(std::size_t{1} << m, 0);
  for (const auto& p : parts) {
    out.budget_exceeded += p.rejected;
    for (std::size_t k = 0; k < p.counts.size(); ++k) out.counts[k] += p.counts[k];
  }
  return out;
}

std::uint64_t stationary_steps(std::size_t bits, bool dual) {
  // Primal depth speed is at least 1/9, dual speed 1/5; the extra 4096 steps
  // keep short samples well clear of the starting label.
  const std::uint64_t need = bits + 64;
  return (dual ? 10 : 9) * need + 4096;
}

Word sample_stationary_bits(std::size_t bits, std::uint64_t stream, const WalkOptions& opt, bool dual) {
  LazyDyadic a;
  CounterRng rng(opt.seed, stream);
  const std::uint64_t steps = stationary_steps(bits, dual);
  for (std::uint64_t t = 0; t < steps; ++t) {
    if (dual) {
      switch (rng.below(5)) {
        case 0: a.add(1); break;
        case 1: a.add(-1); break;
        case 2: a.drop_last(); break;
        case 3: a.append(0); break;
        default: a.append(1); break;
      }
    } else {
      const bool even = a.is_even();
      switch (rng.below(even ? 4 : 3)) {
        case 0: a.add(1); break;
        case 1: a.add(-1); break;
        case 2: a.mul2(); break;
        default: a.div2(); break;
      }
    }
  }
  return a.low_bits(bits);
}

Word sample_stationary_string(std::size_t L, std::uint64_t stream, const WalkOptions& opt, bool dual) {
  if (L > 64) throw DomainError("sample_stationary_string: L must be <= 64");
  return sample_stationary_bits(L, stream, opt, dual);
}

DriftTable two_step_drift_table() {
  std::optional<Rational> cls[3];
  auto record = [&](int c, Rational r) {
    if (cls[c] && *cls[c] != r) throw StructureError("two_step_drift_table: class is not homogeneous");
    cls[c] = r;
  };
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const RootedLattice g(seed == 0 ? BitProvider::zero_tail() : BitProvider::seeded(seed));
    for (std::int64_t m = -4; m <= 4; ++m) {
      for (std::int64_t k = -16; k <= 16; ++k) {
        const NodeKey x{m, k};
        const auto first = g.rotation(x);
        Rational e = 0;
        for (const NodeKey& y : first) {
          const auto second = g.rotation(y);
          for (const NodeKey& z : second) {
            e += Rational(z.depth - x.depth, static_cast<std::int64_t>(first.size() * second.size()));
          }
        }
        int c = 0;
        if (g.degree(x) == 4) c = g.degree(g.step(x, Move::U)) == 3 ? 1 : 2;
        record(c, e);
      }
    }
  }
  if (!cls[0] || !cls[1] || !cls[2]) throw StructureError("two_step_drift_table: class not observed");
  return {*cls[0], *cls[1], *cls[2]};
}

double depth_gain_tail(std::uint64_t t, std::uint64_t samples, const WalkOptions& opt) {
  std::vector<std::uint64_t> hits(chunk_count(samples, walker_chunk), 0);
  parallel_chunks(samples, walker_chunk, opt.threads, [&](std::size_t ci, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      WalkState s = start_walk(opt.seed, i);
      for (std::uint64_t j = 0; j < 2 * t; ++j) walk_step(s);
      hits[ci] += s.depth() <= 1;
    }
  });
  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  return static_cast<double>(total) / static_cast<double>(samples);
}

}  // namespace dyadic
