#include "dyadic/app/commands.hpp"

#include "dyadic/app/emit.hpp"
#include "dyadic/app/tables.hpp"
#include "dyadic/app/verify.hpp"
#include "dyadic/core/errors.hpp"
#include "dyadic/core/hash.hpp"
#include "dyadic/dirichlet/crest.hpp"
#include "dyadic/dirichlet/k1_law.hpp"
#include "dyadic/lattice/structure.hpp"
#include "dyadic/measure/harmonic.hpp"
#include "dyadic/measure/stationary.hpp"
#include "dyadic/walk/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <optional>
#include <sstream>

namespace dyadic::app {

namespace {

using nlohmann::json;

json estimate_json(const Estimate& e) {
  return {{"value", e.value()}, {"std_error", e.std_error()}, {"samples", e.samples()}};
}

json extrapolation_json(const Extrapolation& x) {
  json j{{"limit", x.limit},
         {"slope", x.slope},
         {"rms_residual", x.rms_residual},
         {"max_residual", x.max_residual},
         {"window", x.window},
         {"fit_warning", x.fit_warning}};
  if (x.fit_warning) j["warning"] = x.warning;
  return j;
}

unsigned as_unsigned(const ExperimentConfig& cfg, const std::string& key) {
  const std::uint64_t v = cfg.count(key);
  if (v > 0xffffffffULL) throw DomainError("parameter '" + key + "' is too large");
  return static_cast<unsigned>(v);
}

DirichletOptions dirichlet_options(const ExperimentConfig& cfg) {
  DirichletOptions o;
  o.tol = cfg.real("tol");
  o.max_sweeps = cfg.count("max-sweeps");
  o.threads = cfg.threads;
  if (!(o.tol > 0)) throw DomainError("tol must be positive");
  return o;
}

WalkOptions walk_options(const ExperimentConfig& cfg) {
  WalkOptions o;
  o.seed = cfg.seed;
  o.confirmation = cfg.count("confirmation");
  o.budget = cfg.count("budget");
  o.threads = cfg.threads;
  return o;
}

IncrementLaw law_from(const ExperimentConfig& cfg) {
  return k1_law(as_unsigned(cfg, "inner"), as_unsigned(cfg, "target"), as_unsigned(cfg, "outer"),
                dirichlet_options(cfg), cfg.flag("symmetrize"), true);
}

std::vector<Word> parse_patterns(const std::string& s) {
  std::vector<Word> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw DomainError("empty pattern in '" + s + "'");
    out.push_back(Word::parse(item));
  }
  return out;
}

struct Writer {
  const ExperimentConfig& cfg;
  RunResult& r;
  void table(const std::string& stem, const Table& t) { r.files.push_back(write_table(cfg.out, stem, t, cfg.format)); }
  void summary(const std::string& name, const json& j) {
    r.summary = j;
    r.files.push_back(write_json(cfg.out, name, j));
  }
};

void run_crest(const ExperimentConfig& cfg, Writer& w) {
  const unsigned n = as_unsigned(cfg, "max-depth");
  if (n < 5) throw DomainError("crest: max-depth must be at least 5 for the extrapolation");
  const CrestPipeline p = run_crest_pipeline(n, dirichlet_options(cfg), cfg.count("window"));
  w.table("crest_field", crest_table(p.last, as_unsigned(cfg, "dump-depth")));
  w.table("crest_levels", crest_levels_table(p));
  const double e0 = p.esc0.limit;
  json j{{"esc0", extrapolation_json(p.esc0)},
         {"esc1", extrapolation_json(p.esc1)},
         {"raw_sum", extrapolation_json(p.raw_sum)},
         {"p3", p.p3},
         {"identities",
          {{"esc00", {{"value", p.esc2[0].limit}, {"relation", 6 * e0 - 3}}},
           {"esc01", {{"value", p.esc2[1].limit}, {"relation", p.esc1.limit / 2}}},
           {"esc10", {{"value", p.esc2[2].limit}, {"relation", 3 - 5 * e0}}},
           {"esc11", {{"value", p.esc2[3].limit}, {"relation", p.esc1.limit / 2}}}}}};
  w.summary("crest_summary.json", j);
}

void run_stationary_chain(const ExperimentConfig& cfg, Writer& w) {
  const std::string lead = cfg.text("leading");
  if (lead != "zero" && lead != "uniform") throw DomainError("leading must be zero or uniform");
  const LeadingBit policy = lead == "zero" ? LeadingBit::Zero : LeadingBit::Uniform;
  const double tol = cfg.real("tol");
  const std::uint64_t iters = cfg.count("max-iterations");
  const StationaryChain c = truncated_stationary(as_unsigned(cfg, "length"), tol, policy, cfg.threads, iters);
  w.table("stationary_histogram", histogram_table(c.histogram()));
  const unsigned lo = as_unsigned(cfg, "trend-from"), hi = as_unsigned(cfg, "trend-to");
  if (lo <= hi) {
    const unsigned bits = as_unsigned(cfg, "trend-bits");
    if (bits < 1 || bits >= lo) throw DomainError("trend-bits must lie in [1, trend-from)");
    // marginal_l1 compares the whole previous chain with this chain's marginal
    // on the same bits; the fixed leading bit keeps it from shrinking, so
    // low_bits_l1 repeats the comparison on a fixed number of low bits.
    Table t{{"L", "implied_p3", "iterations", "marginal_l1", "low_bits_l1"}, {}};
    auto l1 = [](const std::vector<double>& a, const std::vector<double>& b) {
      double d = 0.0;
      for (std::size_t k = 0; k < a.size(); ++k) d += std::fabs(a[k] - b[k]);
      return d;
    };
    std::optional<StationaryChain> prev;
    for (unsigned L = lo; L <= hi; ++L) {
      StationaryChain cur = truncated_stationary(L, tol, policy, cfg.threads, iters);
      Cell full = std::string(), low = std::string();
      if (prev) {
        full = l1(cur.marginal(L - 1), prev->pi);
        low = l1(cur.marginal(bits), prev->marginal(bits));
      }
      t.rows.push_back({std::int64_t{L}, cur.implied_p3(), static_cast<std::int64_t>(cur.iterations), full, low});
      prev = std::move(cur);
    }
    w.table("stationary_trend", t);
  }
  w.summary("stationary_chain.json",
            {{"implied_p3", c.implied_p3()}, {"iterations", c.iterations}, {"last_change", c.last_change}});
}

json law_json(const IncrementLaw& law) {
  return {{"raw_total", law.raw_total},       {"truncation_tv", law.truncation_tv}, {"abs_mean", law.abs_mean()},
          {"symmetrized", law.symmetrized},   {"sweeps", law.sweeps},               {"residual", law.residual},
          {"mass_at_zero", law.at(0)}};
}

void run_k1(const ExperimentConfig& cfg, Writer& w) {
  const IncrementLaw law = law_from(cfg);
  w.table("k1_law", increment_table(law));
  w.summary("k1_law.json", law_json(law));
}

void run_harmonic(const ExperimentConfig& cfg, Writer& w) {
  const IncrementLaw law = law_from(cfg);
  const unsigned res = as_unsigned(cfg, "resolution");
  if (cfg.count("tv-to") > res) throw DomainError("harmonic: tv-to must not exceed resolution");
  const HarmonicHistogram h = harmonic_histogram(law, as_unsigned(cfg, "terms"), res, cfg.threads);
  const GMeasureProfile g = g_profile(h.histogram);
  const TwoBitStats tb = two_bit_statistics(h.histogram, h.tail_bound);
  const auto tv = singularity_report(h.histogram, as_unsigned(cfg, "tv-from"), as_unsigned(cfg, "tv-to"));
  w.table("harmonic_histogram", histogram_table(h.histogram));
  w.table("g_profile", g_profile_table(g));
  w.summary("harmonic_summary.json",
            {{"law", law_json(law)},
             {"tail_bound", h.tail_bound},
             {"first_bit_mass", h.histogram.coarsen(1)[0]},
             {"two_bit",
              {{"m00", tb.m00}, {"m01", tb.m01}, {"m10", tb.m10}, {"m11", tb.m11}, {"excess", tb.excess}}},
             {"entropy", g.entropy},
             {"g_quarter", g.g[h.histogram.bins() / 4]},
             {"flagged_bins", g.flagged.size()},
             {"tv_to_uniform", singularity_json(tv)}});
}

void run_mc(const ExperimentConfig& cfg, Writer& w) {
  const WalkOptions opt = walk_options(cfg);
  const std::string& kind = cfg.mode;
  if (kind == "p3" || kind == "speed") {
    const std::string graph = cfg.text("graph");
    if (graph != "wrapped" && graph != "gamma-a") throw DomainError("graph must be wrapped or gamma-a");
    const P3Result r = estimate_p3(cfg.count("steps"), opt, graph == "wrapped" ? P3Graph::Wrapped : P3Graph::GammaA,
                                   as_unsigned(cfg, "walkers"), as_unsigned(cfg, "batches"));
    w.summary("mc_" + kind + ".json", {{"p3", estimate_json(r.p3)},
                                       {"speed", estimate_json(r.speed)},
                                       {"speed_minus_p3_over_3", estimate_json(r.speed_gap)},
                                       {"steps", r.steps}});
  } else if (kind == "dual-speed") {
    const Estimate e = estimate_dual_speed(cfg.count("steps"), opt, as_unsigned(cfg, "walkers"), as_unsigned(cfg, "batches"));
    w.summary("mc_dual_speed.json", {{"speed", estimate_json(e)}});
  } else if (kind == "leaving") {
    const std::size_t n = cfg.count("levels");
    const LeavingDistribution d = leaving_distribution(n, cfg.count("samples"), opt);
    Table t{{"level", "label", "count", "mass", "std_error"}, {}};
    for (std::size_t k = 1; k <= n; ++k) {
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << k); ++v) {
        t.rows.push_back({static_cast<std::int64_t>(k), Word::from_value(v, k).str(),
                          static_cast<std::int64_t>(d.counts[k][v]), d.mass(k, v), d.std_error(k, v)});
      }
    }
    w.table("mc_leaving", t);
    w.summary("mc_leaving.json", {{"samples", d.samples}, {"budget_exceeded", d.budget_exceeded}});
  } else if (kind == "harmonic-sample" || kind == "dual-harmonic") {
    const bool dual = kind == "dual-harmonic";
    const unsigned m = as_unsigned(cfg, "resolution");
    const HarmonicCounts c = harmonic_sample_counts(m, cfg.count("samples"), cfg.count("depth"), opt, dual);
    w.table(dual ? "mc_dual_harmonic" : "mc_harmonic_sample", counts_table(c.counts, m));
    json j{{"samples", c.samples}, {"budget_exceeded", c.budget_exceeded}};
    if (dual) j["chi_square"] = chi_square_uniform(c.counts).to_json();
    w.summary(dual ? "mc_dual_harmonic.json" : "mc_harmonic_sample.json", j);
  } else if (kind == "stationary-sample") {
    const Word s = sample_stationary_bits(cfg.count("bits"), 0, opt, false);
    json dens = json::object();
    for (const Word& sigma : parse_patterns(cfg.text("patterns"))) {
      const Estimate e = substring_density_estimate(s, sigma);
      dens[sigma.str()] = estimate_json(e);
    }
    if (cfg.flag("write-sample")) {
      write_file(cfg.out / "stationary_sample.txt", s.str() + "\n");
      w.r.files.push_back("stationary_sample.txt");
    }
    w.summary("mc_stationary_sample.json",
              {{"bits", s.depth()}, {"steps", stationary_steps(s.depth(), false)}, {"substring_density", dens}});
  }
}

BitProvider seeded_provider(std::uint64_t seed, std::uint64_t i) { return BitProvider::seeded(mix64(seed, i)); }

void run_structure(const ExperimentConfig& cfg, Writer& w) {
  const std::uint64_t seeds = cfg.count("seeds");
  if (cfg.mode == "read-bits") {
    const std::size_t bits = cfg.count("bits");
    Table t{{"provider", "expected", "recovered", "match"}, {}};
    std::uint64_t ok = 0;
    for (std::uint64_t i = 0; i < seeds; ++i) {
      const RootedLattice g(seeded_provider(cfg.seed, i));
      const Word want = LazyDyadic(g.provider()).low_bits(bits);
      const Word got = read_root_bits(g, bits);
      ok += want == got;
      t.rows.push_back({static_cast<std::int64_t>(i), want.str(), got.str(), std::int64_t{want == got}});
    }
    w.table("structure_read_bits", t);
    w.summary("structure_read_bits.json", {{"providers", seeds}, {"bits", bits}, {"exact", ok}});
    return;
  }
  const std::int64_t lo = cfg.integer("min-depth"), hi = cfg.integer("max-depth"), off = cfg.integer("max-offset");
  if (lo > hi || off < 1) throw DomainError("structure: empty edge window");
  Table t{{"provider", "edges", "vertical", "class_mismatch", "orient_mismatch"}, {}};
  std::uint64_t edges = 0, bad_class = 0, bad_orient = 0;
  for (std::uint64_t i = 0; i < seeds; ++i) {
    const RootedLattice g(seeded_provider(cfg.seed, i));
    const auto rec = classify_window(g, lo, hi, off);
    std::uint64_t vert = 0, bc = 0, bo = 0;
    for (const auto& e : rec) {
      const bool truth = RootedLattice::is_vertical(e.u, e.v);
      vert += truth;
      bc += truth != (e.cls.orientation == Orientation::Vertical);
      if (truth && e.cls.upper) {
        const NodeKey upper = e.u.depth < e.v.depth ? e.u : e.v;
        bo += *e.cls.upper != upper;
      } else if (truth) {
        ++bo;
      }
    }
    if (i == 0) w.table("structure_edges", edge_table(g, rec, as_unsigned(cfg, "label-bits")));
    edges += rec.size();
    bad_class += bc;
    bad_orient += bo;
    t.rows.push_back({static_cast<std::int64_t>(i), static_cast<std::int64_t>(rec.size()), static_cast<std::int64_t>(vert),
                      static_cast<std::int64_t>(bc), static_cast<std::int64_t>(bo)});
  }
  const std::string stem = "structure_" + cfg.mode;
  w.table(stem, t);
  json j{{"providers", seeds}, {"edges", edges}, {"class_mismatches", bad_class}};
  if (cfg.mode == "orient") j["orient_mismatches"] = bad_orient;
  w.summary(stem + ".json", j);
}

}  // namespace

RunResult run(const ExperimentConfig& cfg) {
  const auto& allowed = modes(cfg.subcommand);
  if (allowed.empty() != cfg.mode.empty() ||
      (!allowed.empty() && std::find(allowed.begin(), allowed.end(), cfg.mode) == allowed.end())) {
    throw DomainError("invalid mode '" + cfg.mode + "' for " + cfg.subcommand);
  }
  if (cfg.threads == 0) throw DomainError("threads must be positive");
  std::filesystem::create_directories(cfg.out);
  RunResult r;
  Writer w{cfg, r};
  const std::string& s = cfg.subcommand;
  if (s == "crest") run_crest(cfg, w);
  else if (s == "stationary-chain") run_stationary_chain(cfg, w);
  else if (s == "k1-law") run_k1(cfg, w);
  else if (s == "harmonic") run_harmonic(cfg, w);
  else if (s == "mc") run_mc(cfg, w);
  else if (s == "structure") run_structure(cfg, w);
  else if (s == "verify") {
    const VerifyReport rep = verify(cfg.mode == "full" ? Scale::Full : Scale::Quick, cfg.seed, cfg.threads);
    w.summary("verify.json", rep.to_json());
    r.exit_code = rep.passed() ? Success : CheckFailure;
  } else {
    throw DomainError("unknown subcommand '" + s + "'");
  }
  r.files.push_back("manifest.json");
  write_json(cfg.out, "manifest.json", manifest_json(cfg, r.files));
  return r;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const DomainError*>(&e) || dynamic_cast<const ResolutionError*>(&e) ||
      dynamic_cast<const std::invalid_argument*>(&e)) {
    return UsageError;
  }
  return SolverFailure;
}

}  // namespace dyadic::app
