#include "dyadic/app/verify.hpp"

#include "dyadic/app/commands.hpp"
#include "dyadic/app/config.hpp"
#include "dyadic/core/hash.hpp"
#include "dyadic/dirichlet/crest.hpp"
#include "dyadic/dirichlet/k1_law.hpp"
#include "dyadic/lattice/structure.hpp"
#include "dyadic/measure/harmonic.hpp"
#include "dyadic/measure/stationary.hpp"
#include "dyadic/walk/estimators.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

namespace dyadic::app {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Plan {
  unsigned crest_depth, crest_window;
  double esc_tol, p3_tol, identity_tol;
  unsigned chain_L;
  double chain_tol;
  std::uint64_t p3_steps, leaving_samples, dual_steps, dual_samples;
  unsigned dual_resolution;
  std::size_t dual_depth;
  unsigned inner, target, outer, terms, resolution, tv_lo, tv_hi;
  std::uint64_t sample_bits, structure_seeds;
  std::int64_t structure_max_depth;
};

// Full scale uses the reference parameters; quick scale shrinks every
// workload and widens only the tolerances that depend on depth.
Plan plan_for(Scale s) {
  if (s == Scale::Full) {
    return {20, 14, 5e-5, 5e-5, 1e-3, 12, 5e-6, 10'000'000, 1'000'000, 10'000'000, 200'000, 8, 20,
            6,  7,  19, 22, 14,  6,  14,  1'000'000, 100, 12};
  }
  return {14, 8, 5e-4, 5e-4, 2e-3, 10, 1e-4, 1'000'000, 100'000, 1'000'000, 20'000, 6, 20,
          5,  6, 15, 18, 12, 6,  12, 200'000, 20, 10};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

class Runner {
 public:
  Runner(const VerifyOptions& opt) : opt_(opt), plan_(plan_for(opt.scale)) {
    report_.scale = opt.scale;
    report_.seed = opt.seed;
    report_.threads = opt.threads;
  }

  VerifyReport run() {
    section({1, 2, 6}, [this] { crest_checks(); });
    section({3}, [this] { chain_checks(); });
    section({4}, [this] { exact_checks(); });
    section({5}, [this] { bound_checks(); });
    section({7}, [this] { duality_checks(); });
    section({8}, [this] { dual_checks(); });
    section({9, 10, 11}, [this] { harmonic_checks(); });
    section({11}, [this] { substring_checks(); });
    section({12}, [this] { structure_checks(); });
    section({13}, [this] { reproducibility_checks(); });
    return std::move(report_);
  }

 private:
  bool wanted(int c) const { return opt_.criteria.empty() || opt_.criteria.count(c) > 0; }

  void section(std::initializer_list<int> crits, const std::function<void()>& body) {
    bool any = false;
    for (int c : crits) any = any || wanted(c);
    if (!any) return;
    const std::size_t first = report_.checks.size();
    const auto t0 = std::chrono::steady_clock::now();
    body();
    const double dt = seconds_since(t0);
    for (std::size_t i = first; i < report_.checks.size(); ++i) report_.checks[i].runtime = dt;
  }

  void add(Check c) {
    if (wanted(c.criterion)) report_.checks.push_back(std::move(c));
  }

  void near(const std::string& name, int crit, double measured, double target, double tol, bool soft = false) {
    Check c{name, crit, std::fabs(measured - target) <= tol, soft, measured, target, tol, "|measured - target| <= tolerance", 0.0, {}};
    add(std::move(c));
  }

  void within_sigma(const std::string& name, int crit, double measured, double target, double se, double k = 3.0) {
    Check c{name, crit, std::fabs(measured - target) <= k * se, false, measured, target, k * se,
            "|measured - target| <= 3 standard errors", 0.0, {}};
    add(std::move(c));
  }

  void holds(const std::string& name, int crit, bool ok, double measured, double target, const std::string& relation,
             const std::string& detail = {}) {
    Check c{name, crit, ok, false, measured, target, 0.0, relation, 0.0, detail};
    add(std::move(c));
  }

  // Interval checks report the lower end as target and the width as tolerance.
  void inside(const std::string& name, int crit, double measured, double lo, double hi, bool closed) {
    const bool ok = closed ? (measured >= lo && measured <= hi) : (measured > lo && measured < hi);
    add({name, crit, ok, false, measured, lo, hi - lo,
         closed ? "target <= measured <= target + tolerance" : "target < measured < target + tolerance", 0.0, {}});
  }

  DirichletOptions dirichlet() const {
    DirichletOptions o;
    o.threads = opt_.threads;
    o.single_root_edge = opt_.single_root_edge;
    return o;
  }

  WalkOptions walks() const {
    WalkOptions o;
    o.seed = opt_.seed;
    o.threads = opt_.threads;
    return o;
  }

  const CrestPipeline& crest() {
    if (!crest_) {
      const auto t0 = std::chrono::steady_clock::now();
      crest_ = run_crest_pipeline(plan_.crest_depth, dirichlet(), plan_.crest_window);
      crest_time_ = seconds_since(t0);
    }
    return *crest_;
  }

  void crest_checks() {
    const CrestPipeline& p = crest();
    near("crest esc(0)", 1, p.esc0.limit, 0.547846, plan_.esc_tol);
    holds("crest runtime", 1, crest_time_ <= 600.0, crest_time_, 600.0, "seconds <= target");
    near("p3 from esc(0)", 2, p.p3, 0.382333, plan_.p3_tol);
    const double e0 = p.esc0.limit, e1 = p.esc1.limit, t = plan_.identity_tol;
    near("esc(0) + esc(1) unnormalized", 6, p.raw_sum.limit, 1.0, t);
    near("esc(00) = 6 esc(0) - 3", 6, p.esc2[0].limit, 6 * e0 - 3, t);
    near("esc(10) = 3 - 5 esc(0)", 6, p.esc2[2].limit, 3 - 5 * e0, t);
    near("esc(01) = esc(1)/2", 6, p.esc2[1].limit, e1 / 2, t);
    near("esc(11) = esc(1)/2", 6, p.esc2[3].limit, e1 / 2, t);
  }

  void chain_checks() {
    const StationaryChain c = truncated_stationary(plan_.chain_L, 1e-13, LeadingBit::Zero, opt_.threads);
    Check k{"truncated chain implied p3", 3, false, false, c.implied_p3(), 0.382332, plan_.chain_tol,
            "|measured - target| <= tolerance", 0.0, {}};
    k.passed = std::fabs(k.measured - k.target) <= k.tolerance;
    k.detail = "L=" + std::to_string(plan_.chain_L) + ", " + std::to_string(c.iterations) + " iterations";
    add(std::move(k));
  }

  void exact_checks() {
    const CrestField f = solve_crest(2, dirichlet());
    near("esc_2(0) = 3/8", 4, f.value(1, 0), 0.375, 1e-12);
    near("esc_2(1) = 1/4", 4, f.value(1, 1), 0.25, 1e-12);
    const DriftTable d = two_step_drift_table();
    auto show = [](const Rational& r) { return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator()); };
    auto val = [](const Rational& r) { return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator()); };
    holds("two-step drift, degree 3", 4, d.degree3 == Rational(1, 3), val(d.degree3), 1.0 / 3, "exact rational", show(d.degree3));
    holds("two-step drift, degree 4 with degree-3 parent", 4, d.degree4_up3 == Rational(1, 4), val(d.degree4_up3), 0.25,
          "exact rational", show(d.degree4_up3));
    holds("two-step drift, degree 4 with degree-4 parent", 4, d.degree4_up4 == Rational(1, 6), val(d.degree4_up4),
          1.0 / 6, "exact rational", show(d.degree4_up4));
  }

  void bound_checks() {
    const P3Result r = estimate_p3(plan_.p3_steps, walks());
    const double p3 = r.p3.value(), v = r.speed.value();
    inside("MC p3 in (3/8, 27/67)", 5, p3, 3.0 / 8, 27.0 / 67, false);
    within_sigma("MC speed - p3/3", 5, r.speed_gap.value(), 0.0, r.speed_gap.std_error());
    inside("MC speed in [1/9, 1/7]", 5, v, 1.0 / 9, 1.0 / 7, true);
  }

  void duality_checks() {
    const CrestPipeline& p = crest();
    const LeavingDistribution d = leaving_distribution(2, plan_.leaving_samples, walks());
    const double lv1[2] = {p.esc0.limit, p.esc1.limit};
    for (std::uint64_t v = 0; v < 2; ++v) {
      within_sigma("leaving law at depth 1, label " + Word::from_value(v, 1).str(), 7, d.mass(1, v), lv1[v], d.std_error(1, v));
    }
    for (std::uint64_t v = 0; v < 4; ++v) {
      within_sigma("leaving law at depth 2, label " + Word::from_value(v, 2).str(), 7, d.mass(2, v), p.esc2[v].limit,
                   d.std_error(2, v));
    }
  }

  void dual_checks() {
    near("dual chain invariance L1, L=8", 8, dual_stationary_invariance_check(8), 0.0, 1e-14);
    const Estimate s = estimate_dual_speed(plan_.dual_steps, walks());
    within_sigma("dual MC speed", 8, s.value(), 0.2, s.std_error());
    WalkOptions o = walks();
    o.confirmation = 30;
    const HarmonicCounts c = harmonic_sample_counts(plan_.dual_resolution, plan_.dual_samples, plan_.dual_depth, o, true);
    const ChiSquare x = chi_square_uniform(c.counts);
    Check k{"dual harmonic uniformity chi-square", 8, x.passed, false, x.statistic, static_cast<double>(x.dof), x.critical,
            "statistic <= critical value at alpha 0.001", 0.0, {}};
    k.detail = std::to_string(c.samples) + " samples, " + std::to_string(c.budget_exceeded) + " over budget";
    add(std::move(k));
  }

  const HarmonicHistogram& harmonic() {
    if (!harmonic_) {
      law_ = k1_law(plan_.inner, plan_.target, plan_.outer, dirichlet());
      harmonic_ = harmonic_histogram(*law_, plan_.terms, plan_.resolution, opt_.threads);
    }
    return *harmonic_;
  }

  void harmonic_checks() {
    const HarmonicHistogram& h = harmonic();
    const DyadicHistogram& hist = h.histogram;
    near("first-bit mass", 9, hist.coarsen(1)[0], 0.5, 1e-6);

    // Error of the two-bit excess: convolution tail plus sensitivity to the
    // truncation depth of the increment law.
    const IncrementLaw shallow = k1_law(plan_.inner, plan_.target, plan_.outer - 1, dirichlet(), true, false);
    const HarmonicHistogram hs = harmonic_histogram(shallow, plan_.terms, plan_.resolution, opt_.threads);
    const TwoBitStats tb = two_bit_statistics(hist);
    const double err = h.tail_bound + std::fabs(tb.excess - two_bit_statistics(hs.histogram).excess);
    Check k{"two-bit excess over 10x error", 9, tb.excess > 10 * err, false, tb.excess, 10 * err, 0.0,
            "measured > target", 0.0, {}};
    k.detail = "error estimate " + std::to_string(err);
    add(std::move(k));

    double worst = 0.0;
    for (std::size_t b = 0; b < hist.bins(); ++b) worst = std::max(worst, std::fabs(hist[b] - hist[hist.mirror(b)]));
    near("reflection symmetry", 9, worst, 0.0, 1e-6);
    const GMeasureProfile g = g_profile(hist);
    near("g at the 1/4 bin", 9, g.g[hist.bins() / 4], 0.5, 1e-3);
    near("entropy h", 10, g.entropy, 0.999799, 2e-3, true);

    const auto tv = singularity_report(hist, plan_.tv_lo, plan_.tv_hi);
    double min_step = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < tv.size(); ++i) min_step = std::min(min_step, tv[i].second - tv[i - 1].second);
    holds("TV to uniform strictly increasing", 11, min_step > 0, min_step, 0.0, "smallest increment > 0",
          singularity_json(tv).dump());
  }

  void substring_checks() {
    const DyadicHistogram& hist = harmonic().histogram;
    const Word s = sample_stationary_bits(plan_.sample_bits, 0, walks(), false);
    for (const char* sigma : {"0", "1", "00", "01"}) {
      const Word w = Word::parse(sigma);
      const Estimate e = substring_density_estimate(s, w);
      within_sigma(std::string("substring density of ") + sigma, 11, e.value(), hist.prefix_mass(w), e.std_error());
    }
  }

  void structure_checks() {
    std::uint64_t exact = 0, edges = 0, bad_class = 0, bad_orient = 0;
    for (std::uint64_t i = 0; i < plan_.structure_seeds; ++i) {
      const RootedLattice g(BitProvider::seeded(mix64(opt_.seed, i)));
      exact += read_root_bits(g, 64) == LazyDyadic(g.provider()).low_bits(64);
      for (const auto& e : classify_window(g, 2, plan_.structure_max_depth, 32)) {
        ++edges;
        const bool vertical = RootedLattice::is_vertical(e.u, e.v);
        bad_class += vertical != (e.cls.orientation == Orientation::Vertical);
        if (vertical) bad_orient += !e.cls.upper || *e.cls.upper != (e.u.depth < e.v.depth ? e.u : e.v);
      }
    }
    const double n = static_cast<double>(plan_.structure_seeds);
    holds("read_root_bits 64-bit round trips", 12, exact == plan_.structure_seeds, static_cast<double>(exact), n,
          "measured = target");
    const std::string window = std::to_string(edges) + " edges";
    holds("edge classification mismatches", 12, bad_class == 0, static_cast<double>(bad_class), 0.0, "measured = target",
          window);
    holds("vertical orientation mismatches", 12, bad_orient == 0, static_cast<double>(bad_orient), 0.0,
          "measured = target", window);
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
  }

  void reproducibility_checks() {
    struct Case {
      std::string sub, mode;
      json params;
    };
    const std::vector<Case> cases{
        {"crest", "", {{"max-depth", 8}, {"window", 5}, {"dump-depth", 4}}},
        {"stationary-chain", "", {{"length", 8}}},
        {"harmonic", "", {{"inner", 4}, {"target", 5}, {"outer", 10}, {"terms", 12}, {"resolution", 10}, {"tv-to", 10}}},
        {"mc", "p3", {{"steps", 200000}}},
        {"mc", "leaving", {{"samples", 20000}}},
        {"mc", "dual-harmonic", {{"samples", 2000}, {"resolution", 4}}},
        {"mc", "stationary-sample", {{"bits", 50000}}},
        {"structure", "classify", {{"seeds", 3}, {"max-depth", 6}, {"max-offset", 8}}},
    };
    const fs::path root = fs::temp_directory_path() / ("dyadic-verify-" + std::to_string(::getpid()));
    std::uint64_t files = 0, thread_diffs = 0, rerun_diffs = 0;
    std::string detail;
    for (std::size_t i = 0; i < cases.size(); ++i) {
      std::vector<std::map<std::string, std::string>> outs;
      for (unsigned threads : {1U, 4U, 1U}) {
        ExperimentConfig cfg;
        cfg.subcommand = cases[i].sub;
        cfg.mode = cases[i].mode;
        cfg.params = resolve_params(cfg.subcommand, cases[i].params);
        cfg.seed = opt_.seed;
        cfg.threads = threads;
        cfg.out = root / (std::to_string(i) + "-" + std::to_string(outs.size()));
        const RunResult r = app::run(cfg);
        std::map<std::string, std::string> bytes;
        for (const auto& f : r.files) {
          if (f != "manifest.json") bytes[f] = slurp(cfg.out / f);
        }
        outs.push_back(std::move(bytes));
      }
      files += outs[0].size();
      if (outs[0] != outs[1]) {
        ++thread_diffs;
        detail += cases[i].sub + " " + cases[i].mode + " differs across threads; ";
      }
      if (outs[0] != outs[2]) {
        ++rerun_diffs;
        detail += cases[i].sub + " " + cases[i].mode + " differs across runs; ";
      }
    }
    std::error_code ec;
    fs::remove_all(root, ec);
    holds("outputs identical for 1 and 4 threads", 13, thread_diffs == 0, static_cast<double>(thread_diffs), 0.0,
          "differing cases = target", detail.empty() ? std::to_string(files) + " files compared" : detail);
    holds("outputs identical across reruns", 13, rerun_diffs == 0, static_cast<double>(rerun_diffs), 0.0,
          "differing cases = target", detail.empty() ? std::to_string(files) + " files compared" : detail);
  }

  VerifyOptions opt_;
  Plan plan_;
  VerifyReport report_;
  std::optional<CrestPipeline> crest_;
  double crest_time_ = 0.0;
  std::optional<IncrementLaw> law_;
  std::optional<HarmonicHistogram> harmonic_;
};

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

bool VerifyReport::passed() const {
  for (const auto& c : checks) {
    if (!c.soft && !c.passed) return false;
  }
  return true;
}

json VerifyReport::to_json() const {
  json list = json::array();
  for (const auto& c : checks) {
    json j{{"name", c.name},
           {"criterion", c.criterion},
           {"status", c.passed ? "pass" : "fail"},
           {"soft", c.soft},
           {"measured", number(c.measured)},
           {"target", number(c.target)},
           {"tolerance", number(c.tolerance)},
           {"relation", c.relation},
           {"runtime_s", c.runtime}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    list.push_back(std::move(j));
  }
  return {{"scale", scale == Scale::Full ? "full" : "quick"},
          {"seed", seed},
          {"threads", threads},
          {"passed", passed()},
          {"checks", std::move(list)}};
}

VerifyReport verify(const VerifyOptions& opt) { return Runner(opt).run(); }

VerifyReport verify(Scale scale, std::uint64_t seed, unsigned threads) {
  VerifyOptions o;
  o.scale = scale;
  o.seed = seed;
  o.threads = threads;
  return verify(o);
}

json ChiSquare::to_json() const {
  return {{"statistic", statistic}, {"critical", critical}, {"dof", dof}, {"alpha", alpha}, {"passed", passed}};
}

ChiSquare chi_square_uniform(const std::vector<std::uint64_t>& counts, double alpha) {
  ChiSquare x;
  x.alpha = alpha;
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  if (counts.size() < 2 || total == 0) return x;
  const double expect = static_cast<double>(total) / static_cast<double>(counts.size());
  for (auto c : counts) {
    const double d = static_cast<double>(c) - expect;
    x.statistic += d * d / expect;
  }
  x.dof = counts.size() - 1;
  const boost::math::chi_squared dist(static_cast<double>(x.dof));
  x.critical = boost::math::quantile(boost::math::complement(dist, alpha));
  x.passed = x.statistic <= x.critical;
  return x;
}

}  // namespace dyadic::app
