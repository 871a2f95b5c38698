#include "doctest.h"

#include "dyadic/app/commands.hpp"
#include "dyadic/app/config.hpp"
#include "dyadic/app/emit.hpp"
#include "dyadic/app/tables.hpp"
#include "dyadic/app/verify.hpp"
#include "dyadic/core/errors.hpp"

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace dyadic;
using namespace dyadic::app;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("dyadic-test-" + std::to_string(::getpid()) + "-" + name);
  fs::remove_all(p);
  return p;
}

ExperimentConfig config(const std::string& sub, const std::string& mode, const nlohmann::json& params) {
  ExperimentConfig c;
  c.subcommand = sub;
  c.mode = mode;
  c.params = resolve_params(sub, params);
  c.seed = 12;
  return c;
}

}  // namespace

TEST_CASE("doubles are written with 17 significant digits") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(1.0 / 3) == "0.33333333333333331");
  Table t{{"a", "b", "c"}, {{std::int64_t{1}, 0.5, std::string("1/2^1")}}};
  CHECK(to_csv(t) == "a,b,c\n1,0.5,1/2^1\n");
  CHECK(to_json(t)["rows"][0]["c"] == "1/2^1");
  CHECK_THROWS_AS(parse_format("xml"), DomainError);
}

TEST_CASE("app tables reproduce the library CSV writers") {
  const CrestField f = solve_crest(6);
  std::ostringstream crest;
  write_crest_csv(crest, f, 4);
  CHECK(to_csv(crest_table(f, 4)) == crest.str());

  const IncrementLaw law = k1_law(3, 4, 9);
  std::ostringstream inc;
  write_increment_csv(inc, law);
  CHECK(to_csv(increment_table(law)) == inc.str());

  const DyadicHistogram h = harmonic_histogram(law, 10, 8).histogram;
  std::ostringstream hist;
  write_histogram_csv(hist, h);
  CHECK(to_csv(histogram_table(h)) == hist.str());

  const RootedLattice g(BitProvider::seeded(5));
  const auto edges = classify_window(g, 2, 4, 4);
  std::ostringstream dump;
  write_edge_dump(dump, g, edges, 8);
  CHECK(to_csv(edge_table(g, edges, 8)) == dump.str());
}

TEST_CASE("parameters resolve against the declared defaults") {
  const auto p = resolve_params("crest", {{"max-depth", 9}});
  CHECK(p["max-depth"] == 9);
  CHECK(p["window"] == 14);
  CHECK(p["tol"] == 1e-13);
  CHECK_THROWS_AS(resolve_params("crest", {{"depth", 9}}), DomainError);
  CHECK_THROWS_AS(resolve_params("nope", {}), DomainError);
  ExperimentConfig c = config("mc", "p3", {{"steps", -3}});
  CHECK_THROWS_AS(c.count("steps"), DomainError);
  CHECK_THROWS_AS(c.flag("steps"), DomainError);
  CHECK(modes("mc").size() == 7);
  CHECK(modes("crest").empty());
}

TEST_CASE("runs write outputs and a manifest, identically for any thread count") {
  ExperimentConfig c = config("harmonic", "", {{"inner", 3}, {"target", 4}, {"outer", 9}, {"terms", 10}, {"resolution", 8}, {"tv-to", 8}});
  c.out = scratch("a");
  const RunResult r1 = run(c);
  CHECK(r1.files.back() == "manifest.json");
  CHECK(fs::exists(c.out / "harmonic_histogram.csv"));
  CHECK(fs::exists(c.out / "g_profile.csv"));
  const auto manifest = nlohmann::json::parse(slurp(c.out / "manifest.json"));
  CHECK(manifest["params"]["terms"] == 10);
  CHECK(manifest["seed"] == 12);
  CHECK(manifest["version"] == code_version());
  CHECK(manifest["outputs"].size() == r1.files.size());

  ExperimentConfig d = c;
  d.threads = 3;
  d.out = scratch("b");
  run(d);
  for (const auto& f : r1.files) {
    if (f != "manifest.json") CHECK(slurp(c.out / f) == slurp(d.out / f));
  }
  d.format = Format::Json;
  run(d);
  CHECK(fs::exists(d.out / "harmonic_histogram.json"));
  fs::remove_all(c.out);
  fs::remove_all(d.out);
}

TEST_CASE("invalid runs map to usage and solver exit codes") {
  ExperimentConfig c = config("crest", "", {{"max-depth", 3}});
  c.out = scratch("c");
  try {
    run(c);
    FAIL("expected an exception");
  } catch (const std::exception& e) {
    CHECK(exit_code_for(e) == UsageError);
  }
  c = config("crest", "", {{"max-depth", 8}, {"max-sweeps", 2}});
  c.out = scratch("c");
  try {
    run(c);
    FAIL("expected an exception");
  } catch (const std::exception& e) {
    CHECK(exit_code_for(e) == SolverFailure);
  }
  c = config("mc", "nope", {});
  CHECK_THROWS_AS(run(c), DomainError);
  fs::remove_all(c.out);
}

TEST_CASE("chi-square uniformity test") {
  const ChiSquare flat = chi_square_uniform(std::vector<std::uint64_t>(256, 100));
  CHECK(flat.statistic == 0.0);
  CHECK(flat.dof == 255);
  CHECK(flat.critical == doctest::Approx(330.5197).epsilon(1e-6));
  CHECK(flat.passed);
  std::vector<std::uint64_t> skew(256, 100);
  skew[0] = 400;
  CHECK_FALSE(chi_square_uniform(skew).passed);
}

TEST_CASE("a miscounted root edge fails the crest checks") {
  VerifyOptions o;
  o.criteria = {1, 2, 4, 6};
  const VerifyReport good = verify(o);
  CHECK(good.passed());
  o.single_root_edge = true;
  const VerifyReport bad = verify(o);
  CHECK_FALSE(bad.passed());
  int failed = 0;
  for (const auto& c : bad.checks) failed += !c.passed;
  CHECK(failed >= 4);
  for (const auto& c : bad.checks) {
    if (c.name == "crest esc(0)" || c.name == "esc_2(0) = 3/8") CHECK_FALSE(c.passed);
  }
}

TEST_CASE("soft checks never fail a report") {
  VerifyReport r;
  r.checks.push_back({"entropy", 10, false, true, 0.9, 1.0, 0.01, "", 0.0, {}});
  CHECK(r.passed());
  r.checks.push_back({"hard", 1, false, false, 0.9, 1.0, 0.01, "", 0.0, {}});
  CHECK_FALSE(r.passed());
  CHECK(r.to_json()["checks"][0]["status"] == "fail");
  CHECK(r.to_json()["passed"] == false);
}
