#include "dyadic/app/commands.hpp"
#include "dyadic/app/config.hpp"
#include "dyadic/core/parallel.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <random>

using namespace dyadic;
using namespace dyadic::app;

namespace {

// Option storage; map nodes keep their addresses, so CLI11 can bind to them.
struct ParamStore {
  std::map<std::string, std::int64_t> ints;
  std::map<std::string, double> reals;
  std::map<std::string, std::string> texts;
  std::map<std::string, bool> flags;

  void bind(CLI::App* sub, const ParamSpec& s) {
    const std::string flag = "--" + s.name;
    if (s.value.is_boolean()) {
      auto& v = flags[s.name] = s.value.get<bool>();
      sub->add_option(flag, v, s.help)->capture_default_str();
    } else if (s.value.is_number_integer()) {
      auto& v = ints[s.name] = s.value.get<std::int64_t>();
      sub->add_option(flag, v, s.help)->capture_default_str();
    } else if (s.value.is_number_float()) {
      auto& v = reals[s.name] = s.value.get<double>();
      sub->add_option(flag, v, s.help)->capture_default_str();
    } else {
      auto& v = texts[s.name] = s.value.get<std::string>();
      sub->add_option(flag, v, s.help)->capture_default_str();
    }
  }

  nlohmann::json values(const std::string& sub) const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& s : param_specs(sub)) {
      if (auto it = ints.find(s.name); it != ints.end()) j[s.name] = it->second;
      if (auto it = reals.find(s.name); it != reals.end()) j[s.name] = it->second;
      if (auto it = texts.find(s.name); it != texts.end()) j[s.name] = it->second;
      if (auto it = flags.find(s.name); it != flags.end()) j[s.name] = it->second;
    }
    return j;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random walks on dyadic lattice graphs: solvers, samplers and checks", "dyadic"};
  app.set_version_flag("--version", code_version());
  app.set_config("--config", "", "TOML file; flags given on the command line take precedence");
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::uint64_t> seed;
  unsigned threads = default_threads();
  std::string out = "dyadic-out";
  std::string format = "csv";
  app.add_option("--seed", seed, "RNG seed; chosen at random and recorded in the manifest when absent");
  app.add_option("--threads", threads, "worker threads (default from DYADIC_THREADS)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--out", out, "output directory")->capture_default_str();
  app.add_option("--format", format, "table format")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));

  // One store per subcommand keeps identically named parameters apart.
  std::map<std::string, ParamStore> stores;
  std::map<std::string, std::string> chosen_mode;
  bool quick = false, full = false;
  const std::map<std::string, std::string> blurbs = {
      {"crest", "escape probabilities on the crest by Gauss-Seidel, with extrapolation"},
      {"stationary-chain", "stationary law of the truncated label chain"},
      {"k1-law", "law of the vertical increment per level"},
      {"harmonic", "harmonic measure by exact convolution, g profile and TV report"},
      {"mc", "Monte Carlo estimates"},
      {"structure", "lattice structure checks on seeded roots"},
      {"verify", "run the acceptance checks"},
  };
  for (const auto& name : subcommands()) {
    CLI::App* sub = app.add_subcommand(name, blurbs.count(name) ? blurbs.at(name) : "");
    for (const auto& s : param_specs(name)) stores[name].bind(sub, s);
    const auto& allowed = modes(name);
    if (name == "verify") {
      auto* q = sub->add_flag("--quick", quick, "reduced depths and samples, widened tolerances (default)");
      auto* f = sub->add_flag("--full", full, "reference parameters");
      q->excludes(f);
    } else if (!allowed.empty()) {
      sub->add_option("kind", chosen_mode[name], "what to run")->required()->check(CLI::IsMember(allowed));
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? Success : UsageError;
  }

  ExperimentConfig cfg;
  cfg.subcommand = app.get_subcommands().front()->get_name();
  cfg.mode = cfg.subcommand == "verify" ? (full ? "full" : "quick") : chosen_mode[cfg.subcommand];
  cfg.threads = threads;
  cfg.out = out;
  cfg.format = parse_format(format);
  if (seed) {
    cfg.seed = *seed;
  } else {
    std::random_device rd;
    cfg.seed = (std::uint64_t{rd()} << 32) | rd();
    cfg.seed_auto = true;
  }

  try {
    cfg.params = resolve_params(cfg.subcommand, stores[cfg.subcommand].values(cfg.subcommand));
    const RunResult r = run(cfg);
    if (cfg.subcommand == "verify") {
      for (const auto& c : r.summary["checks"]) {
        const std::string status = c["status"].get<std::string>() == "pass" ? "PASS" : (c["soft"].get<bool>() ? "SOFT" : "FAIL");
        std::printf("%-4s [%2d] %s\n", status.c_str(), c["criterion"].get<int>(), c["name"].get<std::string>().c_str());
      }
    }
    for (const auto& f : r.files) std::printf("wrote %s\n", (cfg.out / f).string().c_str());
    return r.exit_code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "dyadic %s: %s\n", cfg.subcommand.c_str(), e.what());
    return exit_code_for(e);
  }
}
