#include <cstdint>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "harness.hpp"

namespace swiftlink::harness {

namespace {

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) return false;
  f << content;
  return static_cast<bool>(f);
}

// Writes to the path, or stdout when the path is empty.
bool emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return true;
  }
  return write_file(path, content);
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Swift-Link mmWave beam-alignment experiment harness"};
  app.require_subcommand(1);

  std::string config_path, out_path, demo_kind;
  std::uint64_t seed_val = 0;
  int trials_val = 0;
  int workers_val = 0;
  int n_val = 0;
  double demo_eps = 0.0;
  bool override_range = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key = value experiment file");
    sub->add_option("--seed", seed_val, "master RNG seed");
    sub->add_option("--out", out_path, "output path; stdout when omitted");
    sub->add_option("--trials", trials_val, "Monte-Carlo trial count");
    sub->add_option("--workers", workers_val, "worker thread count");
    sub->add_flag("--override-range", override_range,
                  "allow CFO values beyond the correctable range");
  };

  CLI::App* sim = app.add_subcommand("simulate", "emit one CSV row per trial and method");
  CLI::App* sweep = app.add_subcommand("sweep", "aggregate a (SNR x CFO x M) grid");
  CLI::App* demo = app.add_subcommand("demo-shift", "beamspace magnitude grid under CFO");
  CLI::App* rip = app.add_subcommand("ripcheck", "contour expectation and energy bound checks");
  for (CLI::App* sub : {sim, sweep, demo, rip}) add_common(sub);
  demo->add_option("--kind", demo_kind, "trajectory kind: row, block, p, n");
  demo->add_option("--epsilon-rad", demo_eps, "per-measurement CFO in radians");
  demo->add_option("--n", n_val, "grid size override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  CLI::App* chosen = app.get_subcommands().front();

  try {
    ExperimentConfig cfg;
    if (chosen->count("--config") > 0) cfg = load_config(config_path);
    if (chosen->count("--seed") > 0) cfg.seed = seed_val;
    if (chosen->count("--workers") > 0) cfg.workers = workers_val;
    if (chosen->count("--override-range") > 0) cfg.override_range = override_range;
    if (chosen->count("--trials") > 0) {
      if (chosen == rip)
        cfg.rip_trials = trials_val;
      else
        cfg.trials = trials_val;
    }
    if (chosen == demo) {
      if (demo->count("--kind") > 0) cfg.demo_kind = demo_kind;
      if (demo->count("--epsilon-rad") > 0) cfg.demo_epsilon_rad = demo_eps;
      if (demo->count("--n") > 0) cfg.n = n_val;
    }

    const Command cmd = chosen == sim    ? Command::simulate
                        : chosen == sweep ? Command::sweep
                        : chosen == demo  ? Command::demo
                                          : Command::ripcheck;
    const std::vector<std::string> errs = validate(cfg, cmd);
    if (!errs.empty()) {
      for (const std::string& e : errs) std::cerr << "config error: " << e << "\n";
      return 2;
    }

    if (chosen == sim || chosen == sweep) {
      std::string runtime_json;
      const std::string csv =
          chosen == sim ? simulate_csv(cfg, &runtime_json) : sweep_csv(cfg, &runtime_json);
      if (!emit(out_path, csv)) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return 2;
      }
      if (!out_path.empty() && !write_file(out_path + ".runtime.json", runtime_json)) {
        std::cerr << "error: cannot write " << out_path << ".runtime.json\n";
        return 2;
      }
      return 0;
    }
    if (chosen == demo) {
      if (!emit(out_path, demo_shift_csv(cfg))) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return 2;
      }
      return 0;
    }
    // ripcheck: JSON to --out, CSV summary next to it
    const RipOutcome rep = ripcheck_report(cfg);
    if (!emit(out_path, rep.json)) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 2;
    }
    const std::string csv_path = out_path.empty() ? "" : out_path + ".csv";
    if (!emit(csv_path, rep.csv)) {
      std::cerr << "error: cannot write " << csv_path << "\n";
      return 2;
    }
    return rep.violated ? 3 : 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace swiftlink::harness
