#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "swiftlink/types.hpp"

namespace swiftlink::harness {

// Flat key=value experiment description. Keys carry explicit units
// (bandwidth_hz, cfo_hz_list, snr_db_list); CLI flags override file values.
struct ExperimentConfig {
  int n = 32;
  int m = 124;
  int k_max = 16;
  int l_taps = 13;
  int n_s = 13;  // pilot length; only the Barker-13 pilot is implemented
  double bandwidth_hz = 100e6;
  std::vector<double> snr_db_list = {0.0};
  std::vector<double> cfo_hz_list = {0.0};
  std::vector<int> m_list;  // sweep only; empty means {m}
  std::string trajectory_kind = "type1";
  std::string contour_dist = "binomial";
  std::vector<std::string> methods = {"swiftlink-t1", "swiftlink-t2", "iid-cs",
                                      "iid-cs-zero-cfo", "exhaustive"};
  int trials = 10;
  std::uint64_t seed = 1;
  int workers = 1;
  int beam_bits = 3;
  int rays = 4;
  int zc_root = 11;
  int n_subcarriers = 64;
  bool override_range = false;
  std::string demo_kind = "row";  // row | block | p | n
  double demo_epsilon_rad = 0.09;
  std::vector<int> rip_n_list = {16, 32};
  int rip_trials = 20000;
  int rip_grid = 64;
};

// One (trial, method, operating point) outcome. Every numeric member except
// runtime_ms lands in the CSV; runtime_ms goes to the JSON sidecar so reruns
// stay byte-identical.
struct ResultRow {
  std::uint64_t seed = 0;  // per-trial stream key
  double snr_db = 0.0;
  double cfo_hz = 0.0;
  int m = 0;
  std::string method;
  double rate_bps_hz = 0.0;
  double nmse_db = 0.0;
  double cfo_mse_rad2 = 0.0;  // nan for methods that do not estimate CFO
  double papr_db = 0.0;
  double runtime_ms = 0.0;
};

// key=value assignment; unknown keys and malformed values throw.
void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value);
ExperimentConfig load_config(const std::string& path);

enum class Command { simulate, sweep, demo, ripcheck };

// Empty when runnable; otherwise one message per violated rule. Only the
// keys the command actually consumes are checked.
std::vector<std::string> validate(const ExperimentConfig& cfg,
                                  Command cmd = Command::simulate);

// All rows for one simulate/sweep grid, in deterministic task order,
// independent of cfg.workers.
std::vector<ResultRow> run_grid(const ExperimentConfig& cfg);

std::string simulate_csv(const ExperimentConfig& cfg, std::string* runtime_json = nullptr);
std::string sweep_csv(const ExperimentConfig& cfg, std::string* runtime_json = nullptr);
std::string demo_shift_csv(const ExperimentConfig& cfg);

struct RipOutcome {
  std::string json;
  std::string csv;
  bool violated = false;
};
RipOutcome ripcheck_report(const ExperimentConfig& cfg);

// Full CLI (simulate | sweep | demo-shift | ripcheck). Returns the process
// exit code: 0 success, 2 validation failure, 3 ripcheck bound violation.
int run_cli(int argc, char** argv);

}  // namespace swiftlink::harness
