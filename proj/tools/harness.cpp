#include "harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "swiftlink/baselines.hpp"
#include "swiftlink/cfo.hpp"
#include "swiftlink/channel.hpp"
#include "swiftlink/measurement.hpp"
#include "swiftlink/numerics.hpp"
#include "swiftlink/recovery.hpp"
#include "swiftlink/ripcheck.hpp"
#include "swiftlink/rng.hpp"
#include "swiftlink/sequences.hpp"
#include "swiftlink/swiftlink.hpp"
#include "swiftlink/trajectories.hpp"

namespace swiftlink::harness {

namespace {

const std::set<std::string> kKnownMethods = {"swiftlink-t1", "swiftlink-t2", "iid-cs",
                                             "iid-cs-zero-cfo", "exhaustive"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string t = trim(item);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

double to_double(const std::string& key, const std::string& s) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad numeric value for " + key + ": '" + s + "'");
  }
  if (pos != s.size())
    throw std::invalid_argument("config: trailing garbage in " + key + ": '" + s + "'");
  return v;
}

int to_int(const std::string& key, const std::string& s) {
  const double v = to_double(key, s);
  if (v != std::floor(v) || std::abs(v) > 2e9)
    throw std::invalid_argument("config: " + key + " must be an integer");
  return static_cast<int>(v);
}

bool to_bool(const std::string& key, const std::string& s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw std::invalid_argument("config: " + key + " must be a boolean");
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

ContourDist parse_dist(const std::string& s) {
  if (s == "uniform") return ContourDist::uniform;
  if (s == "binomial") return ContourDist::binomial;
  throw std::invalid_argument("config: contour_dist must be uniform or binomial");
}

std::vector<std::pair<CVec, CVec>> zc_pairs(const CVec& z, const Trajectory& t) {
  std::vector<std::pair<CVec, CVec>> out;
  out.reserve(t.steps.size());
  for (const Coord& s : t.steps) out.emplace_back(circshift(z, s.r), circshift(z, s.c));
  return out;
}

struct Cell {
  double snr_db = 0.0;
  double cfo_hz = 0.0;
  int m = 0;
};

std::vector<Cell> grid_cells(const ExperimentConfig& cfg) {
  std::vector<int> ms = cfg.m_list.empty() ? std::vector<int>{cfg.m} : cfg.m_list;
  std::vector<Cell> cells;
  for (double snr : cfg.snr_db_list)
    for (double cfo : cfg.cfo_hz_list)
      for (int m : ms) cells.push_back({snr, cfo, m});
  return cells;
}

bool has_method(const ExperimentConfig& cfg, const std::string& name) {
  return std::find(cfg.methods.begin(), cfg.methods.end(), name) != cfg.methods.end();
}

std::vector<ResultRow> run_task(const ExperimentConfig& cfg, const Cell& cell, int trial) {
  const int n = cfg.n;
  const int m = cell.m;
  const double sigma = std::pow(10.0, -cell.snr_db / 20.0);
  const double eps_sym = 2.0 * std::numbers::pi * cell.cfo_hz / cfg.bandwidth_hz;
  const int frame = cfg.n_s + cfg.l_taps - 1;
  const double eps_eff = eps_sym * frame;
  const ContourDist dist = parse_dist(cfg.contour_dist);

  const Rng base(cfg.seed);
  Rng ch_rng = base.stream(static_cast<std::uint64_t>(trial) * 8 + 0);
  Rng beam_rng = base.stream(static_cast<std::uint64_t>(trial) * 8 + 1);
  Rng scan_rng = base.stream(static_cast<std::uint64_t>(trial) * 8 + 2);
  Rng noise_rng = base.stream(static_cast<std::uint64_t>(trial) * 8 + 3);

  const ChannelRealization ch = random_wideband(n, cfg.l_taps, cfg.rays, ch_rng);
  const CMat h_eff = barker_effective_channel(ch);
  const CVec z = zc(n, cfg.zc_root);

  const bool wants_swift = has_method(cfg, "swiftlink-t1") || has_method(cfg, "swiftlink-t2");
  Trajectory sp, sn;
  if (wants_swift) {
    sp = p_trajectory(n, m / 2, dist, ch_rng);
    sn = n_trajectory(n, m / 2, dist, ch_rng);
  }

  CVec noise(m);
  for (int i = 0; i < m; ++i) noise(i) = sigma * noise_rng.cgauss();

  // IID training reused verbatim by the CFO-corrupted and genie variants
  const bool wants_iid = has_method(cfg, "iid-cs") || has_method(cfg, "iid-cs-zero-cfo");
  std::vector<std::pair<CVec, CVec>> iid_pairs;
  CMat iid_atoms;
  if (wants_iid) {
    const CMat& u = dft_matrix(n);
    iid_pairs.reserve(static_cast<std::size_t>(m));
    iid_atoms.resize(m, static_cast<Eigen::Index>(n) * n);
    for (int i = 0; i < m; ++i) {
      CVec b = random_phase_beam(n, cfg.beam_bits, beam_rng);
      CVec d = random_phase_beam(n, cfg.beam_bits, beam_rng);
      const CVec ub = (u * b).conjugate();
      const CVec ud = (u * d).conjugate();
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          iid_atoms(i, static_cast<Eigen::Index>(k) * n + l) = ub(k) * ud(l);
      iid_pairs.emplace_back(std::move(b), std::move(d));
    }
  }

  auto iid_estimate = [&](double eps_train) {
    const CVec y = wideband_measure_pairs(ch.taps, iid_pairs, eps_train, &noise);
    const DenseEstimate est = omp_dense(y, iid_atoms, cfg.k_max,
                                        std::sqrt(static_cast<double>(m)) * sigma);
    CMat x_hat = CMat::Zero(n, n);
    for (std::size_t i = 0; i < est.support.size(); ++i)
      x_hat(est.support[i] / n, est.support[i] % n) = est.coef(static_cast<Eigen::Index>(i));
    return std::pair<CMat, CVec>(idft2(x_hat), y);
  };

  std::vector<ResultRow> rows;
  rows.reserve(cfg.methods.size());
  for (const std::string& method : cfg.methods) {
    const auto t0 = std::chrono::steady_clock::now();
    ResultRow row;
    row.seed = static_cast<std::uint64_t>(trial);
    row.snr_db = cell.snr_db;
    row.cfo_hz = cell.cfo_hz;
    row.m = m;
    row.method = method;
    row.nmse_db = std::numeric_limits<double>::quiet_NaN();
    row.cfo_mse_rad2 = std::numeric_limits<double>::quiet_NaN();

    if (method == "swiftlink-t1" || method == "swiftlink-t2") {
      const bool t1 = method == "swiftlink-t1";
      const Trajectory t = t1 ? compose_type1(sp, sn) : compose_type2(sp, sn);
      const CVec y = wideband_measure_pairs(ch.taps, zc_pairs(z, t), eps_sym, &noise);
      const SwiftLinkResult res =
          t1 ? run_type1(y, t, z, cfg.k_max, sigma) : run_type2(y, t, z, cfg.k_max, sigma);
      const BeamPair beams = extract_beams(res.h_hat, cfg.beam_bits);
      row.rate_bps_hz = achievable_rate(ch, beams, sigma, cfg.n_subcarriers);
      row.nmse_db = nmse_db(h_eff, res.h_hat);
      const double de = res.epsilon_hat - eps_eff;
      row.cfo_mse_rad2 = de * de;
      row.papr_db = papr_db(y);
    } else if (method == "iid-cs" || method == "iid-cs-zero-cfo") {
      const auto [h_hat, y] = iid_estimate(method == "iid-cs" ? eps_sym : 0.0);
      const BeamPair beams = extract_beams(h_hat, cfg.beam_bits);
      row.rate_bps_hz = achievable_rate(ch, beams, sigma, cfg.n_subcarriers);
      row.nmse_db = nmse_db(h_eff, h_hat);
      row.papr_db = papr_db(y);
    } else if (method == "exhaustive") {
      const ScanResult scan = exhaustive_scan(h_eff, sigma, scan_rng, eps_eff);
      row.rate_bps_hz = achievable_rate(ch, scan.beams, sigma, cfg.n_subcarriers);
      row.papr_db = papr_db(scan.y);
    } else {
      throw std::invalid_argument("unknown method: " + method);
    }
    row.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string runtime_sidecar(const std::string& command, const ExperimentConfig& cfg,
                            const std::vector<ResultRow>& rows, double total_ms) {
  nlohmann::json j;
  j["command"] = command;
  j["seed"] = cfg.seed;
  j["workers"] = cfg.workers;
  j["total_ms"] = total_ms;
  j["note"] = "rates ignore residual CFO";
  nlohmann::json per;
  std::map<std::string, std::pair<double, int>> acc;
  for (const ResultRow& r : rows) {
    acc[r.method].first += r.runtime_ms;
    acc[r.method].second += 1;
  }
  for (const auto& [k, v] : acc)
    per[k] = {{"total_ms", v.first}, {"rows", v.second}, {"mean_ms", v.first / v.second}};
  j["methods"] = per;
  return j.dump(2) + "\n";
}

}  // namespace

void apply_key(ExperimentConfig& cfg, const std::string& raw_key, const std::string& raw_value) {
  const std::string key = trim(raw_key);
  const std::string value = trim(raw_value);
  if (key == "n")
    cfg.n = to_int(key, value);
  else if (key == "m")
    cfg.m = to_int(key, value);
  else if (key == "k_max")
    cfg.k_max = to_int(key, value);
  else if (key == "l_taps")
    cfg.l_taps = to_int(key, value);
  else if (key == "n_s")
    cfg.n_s = to_int(key, value);
  else if (key == "bandwidth_hz")
    cfg.bandwidth_hz = to_double(key, value);
  else if (key == "snr_db_list") {
    cfg.snr_db_list.clear();
    for (const auto& s : split_list(value)) cfg.snr_db_list.push_back(to_double(key, s));
  } else if (key == "cfo_hz_list") {
    cfg.cfo_hz_list.clear();
    for (const auto& s : split_list(value)) cfg.cfo_hz_list.push_back(to_double(key, s));
  } else if (key == "m_list") {
    cfg.m_list.clear();
    for (const auto& s : split_list(value)) cfg.m_list.push_back(to_int(key, s));
  } else if (key == "trajectory_kind")
    cfg.trajectory_kind = value;
  else if (key == "contour_dist")
    cfg.contour_dist = value;
  else if (key == "methods")
    cfg.methods = split_list(value);
  else if (key == "trials")
    cfg.trials = to_int(key, value);
  else if (key == "seed")
    cfg.seed = static_cast<std::uint64_t>(to_double(key, value));
  else if (key == "workers")
    cfg.workers = to_int(key, value);
  else if (key == "beam_bits")
    cfg.beam_bits = to_int(key, value);
  else if (key == "rays")
    cfg.rays = to_int(key, value);
  else if (key == "zc_root")
    cfg.zc_root = to_int(key, value);
  else if (key == "n_subcarriers")
    cfg.n_subcarriers = to_int(key, value);
  else if (key == "override_range")
    cfg.override_range = to_bool(key, value);
  else if (key == "demo_kind")
    cfg.demo_kind = value;
  else if (key == "demo_epsilon_rad")
    cfg.demo_epsilon_rad = to_double(key, value);
  else if (key == "rip_n_list") {
    cfg.rip_n_list.clear();
    for (const auto& s : split_list(value)) cfg.rip_n_list.push_back(to_int(key, s));
  } else if (key == "rip_trials")
    cfg.rip_trials = to_int(key, value);
  else if (key == "rip_grid")
    cfg.rip_grid = to_int(key, value);
  else
    throw std::invalid_argument("config: unknown key '" + key + "'");
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  " is not key = value");
    apply_key(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
  return cfg;
}

std::vector<std::string> validate(const ExperimentConfig& cfg, Command cmd) {
  std::vector<std::string> errs;
  auto bad = [&errs](const std::string& msg) { errs.push_back(msg); };

  if (cfg.n < 2) bad("n must be at least 2");
  if (cfg.n >= 2) {
    const int root = ((cfg.zc_root % cfg.n) + cfg.n) % cfg.n;
    if (std::gcd(root, cfg.n) != 1) bad("zc_root must be coprime to n");
  }

  if (cmd == Command::ripcheck) {
    if (cfg.rip_grid < 8) bad("rip_grid must be at least 8");
    if (cfg.rip_trials < 100) bad("rip_trials must be at least 100");
    for (int n : cfg.rip_n_list)
      if (n < 3) bad("rip_n_list entries must be at least 3");
    if (cfg.rip_n_list.empty()) bad("rip_n_list must not be empty");
    return errs;
  }
  if (cmd == Command::demo) {
    if (cfg.demo_kind != "row" && cfg.demo_kind != "block" && cfg.demo_kind != "p" &&
        cfg.demo_kind != "n")
      bad("demo_kind must be one of row, block, p, n");
    if (cfg.demo_kind == "block" && cfg.n % 2 != 0) bad("block demo requires even n");
    if (cfg.contour_dist != "uniform" && cfg.contour_dist != "binomial")
      bad("contour_dist must be uniform or binomial");
    return errs;
  }

  if (cfg.bandwidth_hz <= 0.0) bad("bandwidth_hz must be positive");
  if (cfg.trials < 1) bad("trials must be at least 1");
  if (cfg.workers < 1) bad("workers must be at least 1");
  if (cfg.k_max < 1) bad("k_max must be at least 1");
  if (cfg.rays < 1) bad("rays must be at least 1");
  if (cfg.beam_bits < 1) bad("beam_bits must be at least 1");
  if (cfg.l_taps < 1) bad("l_taps must be at least 1");
  if (cfg.n_s != 13) bad("n_s must be 13: only the Barker-13 pilot is implemented");
  if (cfg.n_subcarriers < 1) bad("n_subcarriers must be at least 1");
  if (cfg.trajectory_kind != "type1" && cfg.trajectory_kind != "type2")
    bad("trajectory_kind must be type1 or type2");
  if (cfg.contour_dist != "uniform" && cfg.contour_dist != "binomial")
    bad("contour_dist must be uniform or binomial");

  if (cfg.methods.empty()) bad("methods must not be empty");
  for (const std::string& m : cfg.methods)
    if (kKnownMethods.find(m) == kKnownMethods.end()) bad("unknown method: " + m);
  if (cfg.snr_db_list.empty()) bad("snr_db_list must not be empty");
  if (cfg.cfo_hz_list.empty()) bad("cfo_hz_list must not be empty");
  if (cmd == Command::simulate && !cfg.m_list.empty())
    bad("simulate uses the single m key; m_list is for sweep");

  const bool swift_t1 = has_method(cfg, "swiftlink-t1");
  const bool swift_t2 = has_method(cfg, "swiftlink-t2");
  std::vector<int> ms = cfg.m_list.empty() ? std::vector<int>{cfg.m} : cfg.m_list;
  if (ms.empty()) bad("m grid must not be empty");
  for (int m : ms) {
    if (m < 1) bad("m must be positive");
    if (swift_t1 || swift_t2) {
      if (m % 2 != 0) bad("m must be even for trajectory training (m = " + std::to_string(m) + ")");
      if (m > 2 * (2 * cfg.n - 1))
        bad("m exceeds the trajectory maximum 2(2n-1) = " + std::to_string(2 * (2 * cfg.n - 1)));
      if (m >= 2 && cfg.k_max > m / 2)
        bad("k_max exceeds the per-branch measurement count m/2");
    } else if (cfg.k_max > m) {
      bad("k_max exceeds the measurement count m");
    }
  }

  if (!cfg.override_range && cfg.n_s == 13 && cfg.l_taps >= 1 && cfg.bandwidth_hz > 0.0) {
    for (double cfo : cfg.cfo_hz_list) {
      if (swift_t1 &&
          std::abs(cfo) > cfo_range_hz(TrajKind::type1, cfg.bandwidth_hz, cfg.n_s, cfg.l_taps))
        bad("cfo " + fmt(cfo) + " Hz outside the type-1 correctable range (use override)");
      if (swift_t2 &&
          std::abs(cfo) > cfo_range_hz(TrajKind::type2, cfg.bandwidth_hz, cfg.n_s, cfg.l_taps))
        bad("cfo " + fmt(cfo) + " Hz outside the type-2 correctable range (use override)");
    }
  }
  return errs;
}

std::vector<ResultRow> run_grid(const ExperimentConfig& cfg) {
  const std::vector<Cell> cells = grid_cells(cfg);
  const int total = static_cast<int>(cells.size()) * cfg.trials;
  std::vector<std::vector<ResultRow>> slots(static_cast<std::size_t>(total));

  std::atomic<int> next{0};
  std::mutex err_mu;
  std::exception_ptr first_error;
  auto worker = [&]() {
    for (;;) {
      const int id = next.fetch_add(1);
      if (id >= total) return;
      try {
        const Cell& cell = cells[static_cast<std::size_t>(id) / cfg.trials];
        const int trial = id % cfg.trials;
        slots[static_cast<std::size_t>(id)] = run_task(cfg, cell, trial);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  const int nw = std::max(1, std::min(cfg.workers, total));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(nw));
  for (int i = 0; i < nw; ++i) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);

  std::vector<ResultRow> rows;
  for (auto& slot : slots)
    for (ResultRow& r : slot) rows.push_back(std::move(r));
  return rows;
}

std::string simulate_csv(const ExperimentConfig& cfg, std::string* runtime_json) {
  if (!cfg.m_list.empty())
    throw std::invalid_argument("simulate uses the single m key; m_list is for sweep");
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<ResultRow> rows = run_grid(cfg);
  const double total_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  std::string out =
      "# swiftlink-csv v1: seed,snr_db,cfo_hz,method,rate_bps_hz,nmse_db,cfo_mse_rad2,papr_db\n"
      "# note: rates ignore residual CFO\n";
  for (const ResultRow& r : rows) {
    out += std::to_string(r.seed);
    out += ',' + fmt(r.snr_db) + ',' + fmt(r.cfo_hz) + ',' + r.method + ',' +
           fmt(r.rate_bps_hz) + ',' + fmt(r.nmse_db) + ',' + fmt(r.cfo_mse_rad2) + ',' +
           fmt(r.papr_db) + '\n';
  }
  if (runtime_json != nullptr) *runtime_json = runtime_sidecar("simulate", cfg, rows, total_ms);
  return out;
}

std::string sweep_csv(const ExperimentConfig& cfg, std::string* runtime_json) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<ResultRow> rows = run_grid(cfg);
  const double total_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  const std::vector<Cell> cells = grid_cells(cfg);
  const std::size_t n_methods = cfg.methods.size();

  auto mean_se = [](const std::vector<double>& v) {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    if (v.size() < 2) return std::pair<double, double>(mean, 0.0);
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
    return std::pair<double, double>(mean, sd / std::sqrt(static_cast<double>(v.size())));
  };

  std::string out =
      "# swiftlink-sweep-csv v1: snr_db,cfo_hz,m,method,trials,rate_mean,rate_se,"
      "nmse_db_mean,nmse_db_se,cfo_mse_mean,papr_db_mean\n"
      "# note: rates ignore residual CFO\n";
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (std::size_t mi = 0; mi < n_methods; ++mi) {
      std::vector<double> rate, nm, cm, pp;
      for (int t = 0; t < cfg.trials; ++t) {
        const ResultRow& r = rows[(c * cfg.trials + static_cast<std::size_t>(t)) * n_methods + mi];
        rate.push_back(r.rate_bps_hz);
        nm.push_back(r.nmse_db);
        cm.push_back(r.cfo_mse_rad2);
        pp.push_back(r.papr_db);
      }
      const auto [rm, rs] = mean_se(rate);
      const auto [nmm, nms] = mean_se(nm);
      const auto [cmm, cms] = mean_se(cm);
      const auto [ppm, pps] = mean_se(pp);
      (void)cms;
      (void)pps;
      out += fmt(cells[c].snr_db) + ',' + fmt(cells[c].cfo_hz) + ',' +
             std::to_string(cells[c].m) + ',' + cfg.methods[mi] + ',' +
             std::to_string(cfg.trials) + ',' + fmt(rm) + ',' + fmt(rs) + ',' + fmt(nmm) + ',' +
             fmt(nms) + ',' + fmt(cmm) + ',' + fmt(ppm) + '\n';
    }
  }
  if (runtime_json != nullptr) *runtime_json = runtime_sidecar("sweep", cfg, rows, total_ms);
  return out;
}

std::string demo_shift_csv(const ExperimentConfig& cfg) {
  const int n = cfg.n;
  const CMat h = CMat::Ones(n, n);
  const CVec mask = spectral_mask(zc(n, cfg.zc_root));
  const CMat g = virtual_channel(h, mask);
  Rng rng = Rng(cfg.seed).stream(0);
  Trajectory t;
  if (cfg.demo_kind == "row")
    t = row_trajectory(n);
  else if (cfg.demo_kind == "block")
    t = block_trajectory(n);
  else if (cfg.demo_kind == "p")
    t = p_trajectory(n, 2 * n - 1, parse_dist(cfg.contour_dist), rng);
  else if (cfg.demo_kind == "n")
    t = n_trajectory(n, 2 * n - 1, parse_dist(cfg.contour_dist), rng);
  else
    throw std::invalid_argument("demo_shift: unknown kind " + cfg.demo_kind);

  const CMat spectrum = dft2(g.cwiseProduct(induced_phase_matrix(t, cfg.demo_epsilon_rad)));
  std::string out = "# swiftlink-demo-csv v1: r,c,magnitude\n";
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      out += std::to_string(r) + ',' + std::to_string(c) + ',' + fmt(std::abs(spectrum(r, c))) + '\n';
  return out;
}

RipOutcome ripcheck_report(const ExperimentConfig& cfg) {
  nlohmann::json j;
  std::string csv = "# swiftlink-ripcheck-csv v1: check,n,m_p,metric,value,bound,pass\n";
  bool violated = false;
  auto csv_row = [&csv](const std::string& check, int n, int mp, const std::string& metric,
                        double value, double bound, bool pass) {
    csv += check + ',' + std::to_string(n) + ',' + std::to_string(mp) + ',' + metric + ',' +
           fmt(value) + ',' + fmt(bound) + ',' + (pass ? "1" : "0") + '\n';
  };

  nlohmann::json lemma1 = nlohmann::json::array();
  for (int n : cfg.rip_n_list) {
    const Lemma1Report uni = lemma1_check(n, ContourDist::uniform, cfg.rip_grid);
    const Lemma1Report bin = lemma1_check(n, ContourDist::binomial, cfg.rip_grid);
    const bool pass = uni.violations == 0;
    violated = violated || !pass;
    lemma1.push_back({{"n", n},
                      {"grid", cfg.rip_grid},
                      {"uniform_violations", uni.violations},
                      {"uniform_worst_ratio", uni.worst_ratio},
                      {"checked", uni.checked},
                      {"binomial_violations_informational", bin.violations},
                      {"pass", pass}});
    csv_row("lemma1", n, 0, "violations", static_cast<double>(uni.violations), 0.0, pass);
  }
  j["lemma1"] = lemma1;

  nlohmann::json lemma2 = nlohmann::json::array();
  for (int n : cfg.rip_n_list) {
    const int mp = 2 * n - 1;
    long checked = 0, viols = 0;
    double worst_u = 0.0, worst_t = 0.0;
    for (int xi = 0; xi < cfg.rip_grid; ++xi) {
      const double x = -std::numbers::pi + 2.0 * std::numbers::pi * xi / cfg.rip_grid;
      for (int yi = 0; yi < cfg.rip_grid; ++yi) {
        const double y = -std::numbers::pi + 2.0 * std::numbers::pi * yi / cfg.rip_grid;
        const Lemma2Report r = lemma2_check(n, mp, x, y);
        if (r.skipped) continue;
        ++checked;
        if (r.b_upper > r.bound_upper || r.b_total > r.bound_total) ++viols;
        worst_u = std::max(worst_u, r.b_upper / r.bound_upper);
        worst_t = std::max(worst_t, r.b_total / r.bound_total);
      }
    }
    const bool pass = viols == 0;
    violated = violated || !pass;
    lemma2.push_back({{"n", n},
                      {"m_p", mp},
                      {"checked", checked},
                      {"violations", viols},
                      {"worst_upper_ratio", worst_u},
                      {"worst_total_ratio", worst_t},
                      {"pass", pass}});
    csv_row("lemma2", n, mp, "violations", static_cast<double>(viols), 0.0, pass);
  }
  j["lemma2"] = lemma2;

  Rng rng = Rng(cfg.seed).stream(0xA11CE);
  nlohmann::json t2 = nlohmann::json::array();
  struct Instance {
    const char* name;
    std::vector<Coord> support;
    CVec s;
  };
  std::vector<Instance> instances;
  {
    CVec s2(2);
    s2 << cd{1.0, 0.0} / std::sqrt(2.0), std::polar(1.0 / std::sqrt(2.0), std::numbers::pi / 4);
    instances.push_back({"well-separated", {{0, 0}, {16, 5}}, s2});
    CVec s1(1);
    s1 << cd{1.0, 0.0};
    instances.push_back({"k1-trivial", {{3, 4}}, s1});
    instances.push_back({"adversarial-dmin1", {{0, 0}, {1, 1}}, s2});
  }
  for (const Instance& inst : instances) {
    const Theorem2Report rep = theorem2_check(32, 63, inst.support, inst.s, cfg.rip_trials, rng);
    violated = violated || !rep.holds;
    t2.push_back({{"name", inst.name},
                  {"n", rep.n},
                  {"m_p", rep.m_p},
                  {"k", rep.k},
                  {"d_min", rep.d_min},
                  {"empirical_deviation", rep.empirical_deviation},
                  {"std_error", rep.std_error},
                  {"bound", rep.bound},
                  {"trials", cfg.rip_trials},
                  {"pass", rep.holds}});
    csv_row(std::string("theorem2-") + inst.name, rep.n, rep.m_p, "deviation_plus_3se",
            rep.empirical_deviation + 3.0 * rep.std_error, rep.bound, rep.holds);
  }
  j["theorem2"] = t2;
  j["seed"] = cfg.seed;
  j["violated"] = violated;

  RipOutcome out;
  out.json = j.dump(2) + "\n";
  out.csv = csv;
  out.violated = violated;
  return out;
}

}  // namespace swiftlink::harness
