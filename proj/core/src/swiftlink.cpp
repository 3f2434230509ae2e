#include "swiftlink/swiftlink.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "swiftlink/cfo.hpp"
#include "swiftlink/numerics.hpp"
#include "swiftlink/recovery.hpp"
#include "swiftlink/sequences.hpp"
#include "swiftlink/trajectories.hpp"

namespace swiftlink {

namespace {

constexpr double kResidualGate = 0.05;  // g-consistency gate on |residual CFO|
constexpr int kOversample = 64;
constexpr int kPeakStarts = 4;

CVec derotate(const CVec& y, double h) {
  CVec out(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i)
    out(i) = y(i) * std::polar(1.0, -h * static_cast<double>(i));
  return out;
}

CMat to_virtual(const CMat& s, const CMat& u_conj) { return u_conj * s * u_conj; }

}  // namespace

CMat compensate_and_combine(const CMat& g_p, const CMat& g_n, double eps_hat,
                            double* phi_out) {
  if (g_p.rows() != g_n.rows() || g_p.cols() != g_n.cols())
    throw std::invalid_argument("compensate_and_combine: dimension mismatch");
  const auto n = static_cast<int>(g_p.rows());
  const CMat pc = p_cnt(n, -eps_hat);
  const CMat mp = g_p.cwiseProduct(pc);
  const CMat mn = g_n.cwiseProduct(pc.conjugate());
  const cd inner = (mp.array() * mn.conjugate().array()).sum();
  const double phi = std::arg(inner);
  if (phi_out != nullptr) *phi_out = phi;
  return mp + std::polar(1.0, phi) * mn;
}

double golden_min(const std::function<double(double)>& f, double a, double b, double tol,
                  int max_it) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < max_it && b - a >= tol; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  return (a + b) / 2.0;
}

double aitken_loop(const std::function<double(double)>& g_of, double h0, int iters,
                   double lim) {
  double h = h0;
  bool have_prev = false;
  double r_prev = 0.0;
  for (int i = 0; i < iters; ++i) {
    double r = g_of(h);
    if (std::abs(r) < 1e-7) break;
    if (have_prev && r_prev != 0.0) {
      double ratio = r / r_prev;
      if (ratio > 0.0 && ratio < 0.97) {
        r = r / (1.0 - ratio);  // geometric-tail extrapolation
        have_prev = false;
      } else {
        r_prev = r;
      }
    } else {
      r_prev = r;
      have_prev = true;
    }
    h = std::clamp(h + r, -lim, lim);
  }
  return h;
}

double hybrid_estimate(const std::function<double(double)>& g_of,
                       const std::function<double(double)>& fit_of, const CVec& g0,
                       double spacing, double lim, double window) {
  std::vector<double> cands;
  cands.push_back(aitken_loop(g_of, 0.0, 8, lim));
  for (double c : g_peak_candidates(g0, spacing, lim, kOversample, kPeakStarts))
    cands.push_back(aitken_loop(g_of, c, 4, lim));

  using Scored = std::tuple<double, double, double>;  // (fit, |residual|, h)
  std::vector<Scored> scored;
  scored.reserve(cands.size());
  for (double c : cands) scored.emplace_back(fit_of(c), std::abs(g_of(c)), c);

  double best, fbest;
  std::vector<Scored> ok;
  for (const auto& s : scored)
    if (std::get<1>(s) <= kResidualGate) ok.push_back(s);
  if (!ok.empty()) {
    const auto& win = *std::min_element(ok.begin(), ok.end());
    fbest = std::get<0>(win);
    best = std::get<2>(win);
  } else {
    const auto& win = *std::min_element(
        scored.begin(), scored.end(),
        [](const Scored& a, const Scored& b) { return std::get<1>(a) < std::get<1>(b); });
    best = std::get<2>(win);
    fbest = fit_of(best);
  }
  double h2 = golden_min(fit_of, std::max(best - window, -lim), std::min(best + window, lim));
  return fit_of(h2) < fbest ? h2 : best;
}

namespace {

struct BranchSolves {
  SparseEstimate p;
  SparseEstimate n;
};

}  // namespace

SwiftLinkResult run_type1(const CVec& y, const Trajectory& t, const CVec& z, int k_max,
                          double sigma, std::optional<double> h_force) {
  if (t.kind != TrajKind::type1) throw std::invalid_argument("run_type1: trajectory kind must be type1");
  if (t.split <= 0 || t.split >= static_cast<int>(t.steps.size()))
    throw std::invalid_argument("run_type1: composite trajectory lacks a p/n split");
  if (y.size() != static_cast<Eigen::Index>(t.steps.size()))
    throw std::invalid_argument("run_type1: measurement length mismatch");
  const int n = t.n;
  const int m_p = t.split;
  const std::vector<Coord> sp(t.steps.begin(), t.steps.begin() + m_p);
  const std::vector<Coord> sn(t.steps.begin() + m_p, t.steps.end());
  const PartialDftDict dict_p(sp, n);
  const PartialDftDict dict_n(sn, n);
  const CMat u_conj = dft_matrix(n).conjugate();
  const double stop = std::sqrt(static_cast<double>(m_p)) * sigma;
  const double lim = std::numbers::pi / 2.0;
  const double spacing = 2.0;

  int evals = 0;
  auto solve = [&](double h) -> BranchSolves {
    ++evals;
    const CVec yc = derotate(y, h);
    BranchSolves bs;
    try {
      bs.p = dict_p.solve(yc.head(m_p), k_max, stop);
    } catch (const std::exception& e) {
      throw std::runtime_error(std::string("run_type1: p-branch recovery failed: ") + e.what());
    }
    try {
      bs.n = dict_n.solve(yc.tail(yc.size() - m_p), k_max, stop);
    } catch (const std::exception& e) {
      throw std::runtime_error(std::string("run_type1: n-branch recovery failed: ") + e.what());
    }
    return bs;
  };
  auto g_of = [&](double h) -> double {
    BranchSolves bs = solve(h);
    return estimate_cfo(g_vector(to_virtual(bs.p.s_hat, u_conj), to_virtual(bs.n.s_hat, u_conj)),
                        spacing, std::numbers::pi, kOversample);
  };
  auto fit_of = [&](double h) -> double {
    BranchSolves bs = solve(h);
    return bs.p.residual_norm * bs.p.residual_norm + bs.n.residual_norm * bs.n.residual_norm;
  };

  double h;
  if (h_force.has_value()) {
    h = *h_force;
  } else {
    BranchSolves bs0 = solve(0.0);
    const CVec g0 = g_vector(to_virtual(bs0.p.s_hat, u_conj), to_virtual(bs0.n.s_hat, u_conj));
    h = hybrid_estimate(g_of, fit_of, g0, spacing, lim, 0.098 / spacing);
  }

  BranchSolves fin = solve(h);
  const CMat gp = to_virtual(fin.p.s_hat, u_conj);
  const CMat gn = to_virtual(fin.n.s_hat, u_conj);
  SwiftLinkResult res;
  res.epsilon_hat = h;
  // the derotation already aligned both branches, so combine at eps = 0 and
  // average: the estimate then carries a single branch's magnitude
  const CMat mc = 0.5 * compensate_and_combine(gp, gn, 0.0, &res.phi_hat);
  res.h_hat = recover_h_from_g(mc, spectral_mask(z));
  res.diag.g = g_vector(gp, gn);
  res.diag.resid_p = fin.p.residual_norm;
  res.diag.resid_n = fin.n.residual_norm;
  res.diag.resid_final = std::sqrt(fin.p.residual_norm * fin.p.residual_norm +
                                   fin.n.residual_norm * fin.n.residual_norm);
  res.diag.solver_evals = evals;
  return res;
}

SwiftLinkResult run_type2(const CVec& y, const Trajectory& t, const CVec& z, int k_max,
                          double sigma, std::optional<double> h_force) {
  if (t.kind != TrajKind::type2) throw std::invalid_argument("run_type2: trajectory kind must be type2");
  if (y.size() != static_cast<Eigen::Index>(t.steps.size()))
    throw std::invalid_argument("run_type2: measurement length mismatch");
  if (t.steps.size() % 2 != 0) throw std::invalid_argument("run_type2: odd stream length");
  const int n = t.n;
  const auto m = static_cast<int>(t.steps.size());
  const int m_h = m / 2;
  std::vector<Coord> sp, sn;
  sp.reserve(m_h);
  sn.reserve(m_h);
  for (int i = 0; i < m; i += 2) {
    sp.push_back(t.steps[i]);
    sn.push_back(t.steps[i + 1]);
  }
  const PartialDftDict dict_p(sp, n);
  const PartialDftDict dict_n(sn, n);
  const PartialDftDict dict_full(t.steps, n);
  const CMat u_conj = dft_matrix(n).conjugate();
  const double stop = std::sqrt(static_cast<double>(m_h)) * sigma;
  const double stop_full = std::sqrt(static_cast<double>(m)) * sigma;
  const double lim = std::numbers::pi / 4.0;
  const double spacing = 4.0;

  int evals = 0;
  auto split_even_odd = [&](const CVec& yc) {
    std::pair<CVec, CVec> halves{CVec(m_h), CVec(m_h)};
    for (int i = 0; i < m_h; ++i) {
      halves.first(i) = yc(2 * i);
      halves.second(i) = yc(2 * i + 1);
    }
    return halves;
  };
  auto solve = [&](double h) -> BranchSolves {
    ++evals;
    const CVec yc = derotate(y, h);
    auto [yp, yn] = split_even_odd(yc);
    BranchSolves bs;
    try {
      bs.p = dict_p.solve(yp, k_max, stop);
    } catch (const std::exception& e) {
      throw std::runtime_error(std::string("run_type2: p-branch recovery failed: ") + e.what());
    }
    try {
      bs.n = dict_n.solve(yn, k_max, stop);
    } catch (const std::exception& e) {
      throw std::runtime_error(std::string("run_type2: n-branch recovery failed: ") + e.what());
    }
    return bs;
  };
  auto g_of = [&](double h) -> double {
    BranchSolves bs = solve(h);
    return estimate_cfo(g_vector(to_virtual(bs.p.s_hat, u_conj), to_virtual(bs.n.s_hat, u_conj)),
                        spacing, std::numbers::pi, kOversample);
  };
  auto fit_full = [&](double h) -> double {
    ++evals;
    const SparseEstimate full = dict_full.solve(derotate(y, h), k_max, stop_full);
    return full.residual_norm * full.residual_norm;
  };

  double h;
  if (h_force.has_value()) {
    h = *h_force;
  } else {
    BranchSolves bs0 = solve(0.0);
    const CVec g0 = g_vector(to_virtual(bs0.p.s_hat, u_conj), to_virtual(bs0.n.s_hat, u_conj));
    h = hybrid_estimate(g_of, fit_full, g0, spacing, lim, 0.098 / spacing);
  }

  SparseEstimate full;
  try {
    full = dict_full.solve(derotate(y, h), k_max, stop_full);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("run_type2: final recovery failed: ") + e.what());
  }
  BranchSolves fin = solve(h);
  SwiftLinkResult res;
  res.epsilon_hat = h;
  res.h_hat = recover_h_from_g(to_virtual(full.s_hat, u_conj), spectral_mask(z));
  res.phi_hat = 0.0;
  res.diag.g = g_vector(to_virtual(fin.p.s_hat, u_conj), to_virtual(fin.n.s_hat, u_conj));
  res.diag.resid_p = fin.p.residual_norm;
  res.diag.resid_n = fin.n.residual_norm;
  res.diag.resid_final = full.residual_norm;
  res.diag.solver_evals = evals;
  return res;
}

double cfo_range_hz(TrajKind kind, double w_hz, int n_s, int l) {
  if (w_hz <= 0.0 || n_s < 1 || l < 1) throw std::invalid_argument("cfo_range_hz: bad parameters");
  const double base = w_hz / (4.0 * (n_s + l - 1));
  if (kind == TrajKind::type1) return base;
  if (kind == TrajKind::type2) return base / 2.0;
  throw std::invalid_argument("cfo_range_hz: kind must be type1 or type2");
}

}  // namespace swiftlink
