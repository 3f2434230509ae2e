#include "swiftlink/baselines.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "swiftlink/numerics.hpp"
#include "swiftlink/recovery.hpp"

namespace swiftlink {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

CVec quantize_unit(const CVec& v, int bits) {
  const auto n = v.size();
  if (n == 0) throw std::invalid_argument("quantize_unit: empty vector");
  CVec out(n);
  if (bits <= 0) {
    const double nrm = v.norm();
    if (nrm == 0.0) throw std::invalid_argument("quantize_unit: zero vector");
    return v / nrm;
  }
  const double step = kTwoPi / static_cast<double>(1 << bits);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const double idx = std::floor(std::arg(v(i)) / step + 0.5);
    out(i) = std::polar(scale, step * idx);
  }
  return out;
}

CVec random_phase_beam(int n, int bits, Rng& rng) {
  if (n < 1 || bits < 1) throw std::invalid_argument("random_phase_beam: bad parameters");
  const auto levels = static_cast<std::uint64_t>(1) << bits;
  const double step = kTwoPi / static_cast<double>(levels);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  CVec b(n);
  for (int i = 0; i < n; ++i)
    b(i) = std::polar(scale, step * static_cast<double>(rng.uniform_int(levels)));
  return b;
}

ScanResult exhaustive_scan(const CMat& h, double sigma, Rng& rng, double epsilon) {
  const auto n = static_cast<int>(h.rows());
  if (n < 1 || h.cols() != n) throw std::invalid_argument("exhaustive_scan: square channel required");
  const CMat u_conj = dft_matrix(n).conjugate();
  ScanResult res;
  res.y.resize(static_cast<Eigen::Index>(n) * n);
  double best = -1.0;
  int step = 0;
  for (int p = 0; p < n; ++p) {
    const CVec b = u_conj.col(p);
    const CVec bh = b.adjoint() * h;
    for (int q = 0; q < n; ++q, ++step) {
      const cd clean = bh.transpose() * u_conj.col(q).conjugate();
      const cd v = sigma > 0.0 ? sigma * rng.cgauss() : cd{0.0, 0.0};
      const cd y = (clean + v) * std::polar(1.0, epsilon * static_cast<double>(step));
      res.y(step) = y;
      const double mag = std::abs(y);
      if (mag > best) {
        best = mag;
        res.p = p;
        res.q = q;
      }
    }
  }
  res.beams.f_e = u_conj.col(res.p);
  res.beams.f_a = u_conj.col(res.q);
  res.beams.bits = 0;
  return res;
}

IidCsResult iid_cs_baseline(const CMat& h, int m, double epsilon, double sigma, int bits,
                            Rng& rng, int k_max) {
  const auto n = static_cast<int>(h.rows());
  if (n < 1 || h.cols() != n) throw std::invalid_argument("iid_cs_baseline: square channel required");
  if (m < 1) throw std::invalid_argument("iid_cs_baseline: m must be positive");
  const CMat u = dft_matrix(n);
  CVec y(m);
  CMat atoms(m, static_cast<Eigen::Index>(n) * n);
  for (int i = 0; i < m; ++i) {
    const CVec b = random_phase_beam(n, bits, rng);
    const CVec d = random_phase_beam(n, bits, rng);
    const cd clean = b.adjoint() * h * d.conjugate();
    const cd v = sigma > 0.0 ? sigma * rng.cgauss() : cd{0.0, 0.0};
    y(i) = (clean + v) * std::polar(1.0, epsilon * static_cast<double>(i));
    const CVec ub = (u * b).conjugate();
    const CVec ud = (u * d).conjugate();
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) atoms(i, static_cast<Eigen::Index>(k) * n + l) = ub(k) * ud(l);
  }
  const double stop = std::sqrt(static_cast<double>(m)) * sigma;
  const DenseEstimate est = omp_dense(y, atoms, k_max, stop);
  CMat x_hat = CMat::Zero(n, n);
  for (std::size_t i = 0; i < est.support.size(); ++i) {
    const auto flat = est.support[i];
    x_hat(flat / n, flat % n) = est.coef(static_cast<Eigen::Index>(i));
  }
  IidCsResult res;
  res.h_hat = idft2(x_hat);
  res.residual_norm = est.residual_norm;
  res.beams = extract_beams(res.h_hat, bits);
  return res;
}

BeamPair extract_beams(const CMat& h_hat, int bits) {
  if (h_hat.rows() == 0 || h_hat.cols() == 0 || h_hat.norm() == 0.0)
    throw std::invalid_argument("extract_beams: zero matrix");
  Eigen::JacobiSVD<CMat> svd(h_hat, Eigen::ComputeThinU | Eigen::ComputeThinV);
  BeamPair out;
  out.bits = bits;
  out.f_e = quantize_unit(svd.matrixU().col(0), bits);
  out.f_a = quantize_unit(svd.matrixV().col(0).conjugate(), bits);
  return out;
}

double achievable_rate(const ChannelRealization& ch, const BeamPair& beams, double sigma,
                       int n_subcarriers) {
  if (n_subcarriers < 1) throw std::invalid_argument("achievable_rate: bad subcarrier count");
  if (ch.taps.empty()) throw std::invalid_argument("achievable_rate: empty channel");
  if (sigma <= 0.0) throw std::invalid_argument("achievable_rate: sigma must be positive");
  const auto l = static_cast<int>(ch.taps.size());
  std::vector<cd> taps(l);
  for (int i = 0; i < l; ++i)
    taps[i] = beams.f_e.adjoint() * ch.taps[static_cast<std::size_t>(i)] * beams.f_a.conjugate();

  std::vector<double> gains;
  gains.reserve(static_cast<std::size_t>(n_subcarriers));
  for (int m = 0; m < n_subcarriers; ++m) {
    cd hf{0.0, 0.0};
    for (int i = 0; i < l; ++i)
      hf += taps[static_cast<std::size_t>(i)] *
            std::polar(1.0, -kTwoPi * static_cast<double>(m) * i / n_subcarriers);
    const double g = std::norm(hf) / (sigma * sigma);
    if (g > 1e-18) gains.push_back(g);
  }
  if (gains.empty()) return 0.0;

  // bisection on the water level; total power equals the subcarrier count
  const double budget = static_cast<double>(n_subcarriers);
  double lo = 0.0, hi = 1e12;
  for (int it = 0; it < 200; ++it) {
    const double mu = 0.5 * (lo + hi);
    double power = 0.0;
    for (double g : gains) power += std::max(0.0, mu - 1.0 / g);
    if (power > budget)
      hi = mu;
    else
      lo = mu;
  }
  const double mu = 0.5 * (lo + hi);
  double rate = 0.0;
  for (double g : gains) rate += std::log2(1.0 + std::max(0.0, mu - 1.0 / g) * g);
  return rate / n_subcarriers;
}

double papr_db(const CVec& y) {
  if (y.size() == 0) throw std::invalid_argument("papr_db: empty vector");
  const double peak = y.cwiseAbs2().maxCoeff();
  const double mean = y.cwiseAbs2().mean();
  if (mean == 0.0) throw std::invalid_argument("papr_db: zero vector");
  return 10.0 * std::log10(peak / mean);
}

double nmse(const CMat& h, const CMat& h_hat) {
  if (h.rows() != h_hat.rows() || h.cols() != h_hat.cols())
    throw std::invalid_argument("nmse: dimension mismatch");
  const double nh = h.squaredNorm();
  if (nh == 0.0) throw std::invalid_argument("nmse: zero reference");
  const cd inner = (h.array() * h_hat.conjugate().array()).sum();
  // || h - e^{j a} h_hat ||^2 minimized over the global phase a
  return (nh + h_hat.squaredNorm() - 2.0 * std::abs(inner)) / nh;
}

double nmse_db(const CMat& h, const CMat& h_hat) {
  const double v = nmse(h, h_hat);
  if (v < 1e-12) return -120.0;
  return 10.0 * std::log10(v);
}

double cfo_mse(const std::vector<double>& eps, const std::vector<double>& eps_hat) {
  if (eps.size() != eps_hat.size() || eps.empty())
    throw std::invalid_argument("cfo_mse: need equal nonempty lists");
  double acc = 0.0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double d = eps_hat[i] - eps[i];
    acc += d * d;
  }
  return acc / static_cast<double>(eps.size());
}

}  // namespace swiftlink
