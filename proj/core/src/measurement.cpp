#include "swiftlink/measurement.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "swiftlink/numerics.hpp"
#include "swiftlink/sequences.hpp"

namespace swiftlink {

namespace {

cd projection(const CMat& h, const CVec& b, const CVec& d) {
  if (b.size() != h.rows() || d.size() != h.cols())
    throw std::invalid_argument("projection: dimension mismatch");
  return (b.adjoint() * h * d.conjugate())(0, 0);
}

cd noise_sample(double sigma, Rng* rng) {
  if (sigma <= 0.0) return cd(0.0, 0.0);
  if (rng == nullptr) throw std::invalid_argument("noise requested without an RNG");
  return sigma * rng->cgauss();
}

}  // namespace

cd project_beam(const CMat& h, const CVec& b, const CVec& d, double eps, int n,
                double sigma, Rng* rng) {
  cd y = projection(h, b, d) + noise_sample(sigma, rng);
  return y * std::polar(1.0, eps * n);
}

MeasurementSet measure_trajectory(const CMat& h, const Trajectory& t, const CVec& z,
                                  double eps, double sigma, Rng* rng) {
  if (h.rows() != t.n || h.cols() != t.n)
    throw std::invalid_argument("measure_trajectory: dimension mismatch");
  const CMat g = virtual_channel(h, spectral_mask(z));
  MeasurementSet ms;
  ms.trajectory = t;
  ms.epsilon = eps;
  ms.sigma = sigma;
  ms.effective_epsilon = eps;
  ms.y.resize(static_cast<Eigen::Index>(t.steps.size()));
  for (size_t m = 0; m < t.steps.size(); ++m) {
    cd v = g(t.steps[m].r, t.steps[m].c) + noise_sample(sigma, rng);
    ms.y(static_cast<Eigen::Index>(m)) = v * std::polar(1.0, eps * static_cast<double>(m));
  }
  return ms;
}

CVec sample_grid(const CMat& a, const Trajectory& t) {
  CVec out(static_cast<Eigen::Index>(t.steps.size()));
  for (size_t m = 0; m < t.steps.size(); ++m)
    out(static_cast<Eigen::Index>(m)) = a(t.steps[m].r, t.steps[m].c);
  return out;
}

CMat scatter_grid(const CVec& v, const Trajectory& t) {
  if (v.size() != static_cast<Eigen::Index>(t.steps.size()))
    throw std::invalid_argument("scatter_grid: length mismatch");
  CMat out = CMat::Zero(t.n, t.n);
  for (size_t m = 0; m < t.steps.size(); ++m)
    out(t.steps[m].r, t.steps[m].c) = v(static_cast<Eigen::Index>(m));
  return out;
}

CVec wideband_measure_pairs(const std::vector<CMat>& taps,
                            const std::vector<std::pair<CVec, CVec>>& pairs,
                            double eps_sym, const CVec* noise) {
  const auto l_taps = static_cast<int>(taps.size());
  const CVec bk = barker13();
  const int n_s = static_cast<int>(bk.size());
  const int frame = n_s + l_taps - 1;
  CVec y(static_cast<Eigen::Index>(pairs.size()));
  std::vector<cd> h(l_taps), x(frame);
  for (size_t i = 0; i < pairs.size(); ++i) {
    const auto& [b, d] = pairs[i];
    for (int l = 0; l < l_taps; ++l) h[l] = projection(taps[l], b, d);
    for (int tau = 0; tau < frame; ++tau) {
      cd acc = 0.0;
      for (int l = 0; l < l_taps; ++l) {
        int m = tau - l;
        if (m >= 0 && m < n_s) acc += h[l] * bk(m).real();
      }
      x[tau] = acc * std::polar(1.0, eps_sym * (static_cast<double>(i) * frame + tau));
    }
    cd resp = 0.0;
    for (int l = 0; l < l_taps; ++l)
      for (int k = 0; k < n_s; ++k) resp += bk(k).real() * x[l + k];
    y(static_cast<Eigen::Index>(i)) = resp / static_cast<double>(n_s);
  }
  if (noise != nullptr) {
    if (noise->size() != y.size())
      throw std::invalid_argument("wideband_measure_pairs: noise length mismatch");
    y += *noise;
  }
  return y;
}

MeasurementSet wideband_measure(const ChannelRealization& ch, const Trajectory& t,
                                const CVec& z, double analog_cfo_hz, double w_hz,
                                double sigma, Rng* rng) {
  if (ch.n != t.n) throw std::invalid_argument("wideband_measure: dimension mismatch");
  const double eps_sym = 2.0 * std::numbers::pi * analog_cfo_hz / w_hz;
  std::vector<std::pair<CVec, CVec>> pairs;
  pairs.reserve(t.steps.size());
  for (const auto& s : t.steps) pairs.emplace_back(circshift(z, s.r), circshift(z, s.c));
  MeasurementSet ms;
  ms.trajectory = t;
  ms.sigma = sigma;
  ms.epsilon = eps_sym;
  const int frame = static_cast<int>(barker13().size()) + ch.l - 1;
  ms.effective_epsilon = eps_sym * frame;
  if (sigma > 0.0) {
    if (rng == nullptr) throw std::invalid_argument("noise requested without an RNG");
    CVec noise(static_cast<Eigen::Index>(pairs.size()));
    for (Eigen::Index i = 0; i < noise.size(); ++i) noise(i) = sigma * rng->cgauss();
    ms.y = wideband_measure_pairs(ch.taps, pairs, eps_sym, &noise);
  } else {
    ms.y = wideband_measure_pairs(ch.taps, pairs, eps_sym, nullptr);
  }
  return ms;
}

CMat barker_effective_channel(const ChannelRealization& ch) {
  const CVec bk = barker13();
  const int n_s = static_cast<int>(bk.size());
  std::vector<double> r(n_s, 0.0);  // aperiodic autocorrelation
  for (int m = 0; m < n_s; ++m)
    for (int k = 0; k + m < n_s; ++k) r[m] += bk(k).real() * bk(k + m).real();
  CMat out = CMat::Zero(ch.n, ch.n);
  for (int m = 0; m < ch.l; ++m) {
    double gamma = 0.0;
    for (int l = 0; l < ch.l; ++l) {
      int lag = std::abs(l - m);
      if (lag < n_s) gamma += r[lag];
    }
    out += (gamma / n_s) * ch.taps[m];
  }
  return out;
}

}  // namespace swiftlink
