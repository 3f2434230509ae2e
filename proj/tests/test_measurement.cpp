#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <utility>
#include <vector>

#include "swiftlink/channel.hpp"
#include "swiftlink/cfo.hpp"
#include "swiftlink/measurement.hpp"
#include "swiftlink/numerics.hpp"
#include "swiftlink/recovery.hpp"
#include "swiftlink/rng.hpp"
#include "swiftlink/sequences.hpp"
#include "swiftlink/trajectories.hpp"

using namespace swiftlink;

namespace {

constexpr double kPi = std::numbers::pi;

CMat random_mat(int n, Rng& rng) {
  CMat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.cgauss();
  return m;
}

Trajectory full_type1(int n, ContourDist dist, Rng& rng) {
  const int m = 2 * n - 1;
  const Trajectory p = p_trajectory(n, m, dist, rng);
  const Trajectory nn = n_trajectory(n, m, dist, rng);
  return compose_type1(p, nn);
}

}  // namespace

TEST_CASE("shifted-ZC projections read off virtual channel entries") {
  Rng rng(31);
  const int n = 16;
  const CVec z = zc(n, 5);
  const CVec mask = spectral_mask(z);
  for (int trial = 0; trial < 10; ++trial) {
    const CMat h = random_mat(n, rng);
    const CMat g = virtual_channel(h, mask);
    const int r = static_cast<int>(rng.uniform_int(n));
    const int c = static_cast<int>(rng.uniform_int(n));
    const cd y = project_beam(h, circshift(z, r), circshift(z, c), 0.0, 0, 0.0, nullptr);
    CHECK(std::abs(y - g(r, c)) < 1e-12);
    const cd y_rot = project_beam(h, circshift(z, r), circshift(z, c), 0.3, 5, 0.0, nullptr);
    CHECK(std::abs(y_rot - g(r, c) * std::polar(1.0, 0.3 * 5)) < 1e-12);
  }
}

TEST_CASE("trajectory measurements sample the virtual grid with a per-step ramp") {
  Rng rng(12);
  const int n = 16;
  const CVec z = zc(n, 5);
  const CMat h = random_mat(n, rng);
  const CMat g = virtual_channel(h, spectral_mask(z));
  const Trajectory t = full_type1(n, ContourDist::binomial, rng);
  const MeasurementSet ms = measure_trajectory(h, t, z, 0.0, 0.0, nullptr);
  CHECK((ms.y - sample_grid(g, t)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(ms.epsilon == 0.0);
  CHECK(ms.effective_epsilon == 0.0);

  const double eps = 0.17;
  const MeasurementSet rot = measure_trajectory(h, t, z, eps, 0.0, nullptr);
  for (int m = 0; m < rot.y.size(); ++m)
    CHECK(std::abs(rot.y(m) - ms.y(m) * std::polar(1.0, eps * m)) < 1e-12);
  CHECK(rot.effective_epsilon == eps);
}

TEST_CASE("noise is drawn before the CFO rotation, so seeds pair exactly") {
  Rng rng(9);
  const int n = 8;
  const CVec z = zc(n, 3);
  const CMat h = random_mat(n, rng);
  const Trajectory t = full_type1(n, ContourDist::uniform, rng);
  Rng a(123), b(123);
  const MeasurementSet y0 = measure_trajectory(h, t, z, 0.0, 0.5, &a);
  const MeasurementSet y1 = measure_trajectory(h, t, z, 0.7, 0.5, &b);
  for (int m = 0; m < y0.y.size(); ++m) {
    CHECK(std::abs(y1.y(m) - y0.y(m) * std::polar(1.0, 0.7 * m)) < 1e-13);
  }
}

TEST_CASE("sample and scatter are adjoint partial samplers") {
  Rng rng(4);
  const int n = 8;
  const CMat a = random_mat(n, rng);
  const Trajectory row = row_trajectory(n);
  CHECK((scatter_grid(sample_grid(a, row), row) - a).cwiseAbs().maxCoeff() == 0.0);

  const Trajectory p = p_trajectory(n, 11, ContourDist::uniform, rng);
  const CVec v = sample_grid(a, p);
  const CMat back = scatter_grid(v, p);
  CHECK((sample_grid(back, p) - v).cwiseAbs().maxCoeff() == 0.0);
  int nonzero = 0;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (std::abs(back(r, c)) > 0.0) ++nonzero;
  CHECK(nonzero == 11);
}

TEST_CASE("Barker frame weights each tap by its lag-folded autocorrelation") {
  const int n = 8, l = 13;
  for (int m = 0; m < l; ++m) {
    Ray ray = ray_from_angles(cd{1.0, 0.0}, 0.4, -0.8, m);
    const ChannelRealization ch = synth_wideband({ray}, n, l);
    const CMat h_eff = barker_effective_channel(ch);
    const double gamma = (m % 2 == 0) ? 19.0 / 13.0 : 18.0 / 13.0;
    CHECK((h_eff - gamma * ch.taps[m]).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("zero-CFO wideband frames sample the effective channel exactly") {
  Rng rng(17);
  const int n = 16;
  const CVec z = zc(n, 5);
  const ChannelRealization ch = random_wideband(n, 13, 3, rng);
  const Trajectory t = full_type1(n, ContourDist::binomial, rng);
  const MeasurementSet ms = wideband_measure(ch, t, z, 0.0, 100e6, 0.0, nullptr);
  const CMat g_eff = virtual_channel(barker_effective_channel(ch), spectral_mask(z));
  CHECK((ms.y - sample_grid(g_eff, t)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("a single-tap Barker frame reduces to the narrowband model") {
  Rng rng(23);
  const int n = 8;
  const CVec z = zc(n, 3);
  Ray ray = ray_from_angles(rng.cgauss(), 0.3, 1.1, 0);
  const ChannelRealization ch = synth_wideband({ray}, n, 1);
  const Trajectory t = full_type1(n, ContourDist::uniform, rng);
  const MeasurementSet wb = wideband_measure(ch, t, z, 0.0, 100e6, 0.0, nullptr);
  const MeasurementSet nb = measure_trajectory(ch.taps[0], t, z, 0.0, 0.0, nullptr);
  CHECK((wb.y - nb.y).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("explicit post-correlation noise adds verbatim") {
  Rng rng(5);
  const int n = 8;
  const CVec z = zc(n, 3);
  const ChannelRealization ch = random_wideband(n, 13, 2, rng);
  std::vector<std::pair<CVec, CVec>> pairs;
  for (int i = 0; i < 4; ++i)
    pairs.emplace_back(circshift(z, i), circshift(z, (i * 3) % n));
  CVec noise(4);
  for (int i = 0; i < 4; ++i) noise(i) = rng.cgauss();
  const CVec clean = wideband_measure_pairs(ch.taps, pairs, 1e-3, nullptr);
  const CVec noisy = wideband_measure_pairs(ch.taps, pairs, 1e-3, &noise);
  CHECK((noisy - clean - noise).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("a 1 ppm CFO acts on Barker frames as a near-pure measurement ramp") {
  Rng rng(29);
  const int n = 32;
  const CVec z = zc(n, 11);
  const ChannelRealization ch = random_wideband(n, 13, 4, rng);
  const Trajectory t = full_type1(n, ContourDist::binomial, rng);
  const double w_hz = 100e6, f_hz = 28e3;
  const MeasurementSet y0 = wideband_measure(ch, t, z, 0.0, w_hz, 0.0, nullptr);
  const MeasurementSet y1 = wideband_measure(ch, t, z, f_hz, w_hz, 0.0, nullptr);
  const double frame = 13 + 13 - 1;
  const double eps_eff = 2.0 * kPi * f_hz / w_hz * frame;
  CHECK(std::abs(y1.effective_epsilon - eps_eff) < 1e-15);
  double worst = 0.0;
  for (int m = 0; m < y0.y.size(); ++m)
    worst = std::max(worst, std::abs(y1.y(m) - y0.y(m) * std::polar(1.0, eps_eff * m)));
  CHECK(worst < 0.05);  // intra-frame wobble stays far below the signal scale
}

TEST_CASE("the Barker-weighted channel sits measurably away from the plain tap sum") {
  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const ChannelRealization ch = random_wideband(16, 13, 4, rng);
    const CMat h_eff = barker_effective_channel(ch);
    const CMat h_sum = ch.equivalent_narrowband();
    const double rel = (h_eff - h_sum).norm() / h_sum.norm();
    CHECK(rel > 0.3);
    CHECK(rel < 0.6);
  }
}

TEST_CASE("partial-DFT OMP nails on-grid sparse beamspace exactly") {
  Rng rng(7);
  const int n = 16;
  for (int trial = 0; trial < 5; ++trial) {
    const Trajectory t = full_type1(n, ContourDist::binomial, rng);
    CMat s = CMat::Zero(n, n);
    std::set<std::pair<int, int>> cells;
    while (cells.size() < 3) {
      const int k = static_cast<int>(rng.uniform_int(n));
      const int l = static_cast<int>(rng.uniform_int(n));
      if (cells.insert({k, l}).second) s(k, l) = rng.cgauss();
    }
    const CVec y = sample_grid(idft2(s), t);
    const SparseEstimate est = omp_partial_dft(y, t.steps, n, 8, 1e-10);
    CHECK(est.residual_norm < 1e-9);
    CHECK((est.s_hat - s).cwiseAbs().maxCoeff() < 1e-9);
    for (const auto& [k, l] : cells) {
      const bool found = std::any_of(est.support.begin(), est.support.end(),
                                     [&](const Coord& co) { return co.r == k && co.c == l; });
      CHECK(found);
    }
  }
}

TEST_CASE("OMP always commits to at least one atom") {
  Rng rng(3);
  const int n = 8;
  const Trajectory t = full_type1(n, ContourDist::uniform, rng);
  CVec y = CVec::Constant(t.steps.size(), cd{1e-20, 0.0});
  const SparseEstimate est = omp_partial_dft(y, t.steps, n, 4, 1.0);
  CHECK(est.support.size() >= 1);
  CHECK_THROWS(omp_partial_dft(y, t.steps, n, 0, 1e-6));
  CHECK_THROWS(omp_partial_dft(y, t.steps, n, static_cast<int>(t.steps.size()) + 1, 1e-6));
}

TEST_CASE("OMP support covers the truth in nearly all 20 dB draws") {
  Rng rng(55);
  const int n = 16;
  const double sigma = 0.1;  // 20 dB against unit-average virtual-grid power
  const CVec z = zc(n, 5);
  int ok = 0;
  const int trials = 500;
  for (int trial = 0; trial < trials; ++trial) {
    const int k = 1 + static_cast<int>(rng.uniform_int(4));
    const ChannelRealization ch = random_sparse_beamspace(n, k, true, rng);
    const Trajectory t = full_type1(n, ContourDist::binomial, rng);
    const MeasurementSet ms =
        measure_trajectory(ch.equivalent_narrowband(), t, z, 0.0, sigma, &rng);
    const double tol = std::sqrt(static_cast<double>(ms.y.size())) * sigma;
    const SparseEstimate est = recover_masked_beamspace(ms.y, t, 8, tol);
    bool covered = true;
    for (const auto& ray : ch.rays) {
      const int p = static_cast<int>(std::lround(ray.omega_e * n / (2.0 * kPi))) % n;
      const int q = static_cast<int>(std::lround(ray.omega_a * n / (2.0 * kPi))) % n;
      covered &= std::any_of(est.support.begin(), est.support.end(),
                             [&](const Coord& co) { return co.r == p && co.c == q; });
    }
    ok += covered ? 1 : 0;
  }
  CHECK(ok >= trials * 99 / 100);
}

TEST_CASE("dense OMP recovers exact sparse combinations and tolerates dead atoms") {
  Rng rng(19);
  CMat a(20, 40);
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 40; ++j) a(i, j) = rng.cgauss();
  a.col(7).setZero();  // dead atom must never be selected
  CVec x = CVec::Zero(40);
  x(3) = cd{1.0, -2.0};
  x(11) = cd{0.5, 0.5};
  x(29) = cd{-1.5, 0.2};
  const CVec y = a * x;
  const DenseEstimate est = omp_dense(y, a, 6, 1e-10);
  CHECK(est.residual_norm < 1e-9);
  CVec xhat = CVec::Zero(40);
  for (size_t i = 0; i < est.support.size(); ++i) xhat(est.support[i]) = est.coef(i);
  CHECK((xhat - x).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(std::none_of(est.support.begin(), est.support.end(), [](int s) { return s == 7; }));
  CHECK_THROWS(omp_dense(y, a, 0, 1e-6));
}

TEST_CASE("mask inversion undoes masking for ideal and quantized masks") {
  Rng rng(37);
  const int n = 8;
  const CMat x = random_mat(n, rng);
  for (int bits : {0, 2}) {
    const CVec z = bits > 0 ? quantize_phases(zc(n, 3), bits) : zc(n, 3);
    const CVec mask = spectral_mask(z);
    CHECK((invert_mask(masked_beamspace(x, mask), mask) - x).cwiseAbs().maxCoeff() < 1e-12);
  }
  const CVec mask = spectral_mask(zc(n, 3));
  const CMat h = random_mat(n, rng);
  const CMat g = virtual_channel(h, mask);
  CHECK((recover_h_from_g(g, mask) - h).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((channel_from_beamspace(beamspace(h)) - h).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("g_vector sums contour cross powers") {
  CMat gp(2, 2), gn(2, 2);
  gp << cd{1, 0}, cd{0, 2}, cd{3, 0}, cd{1, 1};
  gn << cd{2, 0}, cd{0, 1}, cd{1, 0}, cd{1, -1};
  const CVec g = g_vector(gp, gn);
  REQUIRE(g.size() == 3);
  CHECK(std::abs(g(0) - cd{2, 0}) < 1e-15);
  CHECK(std::abs(g(1) - (cd{0, 2} * std::conj(cd{0, 1}) + cd{3, 0} * std::conj(cd{1, 0}))) < 1e-15);
  CHECK(std::abs(g(2) - cd{1, 1} * std::conj(cd{1, -1})) < 1e-15);
  CMat bad(3, 2);
  CHECK_THROWS(g_vector(gp, bad));
}

TEST_CASE("estimate_cfo pins a clean contour tone well inside a coarse bin") {
  // the three-point refinement carries a small interpolation bias (~1e-4),
  // far below the 2*pi/(2*64) coarse bin the iterated search needs
  Rng rng(61);
  const int len = 63;
  for (double eps : {0.31, -0.9, 0.02}) {
    CVec g(len);
    for (int k = 0; k < len; ++k) g(k) = std::polar(1.0, 2.0 * eps * k);
    CHECK(std::abs(estimate_cfo(g, 2.0, kPi / 2, 64) - eps) < 5e-4);
  }
  // modulated weights leak but stay within a coarse bin
  CVec g(len);
  const double eps = 0.4;
  for (int k = 0; k < len; ++k) g(k) = (0.5 + rng.uniform(0.0, 1.0)) * std::polar(1.0, 2.0 * eps * k);
  CHECK(std::abs(estimate_cfo(g, 2.0, kPi / 2, 64) - eps) < 0.02);
  // spacing 4 halves the unambiguous range without losing resolution
  CVec g4(len);
  for (int k = 0; k < len; ++k) g4(k) = std::polar(1.0, 4.0 * 0.2 * k);
  CHECK(std::abs(estimate_cfo(g4, 4.0, kPi / 4, 64) - 0.2) < 5e-4);
}

TEST_CASE("estimate_cfo clips to the stated range and rejects degenerate input") {
  const int len = 31;
  CVec g(len);
  for (int k = 0; k < len; ++k) g(k) = std::polar(1.0, 2.0 * 0.5 * k);
  const double est = estimate_cfo(g, 2.0, 0.3, 64);
  CHECK(est <= 0.3 + 1e-12);
  CHECK(est >= -0.3 - 1e-12);
  CHECK_THROWS(estimate_cfo(CVec::Zero(len), 2.0, kPi / 2, 64));
  CHECK_THROWS(estimate_cfo(g, 2.0, kPi / 2, 2));
  CHECK_THROWS(estimate_cfo(g, 2.0, 0.0, 64));
}

TEST_CASE("peak candidates rank a two-tone spectrum by strength") {
  const int len = 63;
  const double e1 = 0.35, e2 = -0.6;
  CVec g(len);
  for (int k = 0; k < len; ++k)
    g(k) = std::polar(1.0, 2.0 * e1 * k) + 0.6 * std::polar(1.0, 2.0 * e2 * k);
  const auto cands = g_peak_candidates(g, 2.0, kPi / 2, 64, 4);
  REQUIRE(cands.size() >= 2);
  CHECK(std::abs(cands[0] - e1) < 5e-3);
  const bool has_e2 = std::any_of(cands.begin(), cands.end(),
                                  [&](double c) { return std::abs(c - e2) < 5e-3; });
  CHECK(has_e2);
  CHECK(g_peak_candidates(CVec::Zero(len), 2.0, kPi / 2, 64, 4).empty());
}
