#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "swiftlink/baselines.hpp"
#include "swiftlink/channel.hpp"
#include "swiftlink/measurement.hpp"
#include "swiftlink/numerics.hpp"
#include "swiftlink/rng.hpp"
#include "swiftlink/sequences.hpp"
#include "swiftlink/trajectories.hpp"

using namespace swiftlink;

namespace {

constexpr double kPi = std::numbers::pi;

Trajectory make_type1(int n, Rng& rng) {
  const int m = 2 * n - 1;
  return compose_type1(p_trajectory(n, m, ContourDist::binomial, rng),
                       n_trajectory(n, m, ContourDist::binomial, rng));
}

Ray grid_ray(cd gain, int p, int q, int n) {
  Ray r;
  r.gain = gain;
  r.omega_e = 2.0 * kPi * p / n;
  r.omega_a = 2.0 * kPi * q / n;
  return r;
}

}  // namespace

TEST_CASE("quantize_unit drops magnitudes onto the phase grid at unit norm") {
  Rng rng(3);
  CVec v(8);
  for (int i = 0; i < 8; ++i) v(i) = rng.cgauss() * (1.0 + i);
  const CVec q = quantize_unit(v, 3);
  CHECK(std::abs(q.norm() - 1.0) < 1e-12);
  const double step = 2.0 * kPi / 8;
  for (int i = 0; i < 8; ++i) {
    CHECK(std::abs(std::abs(q(i)) - 1.0 / std::sqrt(8.0)) < 1e-12);
    const double ratio = std::arg(q(i)) / step;
    CHECK(std::abs(ratio - std::round(ratio)) < 1e-9);
  }
  const CVec plain = quantize_unit(v, 0);
  CHECK((plain - v / v.norm()).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("random phase beams are constant-modulus with on-grid phases") {
  Rng rng(5);
  const CVec b = random_phase_beam(16, 3, rng);
  CHECK(std::abs(b.norm() - 1.0) < 1e-12);
  const double step = 2.0 * kPi / 8;
  for (int i = 0; i < 16; ++i) {
    CHECK(std::abs(std::abs(b(i)) - 0.25) < 1e-12);
    const double ratio = std::arg(b(i)) / step;
    CHECK(std::abs(ratio - std::round(ratio)) < 1e-9);
  }
  Rng r1(9), r2(9);
  const CVec b1 = random_phase_beam(16, 3, r1);
  const CVec b2 = random_phase_beam(16, 3, r2);
  CHECK((b1 - b2).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("the exhaustive scan selects the dominant on-grid ray") {
  Rng rng(7);
  const int n = 16;
  const CMat h = synth_narrowband({grid_ray(cd{1.0, 0.5}, 3, 9, n)}, n);
  ScanResult res = exhaustive_scan(h, 0.0, rng);
  CHECK(res.p == 3);
  CHECK(res.q == 9);
  REQUIRE(res.y.size() == n * n);
  CHECK(std::abs(std::abs(res.y(3 * n + 9)) - std::abs(cd{1.0, 0.5}) * n) < 1e-9);
  // selected DFT beams recover the full array gain
  const double gain = std::abs(cd((res.beams.f_e.adjoint() * h * res.beams.f_a.conjugate())(0)));
  CHECK(gain == doctest::Approx(std::abs(cd{1.0, 0.5}) * n).epsilon(1e-9));
}

TEST_CASE("scan selection is exactly CFO-invariant for a fixed seed") {
  Rng chan_rng(11);
  const int n = 16;
  for (int trial = 0; trial < 5; ++trial) {
    const CMat h = random_sparse_beamspace(n, 3, false, chan_rng).equivalent_narrowband();
    int p0 = -1, q0 = -1;
    for (double eps : {0.0, 0.3, 1.0}) {
      Rng scan_rng(1000 + trial);
      const ScanResult res = exhaustive_scan(h, 1.0, scan_rng, eps);
      if (eps == 0.0) {
        p0 = res.p;
        q0 = res.q;
      } else {
        CHECK(res.p == p0);
        CHECK(res.q == q0);
      }
    }
  }
}

TEST_CASE("scan streams on a beamspace-aligned channel peak at the array PAPR") {
  Rng rng(13);
  const int n = 16;
  const ScanResult res = exhaustive_scan(CMat::Ones(n, n), 0.0, rng);
  CHECK(papr_db(res.y) == doctest::Approx(20.0 * std::log10(n)).epsilon(1e-9));
  // the trajectory stream through the same channel is perfectly flat
  Rng trng(17);
  const CVec z = zc(n, 5);
  const Trajectory t = make_type1(n, trng);
  const MeasurementSet ms = measure_trajectory(CMat::Ones(n, n), t, z, 0.0, 0.0, nullptr);
  CHECK(std::abs(papr_db(ms.y)) < 1e-9);
}

TEST_CASE("papr_db matches the hand-computed peak-to-mean ratio") {
  CVec y(4);
  y << cd{1, 0}, cd{1, 0}, cd{1, 0}, cd{0, 3};
  CHECK(papr_db(y) == doctest::Approx(10.0 * std::log10(3.0)).epsilon(1e-12));
  CHECK_THROWS(papr_db(CVec()));
}

TEST_CASE("iid compressed sensing is accurate at zero CFO and collapses at 1 ppm") {
  Rng rng(23);
  const int n = 32, m = 124;
  const double eps_1ppm = 2.0 * kPi * 28e3 / 100e6 * 25.0;
  int good = 0;
  double degr = 0.0;
  const int trials = 30;
  for (int trial = 0; trial < trials; ++trial) {
    const ChannelRealization ch = random_sparse_beamspace(n, 3, true, rng);
    const CMat h = ch.equivalent_narrowband();
    Rng r_zero(500 + trial), r_cfo(500 + trial);
    const IidCsResult zero = iid_cs_baseline(h, m, 0.0, 0.0, 3, r_zero);
    const IidCsResult cfo = iid_cs_baseline(h, m, eps_1ppm, 0.0, 3, r_cfo);
    if (nmse(h, zero.h_hat) < 1e-4) ++good;
    degr += nmse_db(h, cfo.h_hat) - nmse_db(h, zero.h_hat);
  }
  CHECK(good >= trials * 9 / 10);
  CHECK(degr / trials >= 10.0);
  CHECK_THROWS(iid_cs_baseline(CMat::Ones(8, 8), 0, 0.0, 0.0, 3, rng));
}

TEST_CASE("extract_beams returns the dominant singular pair") {
  const int n = 16;
  const CMat h = synth_narrowband({grid_ray(cd{0.8, -0.6}, 5, 2, n)}, n);
  // fine enough phase grid keeps the on-grid steering exact
  const BeamPair bp = extract_beams(h, 4);
  const double gain = std::abs(cd((bp.f_e.adjoint() * h * bp.f_a.conjugate())(0)));
  CHECK(gain == doctest::Approx(n * std::abs(cd{0.8, -0.6})).epsilon(1e-9));
  CHECK_THROWS(extract_beams(CMat::Zero(n, n), 3));
}

TEST_CASE("3-bit beams keep most of the rank-1 array gain") {
  Rng rng(29);
  const int n = 16;
  std::vector<double> fracs;
  for (int trial = 0; trial < 100; ++trial) {
    Ray ray;
    ray.gain = rng.cgauss();
    ray.omega_e = rng.uniform(-kPi, kPi);
    ray.omega_a = rng.uniform(-kPi, kPi);
    const CMat h = synth_narrowband({ray}, n);
    const double sigma1 = n * std::abs(ray.gain);
    const BeamPair bp = extract_beams(h, 3);
    const double g = std::abs(cd((bp.f_e.adjoint() * h * bp.f_a.conjugate())(0)));
    fracs.push_back(g * g / (sigma1 * sigma1));
  }
  std::sort(fracs.begin(), fracs.end());
  const double median = 0.5 * (fracs[49] + fracs[50]);
  const double mean = std::accumulate(fracs.begin(), fracs.end(), 0.0) / fracs.size();
  CHECK(median >= 0.90);
  CHECK(mean >= 0.85);
  CHECK(fracs.back() <= 1.0 + 1e-12);
}

TEST_CASE("water-filling over a flat rank-1 channel gives the closed-form rate") {
  const int n = 16;
  Ray ray = grid_ray(cd{1.0, 0.0}, 0, 0, n);
  const ChannelRealization ch = synth_wideband({ray}, n, 1);
  BeamPair bp = extract_beams(ch.taps[0], 0);
  const double rate = achievable_rate(ch, bp, 1.0, 64);
  CHECK(rate == doctest::Approx(std::log2(1.0 + n * n)).epsilon(1e-9));
  // stronger noise can only lower it
  CHECK(achievable_rate(ch, bp, 2.0, 64) < rate);
  CHECK_THROWS(achievable_rate(ChannelRealization{}, bp, 1.0, 64));
  CHECK_THROWS(achievable_rate(ch, bp, 0.0, 64));
  CHECK_THROWS(achievable_rate(ch, bp, 1.0, 0));
}

TEST_CASE("nmse is scale-sensitive but global-phase-invariant") {
  Rng rng(31);
  CMat h(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) h(i, j) = rng.cgauss();
  CHECK(nmse(h, std::polar(1.0, 0.9) * h) < 1e-14);
  CHECK(nmse(h, 0.5 * h) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(nmse_db(h, h) == -120.0);
  CHECK(nmse_db(h, 0.5 * h) == doctest::Approx(10.0 * std::log10(0.25)).epsilon(1e-9));
}

TEST_CASE("cfo_mse averages squared estimate errors") {
  CHECK(cfo_mse({0.1, 0.2}, {0.15, 0.1}) == doctest::Approx(0.00625).epsilon(1e-12));
  CHECK(cfo_mse({0.3}, {0.3}) == 0.0);
  CHECK_THROWS(cfo_mse({0.1}, {0.1, 0.2}));
  CHECK_THROWS(cfo_mse({}, {}));
}
