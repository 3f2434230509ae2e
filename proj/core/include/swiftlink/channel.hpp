#pragma once

#include <vector>

#include "swiftlink/rng.hpp"
#include "swiftlink/types.hpp"

namespace swiftlink {

// One propagation ray. Rays are stored by their spatial frequencies
// (radians per antenna), the quantities the estimator actually sees;
// ray_from_angles maps physical departure angles onto them.
struct Ray {
  cd gain;
  double omega_e = 0.0;
  double omega_a = 0.0;
  int tap = 0;  // delay index, 0 for narrowband
};

Ray ray_from_angles(cd gain, double theta_e, double theta_a, int tap = 0);

// How generated realizations are scaled. `exact` forces
// sum_l ||H[l]||_F^2 == N^2 per realization (deterministic tests);
// `ensemble` rescales by the analytic 1/sqrt(K) so the target holds
// in expectation only.
enum class NormMode { exact, ensemble };

struct ChannelRealization {
  int n = 0;
  int l = 1;
  std::vector<Ray> rays;
  std::vector<CMat> taps;

  CMat equivalent_narrowband() const;  // sum of taps
};

// H = sum_k gain_k a_N(omega_e,k) a_N(omega_a,k)^T. Throws on empty rays.
CMat synth_narrowband(const std::vector<Ray>& rays, int n);

// L-tap wideband channel; ray k contributes to tap rays[k].tap.
ChannelRealization synth_wideband(const std::vector<Ray>& rays, int n, int l);

// Beamspace X = U H U (inverse: idft2).
CMat beamspace(const CMat& h);

// Masked beamspace S = conj(lambda) .* X .* conj(lambda)^T; entrywise
// magnitudes and support are untouched because the mask is unimodular.
CMat masked_beamspace(const CMat& x, const CVec& mask);

// Virtual channel G = idft2(masked_beamspace(beamspace(H))). Its entries
// are exactly what shifted-ZC beam projections measure.
CMat virtual_channel(const CMat& h, const CVec& mask);

// K random rays, complex Gaussian gains. On-grid mode draws distinct
// beamspace cells on the 2*pi/N grid; off-grid draws spatial frequencies
// uniformly over [-pi, pi).
ChannelRealization random_sparse_beamspace(int n, int k, bool on_grid, Rng& rng,
                                           NormMode mode = NormMode::exact);

// K rays with uniform off-grid frequencies, each assigned a uniform delay
// tap in [0, L).
ChannelRealization random_wideband(int n, int l, int k, Rng& rng,
                                   NormMode mode = NormMode::exact);

}  // namespace swiftlink
