#pragma once

#include <utility>
#include <vector>

#include "swiftlink/channel.hpp"
#include "swiftlink/rng.hpp"
#include "swiftlink/types.hpp"

namespace swiftlink {

struct MeasurementSet {
  CVec y;
  Trajectory trajectory;
  double epsilon = 0.0;            // radians per slot
  double sigma = 0.0;
  double effective_epsilon = 0.0;  // radians per measurement (wideband frame)
};

// Single projection y = b^H H conj(d) * e^{j eps n} + v, v ~ CN(0, sigma^2).
// Noise is drawn before the CFO rotation; the distribution is unchanged
// (circular symmetry) and magnitude-based selections become exactly
// CFO-invariant for a fixed seed.
cd project_beam(const CMat& h, const CVec& b, const CVec& d, double eps, int n,
                double sigma, Rng* rng);

// Narrowband trajectory measurement: y[m] = (G(r[m], c[m]) + v[m]) e^{j eps m}
// where G = virtual_channel(H, spectral_mask(z)). Equivalent to project_beam
// with b = circshift(z, r), d = circshift(z, c) at every step.
MeasurementSet measure_trajectory(const CMat& h, const Trajectory& t, const CVec& z,
                                  double eps, double sigma, Rng* rng);

// P_Omega and its zero-filling adjoint.
CVec sample_grid(const CMat& a, const Trajectory& t);
CMat scatter_grid(const CVec& v, const Trajectory& t);

// One Barker-frame measurement per beam pair: transmit Barker-13 followed by
// L-1 zero guard symbols, correlate at each lag, sum the L lag responses and
// divide by N_s so the L=1, CFO-free case reduces to the narrowband model.
// eps_sym is the per-symbol CFO; the phase seen across measurements advances
// by frame = N_s + L - 1 symbols each step. Optional per-measurement noise
// (post-correlation) is added verbatim, enabling paired-noise comparisons.
CVec wideband_measure_pairs(const std::vector<CMat>& taps,
                            const std::vector<std::pair<CVec, CVec>>& pairs,
                            double eps_sym, const CVec* noise);

// Trajectory entry point: beams are (circshift(z, r), circshift(z, c)),
// eps_sym = 2*pi*analog_cfo_hz/w_hz, noise CN(0, sigma^2) per measurement.
MeasurementSet wideband_measure(const ChannelRealization& ch, const Trajectory& t,
                                const CVec& z, double analog_cfo_hz, double w_hz,
                                double sigma, Rng* rng);

// Equivalent narrowband channel actually seen through the Barker frame at
// zero CFO: sum_l gamma_l H[l], where gamma_l folds in the even-lag +1
// autocorrelation sidelobes of Barker-13. wideband_measure at eps = 0,
// sigma = 0 samples exactly virtual_channel(this, mask).
CMat barker_effective_channel(const ChannelRealization& ch);

}  // namespace swiftlink
