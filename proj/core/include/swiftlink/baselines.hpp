#pragma once

#include <vector>

#include "swiftlink/channel.hpp"
#include "swiftlink/rng.hpp"
#include "swiftlink/types.hpp"

namespace swiftlink {

// Beam pair used for data transmission after alignment. When bits > 0 the
// entries of sqrt(N)*f are unit modulus with phases on the 2^bits grid.
struct BeamPair {
  CVec f_e;
  CVec f_a;
  int bits = 0;
};

struct ScanResult {
  BeamPair beams;
  int p = 0;  // selected elevation codebook index
  int q = 0;  // selected azimuth codebook index
  CVec y;     // all n^2 scan measurements, scan order (p outer, q inner)
};

struct IidCsResult {
  CMat h_hat;
  BeamPair beams;
  double residual_norm = 0.0;
};

// Phase-only quantizer: keeps each entry's phase on the 2^bits grid, drops
// magnitudes, and scales to unit norm. bits <= 0 just normalizes.
CVec quantize_unit(const CVec& v, int bits);

// Uniform random beam with bits-resolution phases and unit norm.
CVec random_phase_beam(int n, int bits, Rng& rng);

// Sweep all n^2 DFT beam pairs and pick the largest measured magnitude.
// Noise is drawn before the CFO rotation, so the selection is exactly
// CFO-invariant for a fixed seed: the rotation never changes |y|.
ScanResult exhaustive_scan(const CMat& h, double sigma, Rng& rng, double epsilon = 0.0);

// Compressed sensing with IID random phase-shift training. The recovery
// ignores any CFO, which is exactly the failure mode the trajectory-based
// design avoids; with epsilon = 0 it serves as the genie benchmark.
IidCsResult iid_cs_baseline(const CMat& h, int m, double epsilon, double sigma, int bits,
                            Rng& rng, int k_max = 16);

// Rank-1 beams from the dominant singular pair of the channel estimate,
// phase-quantized to bits when bits > 0.
BeamPair extract_beams(const CMat& h_hat, int bits);

// Water-filling rate of the beamformed SISO channel over n_subcarriers
// frequency bins, total power n_subcarriers (unit average), noise sigma^2.
double achievable_rate(const ChannelRealization& ch, const BeamPair& beams, double sigma,
                       int n_subcarriers = 64);

// Peak-to-average power ratio of a measurement stream, in dB.
double papr_db(const CVec& y);

// Global-phase-invariant normalized error, linear and dB (floor -120 dB).
double nmse(const CMat& h, const CMat& h_hat);
double nmse_db(const CMat& h, const CMat& h_hat);

// Mean squared CFO estimation error in rad^2 per measurement step.
double cfo_mse(const std::vector<double>& eps, const std::vector<double>& eps_hat);

}  // namespace swiftlink
