#pragma once

#include "swiftlink/types.hpp"

namespace swiftlink {

// Zadoff-Chu sequence of length N with root u, normalised to unit L2 norm.
// Even N uses phase pi*u*k^2/N, odd N uses pi*u*k*(k+1)/N. Every entry has
// magnitude 1/sqrt(N), the periodic autocorrelation is zero at all nonzero
// lags, and the DFT magnitude is flat; constant modulus on both sides is
// what keeps the training PAPR at 0 dB. Throws unless gcd(u, N) == 1.
CVec zc(int n, int u);

// Circular delay: out[i] = v[(i - s) mod N]; s is normalized mod N. Under
// this convention U * circshift(z, s) = Lambda_z * U * e_s, i.e. a shift by
// s multiplies DFT bin k by e^{-2 pi i k s / N}, which is the identity the
// whole virtual-sampling scheme rests on.
CVec circshift(const CVec& v, int s);

// Per-bin spectral weights lambda = sqrt(N) * (U z), the diagonal of
// Lambda_z. For an ideal ZC sequence every entry is unimodular, so masking
// the beamspace with it is invertible bin by bin.
CVec spectral_mask(const CVec& z);

// Snap phases to the 2^bits grid, preserving magnitudes. Ties round half
// away from zero (floor(ph/step + 0.5)). bits <= 0 returns v unchanged.
CVec quantize_phases(const CVec& v, int bits);

// Barker code of length 13, entries +1/-1; aperiodic autocorrelation
// sidelobes all have magnitude <= 1.
CVec barker13();

}  // namespace swiftlink
