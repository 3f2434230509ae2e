#pragma once

#include <vector>

#include "swiftlink/types.hpp"

namespace swiftlink {

// Contour cross-correlation g[k] = sum_{r+c=k} G_p(r,c) * conj(G_n(r,c)),
// length 2N-1. With G_p and G_n carrying opposite contour shifts, g is a
// single complex tone whose frequency is (spacing * eps).
CVec g_vector(const CMat& g_p, const CMat& g_n);

// Coarse-to-fine tone frequency estimate: oversampled DFT of g, peak over
// bins whose implied eps satisfies |eps| < min(range_limit, pi/spacing),
// then a three-point complex-ratio refinement on the winning bin. Returns
// eps clipped to [-range_limit, range_limit]. Throws on all-zero g.
double estimate_cfo(const CVec& g, double spacing, double range_limit, int oversample = 64);

// The eps values of the top-j local maxima of the masked oversampled
// spectrum, best first; multistart seeds for the iterated search.
std::vector<double> g_peak_candidates(const CVec& g, double spacing, double range_limit,
                                      int oversample, int j_top);

}  // namespace swiftlink
