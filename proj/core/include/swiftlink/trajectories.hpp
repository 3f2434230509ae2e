#pragma once

#include <vector>

#include "swiftlink/rng.hpp"
#include "swiftlink/types.hpp"

namespace swiftlink {

// Anti-diagonal contour k of the N x N grid: {(r, c) : r + c == k},
// r ascending. Throws if k is outside [0, 2N-2].
std::vector<Coord> contour(int k, int n);

// Start contour of a p-trajectory of length m: N - 1 - floor(m/2). For odd
// m this is the centred choice N - (m+1)/2; even lengths keep the floor and
// carry a one-contour asymmetry toward the high side.
int p_start_contour(int n, int m);

// Row-major scan of the full grid: step n at (n / N, n mod N).
Trajectory row_trajectory(int n);

// Four-quadrant scan of the full grid whose induced phase matrix splits
// into four constant-shift blocks (the u1..u4 structure). N must be even.
Trajectory block_trajectory(int n);

// One coordinate per contour, contours ascending from p_start_contour(n, m),
// each drawn independently under `dist` (uniform over the contour, or the
// symmetric binomial with coordinate i of a (k+1)-point contour weighted
// C(k, i) / 2^k).
Trajectory p_trajectory(int n, int m, ContourDist dist, Rng& rng);

// Mirror of p_trajectory over the same contour range, visited in descending
// order; sampling is independent of any paired p-trajectory.
Trajectory n_trajectory(int n, int m, ContourDist dist, Rng& rng);

// Concatenation {p, n}; split records |p|.
Trajectory compose_type1(const Trajectory& p, const Trajectory& nn);

// Interleaving {p(0), n(0), p(1), ...}; requires |p| == |n|.
Trajectory compose_type2(const Trajectory& p, const Trajectory& nn);

// N x N matrix with e^{j m eps} at t.steps[m] and 0 elsewhere; doubles as
// the sampling indicator at eps == 0.
CMat induced_phase_matrix(const Trajectory& t, double eps);

// Idealized contour phase pattern P_cnt(r, c) = e^{j eps (r + c)}.
CMat p_cnt(int n, double eps);

// Q_cnt = e^{j 2 (N-1) eps} P_cnt(-eps); entry (r, c) = e^{j eps (2(N-1)-r-c)}.
CMat q_cnt(int n, double eps);

}  // namespace swiftlink
