#pragma once

#include <optional>
#include <vector>

#include "swiftlink/rng.hpp"
#include "swiftlink/types.hpp"

namespace swiftlink {

struct Lemma1Report {
  long checked = 0;       // inequality instances evaluated
  long violations = 0;    // instances where the strict bound failed
  double worst_ratio = 0.0;  // max |difference| / bound over the grid
};

struct Lemma2Report {
  double b_upper = 0.0;   // |sum over the upper-half contours|
  double b_total = 0.0;   // |sum over all M_p contours|
  double bound_upper = 0.0;
  double bound_total = 0.0;
  double eta = 0.0;
  bool skipped = false;   // true when max{|sin(x/2)|,|sin(y/2)|} ~ 0
};

struct Theorem2Report {
  int n = 0;
  int m_p = 0;
  int k = 0;
  int d_min = 0;
  double signal_energy = 0.0;
  double empirical_deviation = 0.0;
  double std_error = 0.0;  // standard error of the mean normalized energy
  double bound = 0.0;
  bool holds = false;      // empirical_deviation + 3*std_error <= bound
};

// Exact expectation of e^{j(x r + y c)} over contour n's sampling
// distribution, by direct enumeration of the contour coordinates.
cd t_xy(int n, double x, double y, int grid_n, ContourDist dist);

// Checks |T[n+1] - e^{jx} T[n]| < 2/(n+2) and the y-analogue on a
// grid_points x grid_points grid of (x,y) over [-pi,pi)^2, for contours
// 1 <= n <= N-2. Contour 0 attains the bound with equality at |x-y| = pi,
// so the scan starts where the strict inequality is actually claimed.
// The bound is proved for the uniform distribution; other distributions
// produce an informational report only.
Lemma1Report lemma1_check(int grid_n, ContourDist dist, int grid_points = 64);

// Partial-sum magnitudes of T over the M_p trajectory contours against the
// (2 + log)*eta and (4 + 2 log)*eta bounds, eta = 1/max{|sin(x/2)|,|sin(y/2)|}.
Lemma2Report lemma2_check(int grid_n, int m_p, double x, double y);

// Monte-Carlo check of the expected-energy concentration: draws fresh
// uniform p-trajectories, measures the normalized energy of the noiseless
// samples of the sparse grid, and compares the deviation of its mean from
// the signal energy against the (K-1)-term bound.
Theorem2Report theorem2_check(int grid_n, int m_p, const std::vector<Coord>& support,
                              const CVec& s, int trials, Rng& rng);

// Closed-form value of the same deviation via the cross-term sums; used to
// cross-check the Monte-Carlo estimate.
double theorem2_exact_deviation(int grid_n, int m_p, const std::vector<Coord>& support,
                                const CVec& s);

// Minimum pairwise wrap-around spacing of a support set; N for fewer than
// two points.
int d_min(const std::vector<Coord>& support, int grid_n);

// Smallest odd M_p <= 2N-1 satisfying the sufficient energy-concentration
// condition at deviation level delta, or nullopt when no trajectory length
// on the grid suffices.
std::optional<int> sufficient_mp(double delta, int k, int dmin, int grid_n);

}  // namespace swiftlink
