#include "swiftlink/cfo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "swiftlink/numerics.hpp"
#include "swiftlink/trajectories.hpp"

namespace swiftlink {

CVec g_vector(const CMat& g_p, const CMat& g_n) {
  if (g_p.rows() != g_n.rows() || g_p.cols() != g_n.cols() || g_p.rows() != g_p.cols())
    throw std::invalid_argument("g_vector: dimension mismatch");
  const auto n = static_cast<int>(g_p.rows());
  CVec g = CVec::Zero(2 * n - 1);
  for (int k = 0; k <= 2 * n - 2; ++k)
    for (const auto& pt : contour(k, n)) g(k) += g_p(pt.r, pt.c) * std::conj(g_n(pt.r, pt.c));
  return g;
}

namespace {

// digital frequency of bin b wrapped to (-pi, pi]
double bin_freq(int b, int big) {
  double w = 2.0 * std::numbers::pi * b / big;
  if (w > std::numbers::pi) w -= 2.0 * std::numbers::pi;
  return w;
}

}  // namespace

double estimate_cfo(const CVec& g, double spacing, double range_limit, int oversample) {
  if (oversample < 4) throw std::invalid_argument("estimate_cfo: oversample must be >= 4");
  if (g.norm() == 0.0) throw std::invalid_argument("estimate_cfo: all-zero g vector");
  const CVec bins = oversampled_dft(g, oversample);
  const int big = static_cast<int>(bins.size());
  const double lim = std::min(range_limit, std::numbers::pi / spacing);

  int best = -1;
  double best_mag = -1.0;
  for (int b = 0; b < big; ++b) {
    if (std::abs(bin_freq(b, big) / spacing) >= lim) continue;
    double mag = std::abs(bins(b));
    if (mag > best_mag) {
      best_mag = mag;
      best = b;
    }
  }
  if (best < 0) throw std::invalid_argument("estimate_cfo: search range excludes every bin");

  // three-point complex-ratio refinement on the winner and its neighbors
  const cd fm = bins((best - 1 + big) % big);
  const cd f0 = bins(best);
  const cd fp = bins((best + 1) % big);
  const cd den = 2.0 * f0 - fm - fp;
  double delta = (den == cd(0.0, 0.0)) ? 0.0 : ((fm - fp) / den).real();
  delta = std::clamp(delta, -0.5, 0.5);
  double wb = 2.0 * std::numbers::pi * (best + delta) / big;
  if (wb > std::numbers::pi) wb -= 2.0 * std::numbers::pi;
  return std::clamp(wb / spacing, -range_limit, range_limit);
}

std::vector<double> g_peak_candidates(const CVec& g, double spacing, double range_limit,
                                      int oversample, int j_top) {
  if (g.norm() == 0.0) return {};
  const CVec bins = oversampled_dft(g, oversample);
  const int big = static_cast<int>(bins.size());

  std::vector<double> mag(big);
  for (int b = 0; b < big; ++b) {
    double eps = bin_freq(b, big) / spacing;
    mag[b] = (std::abs(eps) < range_limit) ? std::abs(bins(b)) : -1.0;
  }
  std::vector<int> peaks;
  for (int b = 0; b < big; ++b) {
    if (mag[b] <= 0.0) continue;
    if (mag[b] >= mag[(b - 1 + big) % big] && mag[b] >= mag[(b + 1) % big]) peaks.push_back(b);
  }
  std::stable_sort(peaks.begin(), peaks.end(), [&](int a, int b) { return mag[a] > mag[b]; });
  if (static_cast<int>(peaks.size()) > j_top) peaks.resize(j_top);
  std::vector<double> out;
  out.reserve(peaks.size());
  for (int b : peaks) out.push_back(bin_freq(b, big) / spacing);
  return out;
}

}  // namespace swiftlink
