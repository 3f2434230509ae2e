#include "swiftlink/ripcheck.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <set>
#include <stdexcept>

#include "swiftlink/trajectories.hpp"

namespace swiftlink {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double log_factor(int grid_n, int m_p) {
  return std::log(static_cast<double>(grid_n) / (grid_n + 1 - (m_p - 1) / 2));
}

void check_mp(int grid_n, int m_p) {
  if (m_p < 1 || m_p > 2 * grid_n - 1 || m_p % 2 == 0)
    throw std::invalid_argument("ripcheck: m_p must be odd and within the grid");
}

}  // namespace

cd t_xy(int n, double x, double y, int grid_n, ContourDist dist) {
  const std::vector<Coord> pts = contour(n, grid_n);
  const auto size = pts.size();
  cd acc{0.0, 0.0};
  if (dist == ContourDist::uniform) {
    for (const Coord& p : pts) acc += std::polar(1.0, x * p.r + y * p.c);
    return acc / static_cast<double>(size);
  }
  // binomial weights C(size-1, i) / 2^(size-1) by multiplicative recurrence
  double w = std::pow(2.0, -static_cast<double>(size - 1));
  for (std::size_t i = 0; i < size; ++i) {
    acc += w * std::polar(1.0, x * pts[i].r + y * pts[i].c);
    w *= static_cast<double>(size - 1 - i) / static_cast<double>(i + 1);
  }
  return acc;
}

Lemma1Report lemma1_check(int grid_n, ContourDist dist, int grid_points) {
  if (grid_n < 3 || grid_points < 1) throw std::invalid_argument("lemma1_check: bad parameters");
  Lemma1Report rep;
  std::vector<cd> t(static_cast<std::size_t>(grid_n));
  for (int xi = 0; xi < grid_points; ++xi) {
    const double x = -std::numbers::pi + kTwoPi * xi / grid_points;
    for (int yi = 0; yi < grid_points; ++yi) {
      const double y = -std::numbers::pi + kTwoPi * yi / grid_points;
      for (int n = 0; n < grid_n; ++n) t[static_cast<std::size_t>(n)] = t_xy(n, x, y, grid_n, dist);
      for (int n = 1; n + 1 < grid_n; ++n) {
        const double bound = 2.0 / (n + 2);
        const cd tn = t[static_cast<std::size_t>(n)];
        const cd tn1 = t[static_cast<std::size_t>(n) + 1];
        for (double phase : {x, y}) {
          const double diff = std::abs(tn1 - std::polar(1.0, phase) * tn);
          ++rep.checked;
          if (diff >= bound) ++rep.violations;
          rep.worst_ratio = std::max(rep.worst_ratio, diff / bound);
        }
      }
    }
  }
  return rep;
}

Lemma2Report lemma2_check(int grid_n, int m_p, double x, double y) {
  check_mp(grid_n, m_p);
  const int p0 = grid_n - (m_p + 1) / 2;
  Lemma2Report rep;
  cd partial{0.0, 0.0};
  cd total{0.0, 0.0};
  for (int i = 0; i < m_p; ++i) {
    const cd t = t_xy(p0 + i, x, y, grid_n, ContourDist::uniform);
    total += t;
    if (p0 + i <= grid_n - 1) partial += t;
  }
  rep.b_upper = std::abs(partial);
  rep.b_total = std::abs(total);
  const double denom = std::max(std::abs(std::sin(x / 2.0)), std::abs(std::sin(y / 2.0)));
  if (denom < 1e-9) {
    rep.skipped = true;
    return rep;
  }
  rep.eta = 1.0 / denom;
  const double lg = log_factor(grid_n, m_p);
  rep.bound_upper = (2.0 + lg) * rep.eta;
  rep.bound_total = (4.0 + 2.0 * lg) * rep.eta;
  return rep;
}

Theorem2Report theorem2_check(int grid_n, int m_p, const std::vector<Coord>& support,
                              const CVec& s, int trials, Rng& rng) {
  check_mp(grid_n, m_p);
  if (support.size() != static_cast<std::size_t>(s.size()) || support.empty())
    throw std::invalid_argument("theorem2_check: support/value size mismatch");
  if (trials < 2) throw std::invalid_argument("theorem2_check: need at least 2 trials");
  std::set<std::pair<int, int>> seen;
  for (const Coord& c : support) {
    if (c.r < 0 || c.r >= grid_n || c.c < 0 || c.c >= grid_n)
      throw std::invalid_argument("theorem2_check: support outside the grid");
    if (!seen.insert({c.r, c.c}).second)
      throw std::invalid_argument("theorem2_check: repeated support point");
  }

  Theorem2Report rep;
  rep.n = grid_n;
  rep.m_p = m_p;
  rep.k = static_cast<int>(support.size());
  rep.d_min = d_min(support, grid_n);
  rep.signal_energy = s.squaredNorm();

  // all phases live on the N-point unit circle for an on-grid support
  std::vector<cd> tw(static_cast<std::size_t>(grid_n));
  for (int i = 0; i < grid_n; ++i) tw[static_cast<std::size_t>(i)] = std::polar(1.0, kTwoPi * i / grid_n);

  double mean = 0.0;
  double m2 = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Trajectory traj = p_trajectory(grid_n, m_p, ContourDist::uniform, rng);
    double energy = 0.0;
    for (const Coord& step : traj.steps) {
      cd y{0.0, 0.0};
      for (std::size_t k = 0; k < support.size(); ++k) {
        const int idx = (step.r * support[k].r + step.c * support[k].c) % grid_n;
        y += s(static_cast<Eigen::Index>(k)) * tw[static_cast<std::size_t>(idx)];
      }
      energy += std::norm(y);
    }
    energy /= static_cast<double>(m_p);
    const double delta = energy - mean;
    mean += delta / static_cast<double>(t + 1);
    m2 += delta * (energy - mean);
  }
  const double var = m2 / static_cast<double>(trials - 1);
  rep.empirical_deviation = std::abs(mean - rep.signal_energy);
  rep.std_error = std::sqrt(var / static_cast<double>(trials));
  if (rep.k >= 2) {
    const double lg = log_factor(grid_n, m_p);
    rep.bound = (rep.k - 1) * (4.0 + 2.0 * lg) /
                (m_p * std::sin(std::numbers::pi * rep.d_min / grid_n)) * rep.signal_energy;
  }
  if (rep.k < 2)  // no cross terms: energy concentrates exactly, bound is 0
    rep.holds = rep.empirical_deviation < 1e-12 * std::max(1.0, rep.signal_energy);
  else
    rep.holds = rep.empirical_deviation + 3.0 * rep.std_error <= rep.bound;
  return rep;
}

double theorem2_exact_deviation(int grid_n, int m_p, const std::vector<Coord>& support,
                                const CVec& s) {
  check_mp(grid_n, m_p);
  if (support.size() != static_cast<std::size_t>(s.size()))
    throw std::invalid_argument("theorem2_exact_deviation: size mismatch");
  const int p0 = grid_n - (m_p + 1) / 2;
  double cross = 0.0;
  for (std::size_t k = 0; k < support.size(); ++k) {
    for (std::size_t l = 0; l < support.size(); ++l) {
      if (k == l) continue;
      const double x = kTwoPi * (support[k].r - support[l].r) / grid_n;
      const double y = kTwoPi * (support[k].c - support[l].c) / grid_n;
      cd b{0.0, 0.0};
      for (int i = 0; i < m_p; ++i) b += t_xy(p0 + i, x, y, grid_n, ContourDist::uniform);
      cross += std::real(s(static_cast<Eigen::Index>(k)) * std::conj(s(static_cast<Eigen::Index>(l))) * b);
    }
  }
  return std::abs(cross) / static_cast<double>(m_p);
}

int d_min(const std::vector<Coord>& support, int grid_n) {
  if (grid_n < 1) throw std::invalid_argument("d_min: bad grid");
  if (support.size() < 2) return grid_n;
  auto wrap = [grid_n](int v) {
    const int m = std::abs(v) % grid_n;
    return std::min(m, grid_n - m);
  };
  int best = grid_n;
  for (std::size_t i = 0; i < support.size(); ++i)
    for (std::size_t j = i + 1; j < support.size(); ++j) {
      const int d = std::max(wrap(support[i].r - support[j].r), wrap(support[i].c - support[j].c));
      best = std::min(best, d);
    }
  return best;
}

std::optional<int> sufficient_mp(double delta, int k, int dmin, int grid_n) {
  if (delta <= 0.0 || k < 1 || dmin < 1 || dmin > grid_n / 2 || grid_n < 2)
    throw std::invalid_argument("sufficient_mp: bad parameters");
  if (k == 1) return 1;  // no cross terms, any trajectory concentrates exactly
  for (int m_p = 3; m_p <= 2 * grid_n - 1; m_p += 2) {
    const double rhs = (k - 1) * (4.0 + 2.0 * log_factor(grid_n, m_p)) /
                       (delta * std::sin(std::numbers::pi * dmin / grid_n));
    if (static_cast<double>(m_p) >= rhs) return m_p;
  }
  return std::nullopt;
}

}  // namespace swiftlink
