#include "swiftlink/trajectories.hpp"

#include <cmath>
#include <stdexcept>

namespace swiftlink {

std::vector<Coord> contour(int k, int n) {
  if (k < 0 || k > 2 * n - 2) throw std::invalid_argument("contour: index out of range");
  int lo = std::max(0, k - (n - 1));
  int hi = std::min(k, n - 1);
  std::vector<Coord> pts;
  pts.reserve(hi - lo + 1);
  for (int r = lo; r <= hi; ++r) pts.push_back({r, k - r});
  return pts;
}

int p_start_contour(int n, int m) { return n - 1 - m / 2; }

Trajectory row_trajectory(int n) {
  Trajectory t;
  t.kind = TrajKind::row;
  t.n = n;
  t.steps.reserve(n * n);
  for (int i = 0; i < n * n; ++i) t.steps.push_back({i / n, i % n});
  return t;
}

Trajectory block_trajectory(int n) {
  if (n % 2 != 0) throw std::invalid_argument("block_trajectory: N must be even");
  const int h = n / 2;
  Trajectory t;
  t.kind = TrajKind::block;
  t.n = n;
  t.steps.reserve(n * n);
  for (int i = h - 1; i >= 0; --i)  // top-left, reverse row-major
    for (int k = h - 1; k >= 0; --k) t.steps.push_back({i, k});
  for (int i = 0; i < h; ++i)  // top-right, row-major
    for (int k = 0; k < h; ++k) t.steps.push_back({i, h + k});
  for (int k = 0; k < h; ++k)  // bottom-left, columns bottom-up
    for (int i = h - 1; i >= 0; --i) t.steps.push_back({h + i, k});
  for (int k = h - 1; k >= 0; --k)  // bottom-right, columns right-to-left
    for (int i = 0; i < h; ++i) t.steps.push_back({h + i, h + k});
  return t;
}

namespace {

Coord sample_contour(int k, int n, ContourDist dist, Rng& rng) {
  std::vector<Coord> pts = contour(k, n);
  const auto size = static_cast<int>(pts.size());
  int idx;
  if (dist == ContourDist::uniform) {
    idx = static_cast<int>(rng.uniform_int(size));
  } else {
    idx = rng.binomial_half(size - 1);
  }
  return pts[idx];
}

void check_length(int n, int m) {
  if (m < 1 || m > 2 * n - 1)
    throw std::invalid_argument("trajectory length must be in [1, 2N-1]");
}

}  // namespace

Trajectory p_trajectory(int n, int m, ContourDist dist, Rng& rng) {
  check_length(n, m);
  Trajectory t;
  t.kind = TrajKind::p;
  t.n = n;
  t.steps.reserve(m);
  const int p0 = p_start_contour(n, m);
  for (int k = p0; k < p0 + m; ++k) t.steps.push_back(sample_contour(k, n, dist, rng));
  return t;
}

Trajectory n_trajectory(int n, int m, ContourDist dist, Rng& rng) {
  check_length(n, m);
  Trajectory t;
  t.kind = TrajKind::n;
  t.n = n;
  t.steps.reserve(m);
  const int top = p_start_contour(n, m) + m - 1;
  for (int k = top; k > top - m; --k) t.steps.push_back(sample_contour(k, n, dist, rng));
  return t;
}

Trajectory compose_type1(const Trajectory& p, const Trajectory& nn) {
  if (p.n != nn.n) throw std::invalid_argument("compose_type1: grid mismatch");
  Trajectory t;
  t.kind = TrajKind::type1;
  t.n = p.n;
  t.steps = p.steps;
  t.steps.insert(t.steps.end(), nn.steps.begin(), nn.steps.end());
  t.split = static_cast<int>(p.steps.size());
  return t;
}

Trajectory compose_type2(const Trajectory& p, const Trajectory& nn) {
  if (p.n != nn.n) throw std::invalid_argument("compose_type2: grid mismatch");
  if (p.steps.size() != nn.steps.size())
    throw std::invalid_argument("compose_type2: halves must have equal length");
  Trajectory t;
  t.kind = TrajKind::type2;
  t.n = p.n;
  t.steps.reserve(2 * p.steps.size());
  for (size_t i = 0; i < p.steps.size(); ++i) {
    t.steps.push_back(p.steps[i]);
    t.steps.push_back(nn.steps[i]);
  }
  t.split = static_cast<int>(p.steps.size());
  return t;
}

CMat induced_phase_matrix(const Trajectory& t, double eps) {
  CMat pm = CMat::Zero(t.n, t.n);
  for (size_t m = 0; m < t.steps.size(); ++m)
    pm(t.steps[m].r, t.steps[m].c) = std::polar(1.0, eps * static_cast<double>(m));
  return pm;
}

CMat p_cnt(int n, double eps) {
  CMat out(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out(r, c) = std::polar(1.0, eps * (r + c));
  return out;
}

CMat q_cnt(int n, double eps) {
  return std::polar(1.0, 2.0 * (n - 1) * eps) * p_cnt(n, -eps);
}

}  // namespace swiftlink
