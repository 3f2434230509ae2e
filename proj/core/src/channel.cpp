#include "swiftlink/channel.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <utility>

#include "swiftlink/numerics.hpp"

namespace swiftlink {

Ray ray_from_angles(cd gain, double theta_e, double theta_a, int tap) {
  Ray r;
  r.gain = gain;
  r.omega_e = std::numbers::pi * std::sin(theta_e) * std::sin(theta_a);
  r.omega_a = std::numbers::pi * std::sin(theta_e) * std::cos(theta_a);
  r.tap = tap;
  return r;
}

CMat ChannelRealization::equivalent_narrowband() const {
  CMat h = CMat::Zero(n, n);
  for (const auto& t : taps) h += t;
  return h;
}

CMat synth_narrowband(const std::vector<Ray>& rays, int n) {
  if (rays.empty()) throw std::invalid_argument("synth_narrowband: no rays");
  CMat h = CMat::Zero(n, n);
  for (const auto& ray : rays)
    h += ray.gain * (vandermonde(n, ray.omega_e) * vandermonde(n, ray.omega_a).transpose());
  return h;
}

ChannelRealization synth_wideband(const std::vector<Ray>& rays, int n, int l) {
  if (rays.empty()) throw std::invalid_argument("synth_wideband: no rays");
  if (l < 1) throw std::invalid_argument("synth_wideband: L must be >= 1");
  ChannelRealization ch;
  ch.n = n;
  ch.l = l;
  ch.rays = rays;
  ch.taps.assign(l, CMat::Zero(n, n));
  for (const auto& ray : rays) {
    if (ray.tap < 0 || ray.tap >= l) throw std::invalid_argument("synth_wideband: ray tap out of range");
    ch.taps[ray.tap] += ray.gain * (vandermonde(n, ray.omega_e) * vandermonde(n, ray.omega_a).transpose());
  }
  return ch;
}

CMat beamspace(const CMat& h) { return dft2(h); }

CMat masked_beamspace(const CMat& x, const CVec& mask) {
  if (x.rows() != mask.size() || x.cols() != mask.size())
    throw std::invalid_argument("masked_beamspace: dimension mismatch");
  return mask.conjugate().asDiagonal() * x * mask.conjugate().asDiagonal();
}

CMat virtual_channel(const CMat& h, const CVec& mask) {
  return idft2(masked_beamspace(beamspace(h), mask));
}

namespace {

void normalize(ChannelRealization& ch, int k, NormMode mode) {
  double energy = 0.0;
  for (const auto& t : ch.taps) energy += t.squaredNorm();
  double scale;
  if (mode == NormMode::exact) {
    if (energy <= 0.0) throw std::runtime_error("normalize: zero-energy realization");
    scale = ch.n / std::sqrt(energy);
  } else {
    scale = 1.0 / std::sqrt(static_cast<double>(k));
  }
  for (auto& ray : ch.rays) ray.gain *= scale;
  for (auto& t : ch.taps) t *= scale;
}

}  // namespace

ChannelRealization random_sparse_beamspace(int n, int k, bool on_grid, Rng& rng, NormMode mode) {
  if (k < 1 || k > n * n) throw std::invalid_argument("random_sparse_beamspace: K out of range");
  std::vector<Ray> rays;
  rays.reserve(k);
  std::set<std::pair<int, int>> used;
  const double two_pi = 2.0 * std::numbers::pi;
  while (static_cast<int>(rays.size()) < k) {
    Ray ray;
    ray.gain = rng.cgauss();
    if (on_grid) {
      int p = static_cast<int>(rng.uniform_int(n));
      int q = static_cast<int>(rng.uniform_int(n));
      if (!used.insert({p, q}).second) continue;
      ray.omega_e = two_pi * p / n;
      ray.omega_a = two_pi * q / n;
    } else {
      ray.omega_e = rng.uniform(-std::numbers::pi, std::numbers::pi);
      ray.omega_a = rng.uniform(-std::numbers::pi, std::numbers::pi);
    }
    rays.push_back(ray);
  }
  ChannelRealization ch = synth_wideband(rays, n, 1);
  normalize(ch, k, mode);
  return ch;
}

ChannelRealization random_wideband(int n, int l, int k, Rng& rng, NormMode mode) {
  if (k < 1) throw std::invalid_argument("random_wideband: K must be >= 1");
  std::vector<Ray> rays;
  rays.reserve(k);
  for (int i = 0; i < k; ++i) {
    Ray ray;
    ray.gain = rng.cgauss();
    ray.omega_e = rng.uniform(-std::numbers::pi, std::numbers::pi);
    ray.omega_a = rng.uniform(-std::numbers::pi, std::numbers::pi);
    ray.tap = static_cast<int>(rng.uniform_int(l));
    rays.push_back(ray);
  }
  ChannelRealization ch = synth_wideband(rays, n, l);
  normalize(ch, k, mode);
  return ch;
}

}  // namespace swiftlink
