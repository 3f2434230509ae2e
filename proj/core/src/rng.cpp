#include "swiftlink/rng.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace swiftlink {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : base_(seed), gen_(splitmix64(seed)) {}

Rng Rng::stream(std::uint64_t key) const {
  return Rng(splitmix64(base_ ^ splitmix64(key + 0x51edDA1ULL)));
}

std::uint64_t Rng::next_u64() { return gen_(); }

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::int64_t Rng::uniform_int(std::int64_t n) {
  // Lemire rejection; unbiased for any n >= 1.
  const auto un = static_cast<std::uint64_t>(n);
  while (true) {
    std::uint64_t x = next_u64();
    __uint128_t m = static_cast<__uint128_t>(x) * un;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo >= un) return static_cast<std::int64_t>(m >> 64);
    if (lo >= (0ULL - un) % un) return static_cast<std::int64_t>(m >> 64);
  }
}

int Rng::binomial_half(int n) {
  int acc = 0;
  int left = n;
  while (left > 0) {
    int take = left < 64 ? left : 64;
    std::uint64_t bits = next_u64();
    if (take < 64) bits &= (1ULL << take) - 1;
    acc += std::popcount(bits);
    left -= take;
  }
  return acc;
}

double Rng::gauss() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // u1 in (0,1] so the log is finite.
  double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double th = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(th);
  have_spare_ = true;
  return r * std::cos(th);
}

cd Rng::cgauss() {
  double re = gauss();
  double im = gauss();
  return cd(re, im) / std::sqrt(2.0);
}

}  // namespace swiftlink
