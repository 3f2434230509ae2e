#pragma once

#include <cstdint>
#include <random>

#include "swiftlink/types.hpp"

namespace swiftlink {

// Deterministic RNG with cheap derived streams.
//
// Results must be byte-identical across runs and across worker counts, so
// every Monte-Carlo trial gets its own stream derived from (master seed,
// trial index). Gaussians are produced by an explicit Box-Muller transform
// rather than std::normal_distribution, whose output sequence the standard
// leaves unspecified.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  // Independent child stream keyed by e.g. a trial index. Derivation uses
  // only the constructor seed, not the current draw position.
  Rng stream(std::uint64_t key) const;

  std::uint64_t next_u64();
  double uniform();                      // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  std::int64_t uniform_int(std::int64_t n);  // [0, n)
  int binomial_half(int n);              // Binomial(n, 1/2) via fair bits
  double gauss();                        // standard normal
  cd cgauss();                           // CN(0, 1)

 private:
  std::uint64_t base_;
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace swiftlink
