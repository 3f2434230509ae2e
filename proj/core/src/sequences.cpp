#include "swiftlink/sequences.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "swiftlink/numerics.hpp"

namespace swiftlink {

CVec zc(int n, int u) {
  if (n < 2) throw std::invalid_argument("zc: N must be >= 2");
  if (std::gcd(u, n) != 1) throw std::invalid_argument("zc: root and length must be co-prime");
  CVec z(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int k = 0; k < n; ++k) {
    long arg = (n % 2 == 0) ? static_cast<long>(k) * k : static_cast<long>(k) * (k + 1);
    // phase has period 2N in u*arg, so reduce modulo 2N to keep angles small
    long two_n = 2L * n;
    long red = ((static_cast<long>(u) % two_n) * (arg % two_n)) % two_n;
    red = ((red % two_n) + two_n) % two_n;
    z(k) = std::polar(scale, std::numbers::pi * static_cast<double>(red) / n);
  }
  return z;
}

CVec circshift(const CVec& v, int s) {
  const auto n = static_cast<int>(v.size());
  if (n == 0) return v;
  CVec out(n);
  int sm = ((s % n) + n) % n;
  for (int i = 0; i < n; ++i) out(i) = v((i - sm + n) % n);
  return out;
}

CVec spectral_mask(const CVec& z) {
  const auto n = static_cast<int>(z.size());
  const CMat& u = dft_matrix(n);
  return std::sqrt(static_cast<double>(n)) * (u * z);
}

CVec quantize_phases(const CVec& v, int bits) {
  if (bits <= 0) return v;
  const double step = 2.0 * std::numbers::pi / static_cast<double>(1 << bits);
  CVec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    double idx = std::floor(std::arg(v(i)) / step + 0.5);
    out(i) = std::polar(std::abs(v(i)), step * idx);
  }
  return out;
}

CVec barker13() {
  static const double b[13] = {1, 1, 1, 1, 1, -1, -1, 1, 1, -1, 1, -1, 1};
  CVec out(13);
  for (int i = 0; i < 13; ++i) out(i) = cd(b[i], 0.0);
  return out;
}

}  // namespace swiftlink
