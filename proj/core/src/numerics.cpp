#include "swiftlink/numerics.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include <unsupported/Eigen/FFT>

namespace swiftlink {

const CMat& dft_matrix(int n) {
  if (n < 1) throw std::invalid_argument("dft_matrix: N must be positive");
  static std::mutex mtx;
  static std::map<int, std::unique_ptr<CMat>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) {
    auto u = std::make_unique<CMat>(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        // reduce k*l mod N first so the angle stays small
        long kl = (static_cast<long>(k) * l) % n;
        double ang = -2.0 * std::numbers::pi * static_cast<double>(kl) / n;
        (*u)(k, l) = std::polar(scale, ang);
      }
    }
    it = cache.emplace(n, std::move(u)).first;
  }
  return *it->second;
}

CMat dft2(const CMat& x) {
  if (x.rows() != x.cols()) throw std::invalid_argument("dft2: input must be square");
  const CMat& u = dft_matrix(static_cast<int>(x.rows()));
  return u * x * u;
}

CMat idft2(const CMat& x) {
  if (x.rows() != x.cols()) throw std::invalid_argument("idft2: input must be square");
  const CMat uc = dft_matrix(static_cast<int>(x.rows())).conjugate();
  return uc * x * uc;
}

CMat circconv2(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("circconv2: dimension mismatch");
  const auto nr = static_cast<int>(a.rows());
  const auto nc = static_cast<int>(a.cols());
  CMat out = CMat::Zero(nr, nc);
  for (int m = 0; m < nr; ++m)
    for (int n = 0; n < nc; ++n) {
      cd acc = 0.0;
      for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j)
          acc += a(i, j) * b(((m - i) % nr + nr) % nr, ((n - j) % nc + nc) % nc);
      out(m, n) = acc;
    }
  return out;
}

CVec vandermonde(int n, double delta) {
  if (n < 1) throw std::invalid_argument("vandermonde: N must be positive");
  CVec a(n);
  for (int k = 0; k < n; ++k) a(k) = std::polar(1.0, delta * k);
  return a;
}

CVec oversampled_dft(const CVec& g, int factor) {
  if (g.size() == 0) throw std::invalid_argument("oversampled_dft: empty input");
  if (factor < 1) throw std::invalid_argument("oversampled_dft: factor must be >= 1");
  const auto len = static_cast<int>(g.size());
  const int big = len * factor;
  std::vector<cd> in(big, cd(0.0, 0.0));
  for (int k = 0; k < len; ++k) in[k] = g(k);
  std::vector<cd> out(big);
  Eigen::FFT<double> fft;  // per-call instance, safe under concurrency
  fft.fwd(out, in);
  return Eigen::Map<const CVec>(out.data(), big);
}

}  // namespace swiftlink
