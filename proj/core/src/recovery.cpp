#include "swiftlink/recovery.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "swiftlink/numerics.hpp"

namespace swiftlink {

PartialDftDict::PartialDftDict(const std::vector<Coord>& coords, int n)
    : n_(n), coords_(coords) {
  if (n < 1) throw std::invalid_argument("PartialDftDict: bad grid size");
  const auto m = static_cast<Eigen::Index>(coords.size());
  // twiddle lookup: atom phase is always a multiple of 2 pi / N
  std::vector<cd> w(n);
  for (int i = 0; i < n; ++i)
    w[i] = std::polar(1.0 / n, 2.0 * std::numbers::pi * i / n);
  atoms_.resize(m, static_cast<Eigen::Index>(n) * n);
  for (Eigen::Index i = 0; i < m; ++i) {
    const long r = coords[i].r, c = coords[i].c;
    for (int k = 0; k < n; ++k) {
      const long rk = (r * k) % n;
      for (int l = 0; l < n; ++l)
        atoms_(i, static_cast<Eigen::Index>(k) * n + l) = w[(rk + c * l) % n];
    }
  }
}

SparseEstimate PartialDftDict::solve(const CVec& y, int k_max, double tol) const {
  const auto m = static_cast<int>(coords_.size());
  if (y.size() != m) throw std::invalid_argument("solve: measurement length mismatch");
  if (k_max < 1) throw std::invalid_argument("solve: k_max must be >= 1");
  if (k_max > m) throw std::invalid_argument("solve: k_max exceeds measurement count");

  CVec resid = y;
  std::vector<Eigen::Index> picked;
  CMat cols(m, k_max);
  CVec coef;
  double rnorm = resid.norm();
  // always take at least one atom; the threshold gates continuation only
  for (int it = 0; it < k_max; ++it) {
    Eigen::VectorXd corr = (atoms_.adjoint() * resid).cwiseAbs();
    for (Eigen::Index j : picked) corr(j) = -1.0;
    Eigen::Index best;
    corr.maxCoeff(&best);
    picked.push_back(best);
    cols.col(it) = atoms_.col(best);
    coef = cols.leftCols(it + 1).householderQr().solve(y);
    resid = y - cols.leftCols(it + 1) * coef;
    rnorm = resid.norm();
    if (rnorm <= tol) break;
  }

  SparseEstimate est;
  est.s_hat = CMat::Zero(n_, n_);
  est.support.reserve(picked.size());
  for (size_t i = 0; i < picked.size(); ++i) {
    const int k = static_cast<int>(picked[i] / n_);
    const int l = static_cast<int>(picked[i] % n_);
    est.support.push_back({k, l});
    est.s_hat(k, l) = coef(static_cast<Eigen::Index>(i));
  }
  est.residual_norm = rnorm;
  return est;
}

SparseEstimate omp_partial_dft(const CVec& y, const std::vector<Coord>& coords, int n,
                               int k_max, double tol) {
  return PartialDftDict(coords, n).solve(y, k_max, tol);
}

SparseEstimate recover_masked_beamspace(const CVec& y, const Trajectory& t, int k_max,
                                        double tol) {
  return omp_partial_dft(y, t.steps, t.n, k_max, tol);
}

DenseEstimate omp_dense(const CVec& y, const CMat& a, int k_max, double tol) {
  const auto m = a.rows();
  const auto d = a.cols();
  if (y.size() != m) throw std::invalid_argument("omp_dense: measurement length mismatch");
  if (k_max < 1 || k_max > m) throw std::invalid_argument("omp_dense: bad k_max");
  Eigen::VectorXd norms = a.colwise().norm();
  for (Eigen::Index j = 0; j < d; ++j)
    if (norms(j) <= 0.0) norms(j) = 1.0;

  DenseEstimate est;
  CVec resid = y;
  CMat cols(m, k_max);
  double rnorm = resid.norm();
  for (int it = 0; it < k_max; ++it) {
    Eigen::VectorXd corr = (a.adjoint() * resid).cwiseAbs().cwiseQuotient(norms);
    for (int j : est.support) corr(j) = -1.0;
    Eigen::Index best;
    corr.maxCoeff(&best);
    est.support.push_back(static_cast<int>(best));
    cols.col(it) = a.col(best);
    est.coef = cols.leftCols(it + 1).householderQr().solve(y);
    resid = y - cols.leftCols(it + 1) * est.coef;
    rnorm = resid.norm();
    if (rnorm <= tol) break;
  }
  est.residual_norm = rnorm;
  return est;
}

CMat invert_mask(const CMat& s_hat, const CVec& mask) {
  if (s_hat.rows() != mask.size() || s_hat.cols() != mask.size())
    throw std::invalid_argument("invert_mask: dimension mismatch");
  const auto n = mask.size();
  CMat x(n, n);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index l = 0; l < n; ++l)
      x(k, l) = s_hat(k, l) / (std::conj(mask(k)) * std::conj(mask(l)));
  return x;
}

CMat channel_from_beamspace(const CMat& x_hat) { return idft2(x_hat); }

CMat recover_h_from_g(const CMat& g_hat, const CVec& mask) {
  return idft2(invert_mask(dft2(g_hat), mask));
}

}  // namespace swiftlink
