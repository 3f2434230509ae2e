#pragma once

#include <vector>

#include "swiftlink/types.hpp"

namespace swiftlink {

struct SparseEstimate {
  CMat s_hat;
  std::vector<Coord> support;
  double residual_norm = 0.0;
};

// Partial-2D-DFT dictionary for a fixed coordinate list: atom (k, l) at
// measurement m is e^{j 2 pi (r_m k + c_m l) / N} / N. Building the atom
// matrix once and reusing it across solves is what makes the iterated CFO
// search affordable.
class PartialDftDict {
 public:
  PartialDftDict(const std::vector<Coord>& coords, int n);

  // Orthogonal matching pursuit with least-squares refit each iteration;
  // stops at k_max atoms or residual norm <= tol. All atoms share the same
  // norm, so plain correlation ranking needs no per-atom normalization.
  SparseEstimate solve(const CVec& y, int k_max, double tol) const;

  int grid() const { return n_; }
  int measurements() const { return static_cast<int>(coords_.size()); }

 private:
  int n_;
  std::vector<Coord> coords_;
  CMat atoms_;  // M x N^2, column k*N+l
};

// One-shot wrappers around PartialDftDict.
SparseEstimate omp_partial_dft(const CVec& y, const std::vector<Coord>& coords, int n,
                               int k_max, double tol);
SparseEstimate recover_masked_beamspace(const CVec& y, const Trajectory& t, int k_max,
                                        double tol);

// Generic dense-dictionary OMP (atoms as columns of a); used by the random
// multi-finger baseline whose atoms have unequal norms.
struct DenseEstimate {
  std::vector<int> support;
  CVec coef;
  double residual_norm = 0.0;
};
DenseEstimate omp_dense(const CVec& y, const CMat& a, int k_max, double tol);

// X = S ./ (conj(lambda) conj(lambda)^T): exact inverse of masked_beamspace
// for any nonzero mask, unimodular or not.
CMat invert_mask(const CMat& s_hat, const CVec& mask);

// H = idft2(X).
CMat channel_from_beamspace(const CMat& x_hat);

// Virtual-channel estimate back to the antenna domain:
// S = dft2(G), X = invert_mask(S), H = idft2(X).
CMat recover_h_from_g(const CMat& g_hat, const CVec& mask);

}  // namespace swiftlink
