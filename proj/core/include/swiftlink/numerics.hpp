#pragma once

#include "swiftlink/types.hpp"

namespace swiftlink {

// Symmetric unitary DFT matrix, U(k,l) = exp(-2*pi*i*k*l/N)/sqrt(N).
// Cached per N; the reference never invalidates.
const CMat& dft_matrix(int n);

// 2D transforms under the symmetric convention: dft2(X) = U X U,
// idft2(X) = conj(U) X conj(U). idft2(dft2(X)) == X.
CMat dft2(const CMat& x);
CMat idft2(const CMat& x);

// 2D circular convolution, C(m,n) = sum_{i,j} A(i,j) B((m-i) mod N, (n-j) mod N).
// Under the unitary normalization the duality reads
//   dft2(A .* B) == (1/N) * circconv2(dft2(A), dft2(B)).
CMat circconv2(const CMat& a, const CMat& b);

// a_N(delta) = [1, e^{j delta}, ..., e^{j (N-1) delta}]^T.
CVec vandermonde(int n, double delta);

// Zero-padded DFT of g to length factor*len(g); bin b holds
// sum_k g[k] e^{-2 pi i b k / L} with L = factor*len(g) (no 1/L scaling).
CVec oversampled_dft(const CVec& g, int factor);

}  // namespace swiftlink
