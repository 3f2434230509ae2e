#pragma once

#include <functional>
#include <optional>

#include "swiftlink/types.hpp"

namespace swiftlink {

struct SwiftLinkDiagnostics {
  CVec g;                    // contour cross-correlation at the accepted CFO
  double resid_p = 0.0;      // branch residual norms at the accepted CFO
  double resid_n = 0.0;
  double resid_final = 0.0;  // full-stream residual (type II final solve)
  int solver_evals = 0;      // branch-pair solves spent in the search
};

struct SwiftLinkResult {
  double epsilon_hat = 0.0;  // radians per measurement
  CMat h_hat;
  double phi_hat = 0.0;      // branch-combining phase (type I)
  SwiftLinkDiagnostics diag;
};

// Shift compensation + coherent combining: M_p = G_p .* P_cnt(-eps_hat),
// M_n = G_n .* P_cnt(+eps_hat), phi = arg <M_p, M_n>, M = M_p + e^{j phi} M_n.
// With exact opposite-shift inputs the output magnitude doubles. phi_out,
// when non-null, receives phi.
CMat compensate_and_combine(const CMat& g_p, const CMat& g_n, double eps_hat,
                            double* phi_out = nullptr);

// Golden-section minimizer on [a, b].
double golden_min(const std::function<double(double)>& f, double a, double b,
                  double tol = 1e-8, int max_it = 40);

// Damped fixed-point iteration on the residual-CFO map g_of with Aitken
// acceleration of geometric tails; iterates stay clipped to [-lim, lim].
double aitken_loop(const std::function<double(double)>& g_of, double h0, int iters,
                   double lim);

// The frozen CFO search: Aitken from 0, multistart from the top spectrum
// peaks of g0, g-consistency gating (|residual| <= 0.05) with fit-based
// selection, then a golden-section polish around the winner.
double hybrid_estimate(const std::function<double(double)>& g_of,
                       const std::function<double(double)>& fit_of, const CVec& g0,
                       double spacing, double lim, double window);

// Algorithm: split the type-I stream into its p and n halves, OMP both
// branches on the derotated stream, estimate the residual CFO from the
// g-vector, iterate, then combine the aligned branch estimates (averaged,
// so the magnitude matches a single branch) and invert mask and transforms.
// h_force skips the search and evaluates at a fixed CFO (diagnostics).
SwiftLinkResult run_type1(const CVec& y, const Trajectory& t, const CVec& z, int k_max,
                          double sigma, std::optional<double> h_force = std::nullopt);

// Type II: de-interleave, estimate the CFO with the spacing-4 kernel, then
// one final sparse recovery over the full derotated stream.
SwiftLinkResult run_type2(const CVec& y, const Trajectory& t, const CVec& z, int k_max,
                          double sigma, std::optional<double> h_force = std::nullopt);

// Maximum correctable analog CFO in Hz: W/(4(N_s+L-1)) for type I, half
// that for type II.
double cfo_range_hz(TrajKind kind, double w_hz, int n_s, int l);

}  // namespace swiftlink
