#pragma once

#include <complex>
#include <functional>

#include "hnls/series.hpp"
#include "hnls/trajectory.hpp"

// Slow independent reference computations used to validate the fast paths.
// Nothing in the production library calls into this header; the dependency
// arrow points tests -> oracle only.

namespace hnls::oracle {

/// Classical Ai(x) to better than 1e-10 for |x| <= 12: long-double Maclaurin
/// series for |x| <= 7.5, Poincare asymptotics beyond.
double airy_reference(double x);

/// Phi_a(x) by direct oscillatory quadrature of the real-line integral with
/// wide truncation, fine phase-resolved panels and an integration-by-parts
/// tail correction. Cost guard: |x| <= 30, |a| <= 2.
std::complex<double> phi_direct_quadrature(double a, double x);

/// Exact linear flow through the scaling-and-squaring matrix exponential of
/// the densely assembled spectral generator. Size guard: N <= 64.
Field dense_linear_solve(const Field& u0, double t, double a, double b);

/// L2 norm of i u_t + a u_xx + i b u_x + i u_xxx + lambda |u|u
/// + i beta (|u|u)_x + i d u per interior snapshot (u_t centered).
ResidualSeries pde_pointwise_residual(const Trajectory& traj, const EquationParams& params,
                                      const DampingSpec& damping);

/// Recursive adaptive Simpson; the 1-D quadrature oracle for weighted-norm
/// and kernel-mass checks (deliberately not the production Gauss rule).
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol);

}  // namespace hnls::oracle
