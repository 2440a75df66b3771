#pragma once

#include <complex>
#include <iosfwd>
#include <span>
#include <vector>

#include "hnls/field.hpp"

namespace hnls::kernel {

using cplx = std::complex<double>;

/// One tabulation request for Phi_a^{(n)}.
struct KernelQuery {
  double a = 0.0;
  double x = 0.0;
  int derivative_order = 0;  // 0 or 1
};

struct PhiResult {
  cplx value{0.0, 0.0};
  double error_estimate = 0.0;
  bool converged = true;
};

/// Phi_a^{(n)}(x) for n in {0,1}: the generalized Airy function
/// (1/2pi) int exp(i(xi^3 - a xi^2 + x xi)) dxi and its x-derivative.
/// Evaluated from the absolutely convergent rotated-contour representation;
/// deep in the oscillatory region (where the contour integrand overflows the
/// cancellation budget) the value is continued with the defining ODE
/// 3y'' - 2ai y' - xy = 0 from a quadrature anchor.
PhiResult phi_full(double a, double x, int n);
cplx phi(double a, double x, int n);

/// Batch evaluation; oscillatory-region points share one ODE sweep.
std::vector<PhiResult> phi_batch(double a, std::span<const double> xs, int n);

/// |3 y'' - 2ai y' - x y| with y'' from centered differences of phi(.,.,1).
double phi_ode_residual(double a, double x);

/// Fundamental solution G(t,x) = t^{-1/3} Phi_{a t^{1/3}}((x - b t)/t^{1/3});
/// n = 1 gives the x-derivative. Requires t > 0.
cplx green(double t, double x, double a, double b, int n);
std::vector<PhiResult> green_batch(double t, std::span<const double> xs, double a, double b,
                                   int n);

struct EnvelopeReport {
  enum class Region { left, right };
  Region region = Region::left;
  double fitted_prefactor = 0.0;
  double fitted_rate = 0.0;   // left: log-log slope; right: stretched-exp decay constant
  double max_violation = 0.0;
  double r_squared = 0.0;
};

struct EnvelopeCertification {
  EnvelopeReport left;
  EnvelopeReport right;
};

/// Fits the decay envelopes of |Phi_a^{(n)}|: a power law (1+|x|)^rate on the
/// local maxima for x <= -2 and exp(-rate x^{3/2}) for x >= 1.
EnvelopeCertification certify_envelope(double a, int n, double x_min, double x_max,
                                       std::size_t n_samples);

/// int rho_{alpha,eps}(x) |d^n_x G(t, x - y)|^2 dx, a bound-certification probe.
double kernel_weighted_norm(double t, double y, double alpha, double eps, int n, double a = 0.0,
                            double b = 0.0);

/// CSV tabulation with columns a,x,n,re,im,err_estimate.
void write_phi_table_csv(std::ostream& os, const std::vector<KernelQuery>& queries);

}  // namespace hnls::kernel
