#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace hnls::quad {

/// Gauss-Legendre rule on [-1, 1]. Nodes and weights are computed once per
/// order by Newton iteration on the Legendre recurrence and cached.
struct GaussRule {
  std::vector<long double> nodes;
  std::vector<long double> weights;
};

const GaussRule& gauss_legendre(int order);

struct Result {
  std::complex<long double> value{0.0L, 0.0L};
  long double error_estimate = 0.0L;
  std::size_t evaluations = 0;
  bool converged = true;
};

using ComplexIntegrand = std::function<std::complex<long double>(long double)>;

/// Adaptive bisection with a whole-panel vs split-panel error estimate.
Result integrate(const ComplexIntegrand& f, long double a, long double b,
                 long double abs_tol, long double rel_tol, int max_depth = 40,
                 std::size_t max_evaluations = 4'000'000);

double integrate_real(const std::function<double(double)>& f, double a, double b,
                      double abs_tol, double rel_tol = 1e-13);

}  // namespace hnls::quad
