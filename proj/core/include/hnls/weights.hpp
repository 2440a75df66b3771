#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "hnls/field.hpp"

namespace hnls {

/// Selects rho_{alpha,eps} (no truncation_r) or its bounded truncation
/// rho_{r,alpha,eps}.
struct WeightSpec {
  double alpha = 0.0;
  double eps = 1.0;
  std::optional<double> truncation_r;
};

/// Smooth non-decreasing cut-off: 0 for x <= 0, 1 for x >= 1, built from the
/// exp(-1/x) bump so that eta(x) + eta(1-x) == 1 identically.
double eval_eta(double x);

/// d^order/dx^order of eval_eta, order in {0,1,2,3}.
double eta_derivative(double x, int order);

namespace detail {
struct RhoBlend;
}

/// Evaluator for the weight family. The piece on (-1,0) joining e^{2 eps x}
/// to the polynomial/logarithmic branch is a C-infinity strictly increasing
/// interpolant: its derivative is a convex end-window combination of the two
/// branch derivatives plus a nonnegative interior bump that fixes the total
/// rise. Construction happens once per (alpha, eps) and is cached.
class Weight {
 public:
  explicit Weight(const WeightSpec& spec);

  const WeightSpec& spec() const { return spec_; }

  double value(double x) const;
  double derivative(double x, int order) const;  // order in {0,1,2,3}

  /// value() tabulated on the grid nodes.
  std::vector<double> values_on(const Grid& grid) const;

 private:
  double rho_value(double x) const;
  double rho_derivative(double x, int order) const;
  double truncated_value(double x) const;
  double truncated_derivative(double x, int order) const;

  WeightSpec spec_;
  std::shared_ptr<const detail::RhoBlend> blend_;
};

/// rho_{alpha,eps}(x); requires spec without truncation_r.
double eval_rho(const WeightSpec& spec, double x);

/// d/dx rho_{alpha,eps}(x).
double eval_rho_prime(const WeightSpec& spec, double x);

/// rho_{r,alpha,eps}(x); requires truncation_r.
double eval_rho_truncated(const WeightSpec& spec, double x);

/// Spacing-weighted sum of |u_j|^2 w(x_j) for the rho family.
double weighted_norm_sq(const Field& u, const Weight& w);
double weighted_norm_sq(const Field& u, const WeightSpec& spec);

/// Same with the one-sided power weight (1+x_+)^{2 alpha}.
double weighted_norm_sq_plus(const Field& u, double alpha);

double plus_part_weight(double x, double alpha);

}  // namespace hnls
