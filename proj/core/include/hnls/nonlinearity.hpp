#pragma once

#include <vector>

#include "hnls/damping.hpp"
#include "hnls/field.hpp"
#include "hnls/params.hpp"

namespace hnls {

enum class EvalMode { pseudospectral, physical_p_form };

struct NonlinearConfig {
  double delta = 0.0;
  EvalMode evaluation_mode = EvalMode::pseudospectral;
  bool dealias = true;

  void validate() const;  // physical_p_form requires delta == 0
};

/// g_delta(theta) = sqrt(theta + delta); rejects negative arguments.
double g_delta(double theta, double delta);

/// Pointwise |u|' = Re(conj(u) u_x)/|u|, zero where u vanishes (below the
/// 1e-300 guard). Satisfies | |u|' | <= |u_x|.
Field abs_derivative(const Field& u, const Field& ux);

/// P(u,v) = 3|u| v + u^2 conj(v)/|u|; (|u|u)_x = P(u,u_x)/2 where u != 0.
cplx p_function(cplx u, cplx v);

/// max over nodes of |g_delta(|v|^2) - g_delta(|vt|^2)| / |v - vt|; <= 1 by
/// the contraction lemma for the regularized kernel.
double lipschitz_probe(const Field& v, const Field& vt, double delta);

/// F(u) = -lambda g_delta(|u|^2) u - i beta (g_delta(|u|^2) u)_x - i d(x) u,
/// with the damping profile pre-evaluated on the grid.
class RhsEvaluator {
 public:
  RhsEvaluator(GridPtr grid, const EquationParams& params, const DampingSpec& damping,
               const NonlinearConfig& cfg);

  Field operator()(const Field& u) const;

  const std::vector<double>& damping_values() const { return d_values_; }
  const NonlinearConfig& config() const { return cfg_; }

 private:
  GridPtr grid_;
  EquationParams params_;
  NonlinearConfig cfg_;
  std::vector<double> d_values_;
};

Field rhs_F(const Field& u, const EquationParams& params, const DampingSpec& damping,
            const NonlinearConfig& cfg);

}  // namespace hnls
