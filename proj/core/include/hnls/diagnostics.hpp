#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hnls/series.hpp"
#include "hnls/trajectory.hpp"
#include "hnls/weights.hpp"

namespace hnls::diagnostics {

enum class Identity {
  mass_2_15,
  weighted_2_17,
  h1_2_24,
  momentum_2_26,
  mass_balance_3_22,
  h1_balance_3_27,
  momentum_balance_3_29,
  cubic_balance_3_31,
  energy_3_32,
  weighted_smoothing_3_39,
};

Identity identity_from_string(const std::string& name);
std::string to_string(Identity id);
const std::vector<std::string>& identity_names();
bool identity_needs_weight(Identity id);

/// L2 mass, the conserved quantity of the undamped flow.
double mass(const Field& u);

/// int |u_x|^2 dx + i (lambda/beta - a) int u conj(u_x) dx
/// - (2 beta/3) int |u|^3 dx. Requires beta != 0; int u conj(u_x) must be
/// purely imaginary on a periodic grid, which is asserted to 1e-10.
double energy_bracket(const Field& u, const EquationParams& params);

/// Residual time series of the named identity along a nonlinear trajectory
/// (the forcing is F(u) rebuilt from the trajectory echoes). Time derivatives
/// use centered differences; endpoint snapshots are not reported.
/// weighted_smoothing_3_39 reports lhs - rhs with the paper's non-constructive
/// constant set to 1; consumers check sup lhs/rhs instead of a sign.
ResidualSeries identity_residuals(const Trajectory& traj, Identity id,
                                  const std::optional<WeightSpec>& weight = std::nullopt);

/// sigma(u;T): sup over unit windows of the space-time integral of |u_x|^2.
double local_smoothing_sigma(const Trajectory& traj);

struct DecayReport {
  double gamma_hat = 0.0;
  double r_squared = 0.0;
  bool monotone = false;
  std::optional<double> gamma_formula;  // 2*d0 for constant damping
};

/// Least-squares decay rate of log mass on the tail half of the run.
DecayReport decay_fit(const Trajectory& traj, const DampingSpec& damping);

struct StabilityGapSeries {
  std::vector<double> times;
  std::vector<double> gaps;    // int |u - v|^2 rho_{alpha,eps} dx
  std::vector<double> ratios;  // gaps / gaps[0] (zero when the initial gap is zero)
};

StabilityGapSeries stability_gap(const Trajectory& u, const Trajectory& v, double alpha,
                                 double eps);

}  // namespace hnls::diagnostics
