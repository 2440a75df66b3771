#include <cmath>
#include <stdexcept>

#include "hnls/nonlinearity.hpp"
#include "hnls/oracle.hpp"
#include "hnls/spectral.hpp"

namespace hnls::oracle {

ResidualSeries pde_pointwise_residual(const Trajectory& traj, const EquationParams& params,
                                      const DampingSpec& damping) {
  if (traj.size() < 3) {
    throw std::invalid_argument("pde_pointwise_residual: need >= 3 snapshots");
  }
  const double dt = traj.uniform_spacing();
  const Grid& g = *traj.initial().grid;
  const std::vector<double> d_vals = damping.values_on(g);

  ResidualSeries out;
  out.name = "pde_pointwise_residual";
  for (std::size_t i = 1; i + 1 < traj.size(); ++i) {
    const Field& u = traj.states[i];
    const Field ux = spectral_derivative(u, 1);
    const Field uxx = spectral_derivative(u, 2);
    const Field uxxx = spectral_derivative(u, 3);

    double s = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
      const cplx ut =
          (traj.states[i + 1].values[j] - traj.states[i - 1].values[j]) / (2.0 * dt);
      const double mod = std::abs(u.values[j]);
      const cplx nlx = 0.5 * p_function(u.values[j], ux.values[j]);
      const cplx r = cplx{0.0, 1.0} * ut + params.a * uxx.values[j] +
                     cplx{0.0, params.b} * ux.values[j] + cplx{0.0, 1.0} * uxxx.values[j] +
                     params.lambda * mod * u.values[j] + cplx{0.0, params.beta} * nlx +
                     cplx{0.0, d_vals[j]} * u.values[j];
      s += std::norm(r);
    }
    out.times.push_back(traj.times[i]);
    out.lhs.push_back(std::sqrt(s * g.spacing));
    out.rhs.push_back(0.0);
    out.residuals.push_back(std::sqrt(s * g.spacing));
  }
  return out;
}

}  // namespace hnls::oracle
