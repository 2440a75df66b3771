#include "hnls/nonlinearity.hpp"

#include <cmath>
#include <stdexcept>

#include "hnls/fft.hpp"
#include "hnls/spectral.hpp"

namespace hnls {

namespace {
constexpr double kZeroGuard = 1e-300;
}

void NonlinearConfig::validate() const {
  if (delta < 0.0) throw std::invalid_argument("NonlinearConfig: delta must be >= 0");
  if (evaluation_mode == EvalMode::physical_p_form && delta != 0.0) {
    throw std::invalid_argument("NonlinearConfig: the P-form evaluates the unregularized |u|u "
                                "and requires delta == 0");
  }
}

double g_delta(double theta, double delta) {
  if (theta < 0.0) throw std::invalid_argument("g_delta: theta must be >= 0");
  if (delta < 0.0) throw std::invalid_argument("g_delta: delta must be >= 0");
  return std::sqrt(theta + delta);
}

Field abs_derivative(const Field& u, const Field& ux) {
  require_same_grid(u, ux, "abs_derivative");
  Field out = make_field(u.grid);
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double mod = std::abs(u.values[j]);
    if (mod < kZeroGuard) continue;
    const cplx prod = std::conj(u.values[j]) * ux.values[j];
    out.values[j] = prod.real() / mod;
  }
  return out;
}

cplx p_function(cplx u, cplx v) {
  const double mod = std::abs(u);
  if (mod < kZeroGuard) return {0.0, 0.0};
  return 3.0 * mod * v + u * u * std::conj(v) / mod;
}

double lipschitz_probe(const Field& v, const Field& vt, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("lipschitz_probe: delta must be positive");
  require_same_grid(v, vt, "lipschitz_probe");
  double worst = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double dv = std::abs(v.values[j] - vt.values[j]);
    if (dv < kZeroGuard) continue;
    const double dg = std::abs(g_delta(std::norm(v.values[j]), delta) -
                               g_delta(std::norm(vt.values[j]), delta));
    worst = std::max(worst, dg / dv);
  }
  return worst;
}

RhsEvaluator::RhsEvaluator(GridPtr grid, const EquationParams& params, const DampingSpec& damping,
                           const NonlinearConfig& cfg)
    : grid_(std::move(grid)), params_(params), cfg_(cfg) {
  params_.validate();
  cfg_.validate();
  if (cfg_.delta != params_.delta) {
    throw std::invalid_argument("RhsEvaluator: NonlinearConfig.delta differs from params.delta");
  }
  d_values_ = damping.values_on(*grid_);
}

Field RhsEvaluator::operator()(const Field& u) const {
  const double lambda = params_.lambda;
  const double beta = params_.beta;
  Field out = make_field(u.grid);

  if (cfg_.evaluation_mode == EvalMode::pseudospectral) {
    // w = g_delta(|u|^2) u, derivative spectral, optional 2/3 dealiasing of w
    Field w = make_field(u.grid);
    for (std::size_t j = 0; j < u.size(); ++j) {
      w.values[j] = g_delta(std::norm(u.values[j]), cfg_.delta) * u.values[j];
    }
    std::vector<cplx> spec = fft::forward(w.values);
    if (cfg_.dealias) dealias_two_thirds(spec);
    std::vector<cplx> dspec(spec.size());
    const std::size_t nyq = u.grid->n_points / 2;
    for (std::size_t k = 0; k < spec.size(); ++k) {
      const cplx ik{0.0, u.grid->wavenumbers[k]};
      dspec[k] = (k == nyq) ? cplx{0.0, 0.0} : ik * spec[k];
    }
    const std::vector<cplx> wd = fft::inverse(spec);
    const std::vector<cplx> wx = fft::inverse(dspec);
    for (std::size_t j = 0; j < u.size(); ++j) {
      out.values[j] = -lambda * wd[j] - cplx{0.0, beta} * wx[j] -
                      cplx{0.0, d_values_[j]} * u.values[j];
    }
    return out;
  }

  // physical P-form, delta == 0: (|u|u)_x = P(u, u_x)/2 pointwise
  const Field ux = spectral_derivative(u, 1);
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double mod = std::abs(u.values[j]);
    const cplx px = 0.5 * p_function(u.values[j], ux.values[j]);
    out.values[j] = -lambda * mod * u.values[j] - cplx{0.0, beta} * px -
                    cplx{0.0, d_values_[j]} * u.values[j];
  }
  return out;
}

Field rhs_F(const Field& u, const EquationParams& params, const DampingSpec& damping,
            const NonlinearConfig& cfg) {
  return RhsEvaluator(u.grid, params, damping, cfg)(u);
}

}  // namespace hnls
