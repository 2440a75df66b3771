#include "hnls/linear.hpp"

#include <cmath>
#include <stdexcept>

#include "hnls/fft.hpp"
#include "hnls/kernel.hpp"
#include "hnls/spectral.hpp"
#include "identity_terms.hpp"

namespace hnls {

LinearMultiplier LinearMultiplier::make(const Grid& grid, double t, double a, double b) {
  LinearMultiplier m;
  m.phases.resize(grid.n_points);
  for (std::size_t k = 0; k < grid.n_points; ++k) {
    const double xi = grid.wavenumbers[k];
    const double theta = (xi * xi * xi - a * xi * xi - b * xi) * t;
    m.phases[k] = cplx{std::cos(theta), std::sin(theta)};
  }
  return m;
}

Field propagate(const Field& u0, double t, double a, double b) {
  if (!std::isfinite(t)) throw std::invalid_argument("propagate: t must be finite");
  const LinearMultiplier m = LinearMultiplier::make(*u0.grid, t, a, b);
  return apply_multiplier(u0, m.phases);
}

Field propagate_via_kernel(const Field& u0, double t, double a, double b, int upsample) {
  if (!(t > 0.0)) throw std::invalid_argument("propagate_via_kernel: t must be positive");
  if (upsample < 1 || upsample > 64) {
    throw std::invalid_argument("propagate_via_kernel: upsample factor out of range");
  }
  const double peak = max_abs(u0);
  const double edge = std::max(std::abs(u0.values.front()), std::abs(u0.values.back()));
  if (peak > 0.0 && edge > 1e-6 * peak) {
    throw std::invalid_argument("propagate_via_kernel: u0 must be decayed at the box boundary");
  }

  const Grid& g = *u0.grid;
  const std::size_t n = g.n_points;
  const std::size_t nf = n * static_cast<std::size_t>(upsample);

  // spectral upsampling: zero-pad the spectrum, split the Nyquist weight
  std::vector<cplx> spec = fft::forward(u0.values);
  std::vector<cplx> big(nf, cplx{0.0, 0.0});
  for (std::size_t k = 0; k < n / 2; ++k) big[k] = spec[k];
  for (std::size_t k = n / 2 + 1; k < n; ++k) big[nf - n + k] = spec[k];
  big[n / 2] = 0.5 * spec[n / 2];
  big[nf - n / 2] += 0.5 * spec[n / 2];
  std::vector<cplx> fine = fft::inverse(big);
  const double rescale = static_cast<double>(nf) / static_cast<double>(n);
  for (cplx& v : fine) v *= rescale;

  // G on the lattice of differences x_j - y_k = (j*upsample - k) * dxf
  const double dxf = 2.0 * g.half_width / static_cast<double>(nf);
  const std::ptrdiff_t m_lo = -static_cast<std::ptrdiff_t>(nf) + 1;
  const std::ptrdiff_t m_hi = static_cast<std::ptrdiff_t>((n - 1) * upsample);
  std::vector<double> diffs(static_cast<std::size_t>(m_hi - m_lo + 1));
  for (std::ptrdiff_t m = m_lo; m <= m_hi; ++m) {
    diffs[static_cast<std::size_t>(m - m_lo)] = static_cast<double>(m) * dxf;
  }
  const auto tab = kernel::green_batch(t, diffs, a, b, 0);

  Field out = make_field(u0.grid);
  for (std::size_t j = 0; j < n; ++j) {
    cplx s{0.0, 0.0};
    const std::ptrdiff_t base = static_cast<std::ptrdiff_t>(j * upsample) - m_lo;
    for (std::size_t k = 0; k < nf; ++k) {
      s += tab[static_cast<std::size_t>(base - static_cast<std::ptrdiff_t>(k))].value * fine[k];
    }
    out.values[j] = s * dxf;
  }
  return out;
}

Trajectory duhamel_solve(const Field& u0, const ForcingProvider& forcing, double t_final,
                         double dt, double a, double b) {
  if (!(dt > 0.0) || !(t_final > 0.0)) {
    throw std::invalid_argument("duhamel_solve: dt and t_final must be positive");
  }
  const double steps_real = t_final / dt;
  const std::size_t n_steps = static_cast<std::size_t>(std::llround(steps_real));
  if (n_steps == 0 || std::abs(steps_real - static_cast<double>(n_steps)) > 1e-9 * steps_real) {
    throw std::invalid_argument("duhamel_solve: dt must divide t_final");
  }

  const Grid& g = *u0.grid;
  const LinearMultiplier e_full = LinearMultiplier::make(g, dt, a, b);
  const LinearMultiplier e_half = LinearMultiplier::make(g, 0.5 * dt, a, b);

  Trajectory traj;
  traj.params = EquationParams{a, b, 0.0, 0.0, 0.0};
  traj.scheme = "duhamel";
  traj.dt = dt;
  traj.times.reserve(n_steps + 1);
  traj.states.reserve(n_steps + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(u0);

  std::vector<cplx> spec = fft::forward(u0.values);
  const cplx minus_i{0.0, -1.0};
  for (std::size_t s = 0; s < n_steps; ++s) {
    const double t = static_cast<double>(s) * dt;
    const std::vector<cplx> f0 = fft::forward(forcing(t).values);
    const std::vector<cplx> f1 = fft::forward(forcing(t + 0.5 * dt).values);
    const std::vector<cplx> f2 = fft::forward(forcing(t + dt).values);
    for (std::size_t k = 0; k < spec.size(); ++k) {
      const cplx duhamel =
          e_full.phases[k] * f0[k] + 4.0 * e_half.phases[k] * f1[k] + f2[k];
      spec[k] = e_full.phases[k] * spec[k] + minus_i * (dt / 6.0) * duhamel;
    }
    Field state;
    state.grid = u0.grid;
    state.values = fft::inverse(spec);
    traj.times.push_back(t + dt);
    traj.states.push_back(std::move(state));
  }
  return traj;
}

ResidualSeries identity_residual_linear(const Trajectory& traj, const ForcingProvider& forcing,
                                        LinearIdentity which,
                                        const std::optional<WeightSpec>& psi) {
  if (traj.size() < 3) {
    throw std::invalid_argument("identity_residual_linear: need at least 3 snapshots");
  }
  const double dt = traj.uniform_spacing();
  const std::size_t n = traj.size();
  const Grid& g = *traj.initial().grid;

  std::vector<double> psi_v, psi_1, psi_3;
  if (which == LinearIdentity::weighted_2_17) {
    if (!psi) throw std::invalid_argument("identity weighted_2_17 requires a weight");
    Weight w(*psi);
    psi_v.resize(g.n_points);
    psi_1.resize(g.n_points);
    psi_3.resize(g.n_points);
    for (std::size_t j = 0; j < g.n_points; ++j) {
      psi_v[j] = w.value(g.nodes[j]);
      psi_1[j] = w.derivative(g.nodes[j], 1);
      psi_3[j] = w.derivative(g.nodes[j], 3);
    }
  }

  ResidualSeries out;
  std::vector<double> quantity(n, 0.0);
  std::vector<double> rhs_all(n, 0.0);
  std::vector<double> extra_lhs(n, 0.0);

  const double a = traj.params.a;
  const double b = traj.params.b;

  for (std::size_t i = 0; i < n; ++i) {
    const Field& u = traj.states[i];
    const Field f = forcing(traj.times[i]);
    switch (which) {
      case LinearIdentity::mass_2_15: {
        out.name = "mass_2_15";
        quantity[i] = l2_norm_sq(u);
        rhs_all[i] = 2.0 * terms::im_prod(f, u);
        break;
      }
      case LinearIdentity::weighted_2_17: {
        out.name = "weighted_2_17";
        const Field ux = spectral_derivative(u, 1);
        quantity[i] = terms::abs2_w(u, psi_v);
        extra_lhs[i] = 3.0 * terms::abs2_w(ux, psi_1);
        rhs_all[i] = 2.0 * a * terms::prod_w(ux, u, psi_1).imag() + terms::abs2_w(u, psi_3) +
                     b * terms::abs2_w(u, psi_1) + 2.0 * terms::prod_w(f, u, psi_v).imag();
        break;
      }
      case LinearIdentity::h1_2_24: {
        out.name = "h1_2_24";
        const Field ux = spectral_derivative(u, 1);
        const Field fx = spectral_derivative(f, 1);
        quantity[i] = l2_norm_sq(ux);
        rhs_all[i] = 2.0 * terms::im_prod(fx, ux);
        break;
      }
      case LinearIdentity::momentum_2_26: {
        out.name = "momentum_2_26";
        const Field ux = spectral_derivative(u, 1);
        // i d/dt int u conj(u_x) dx is real; track the imaginary part of the
        // momentum and flip sign under multiplication by i
        quantity[i] = terms::prod(u, ux).imag();
        rhs_all[i] = 2.0 * terms::re_prod(f, ux);
        break;
      }
    }
  }

  std::vector<double> dq = terms::centered_derivative(quantity, dt);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    double lhs = dq[i] + extra_lhs[i];
    if (which == LinearIdentity::momentum_2_26) lhs = -dq[i];  // Re(i dP/dt) = -d Im(P)/dt
    out.times.push_back(traj.times[i]);
    out.lhs.push_back(lhs);
    out.rhs.push_back(rhs_all[i]);
    out.residuals.push_back(lhs - rhs_all[i]);
  }
  return out;
}

}  // namespace hnls
