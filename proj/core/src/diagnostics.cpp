#include "hnls/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hnls/nonlinearity.hpp"
#include "hnls/spectral.hpp"
#include "identity_terms.hpp"

namespace hnls::diagnostics {

namespace {

const std::vector<std::pair<Identity, std::string>>& identity_table() {
  static const std::vector<std::pair<Identity, std::string>> table = {
      {Identity::mass_2_15, "mass_2_15"},
      {Identity::weighted_2_17, "weighted_2_17"},
      {Identity::h1_2_24, "h1_2_24"},
      {Identity::momentum_2_26, "momentum_2_26"},
      {Identity::mass_balance_3_22, "mass_balance_3_22"},
      {Identity::h1_balance_3_27, "h1_balance_3_27"},
      {Identity::momentum_balance_3_29, "momentum_balance_3_29"},
      {Identity::cubic_balance_3_31, "cubic_balance_3_31"},
      {Identity::energy_3_32, "energy_3_32"},
      {Identity::weighted_smoothing_3_39, "weighted_smoothing_3_39"},
  };
  return table;
}

void lsq_fit(const std::vector<double>& xs, const std::vector<double>& ys, double& slope,
             double& intercept, double& r_squared) {
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  slope = (denom != 0.0) ? (n * sxy - sx * sy) / denom : 0.0;
  intercept = (sy - slope * sx) / n;
  double mean = sy / n, ss_res = 0, ss_tot = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double fit = intercept + slope * xs[i];
    ss_res += (ys[i] - fit) * (ys[i] - fit);
    ss_tot += (ys[i] - mean) * (ys[i] - mean);
  }
  r_squared = (ss_tot > 0.0) ? 1.0 - ss_res / ss_tot : 1.0;
}

}  // namespace

Identity identity_from_string(const std::string& name) {
  for (const auto& [id, s] : identity_table()) {
    if (s == name) return id;
  }
  std::string all;
  for (const auto& [id, s] : identity_table()) all += s + " ";
  throw std::invalid_argument("unknown identity '" + name + "'; valid names: " + all);
}

std::string to_string(Identity id) {
  for (const auto& [i, s] : identity_table()) {
    if (i == id) return s;
  }
  return "unknown";
}

const std::vector<std::string>& identity_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [id, s] : identity_table()) out.push_back(s);
    return out;
  }();
  return names;
}

bool identity_needs_weight(Identity id) {
  return id == Identity::weighted_2_17 || id == Identity::weighted_smoothing_3_39;
}

double mass(const Field& u) { return l2_norm_sq(u); }

double energy_bracket(const Field& u, const EquationParams& params) {
  if (params.beta == 0.0) {
    throw std::invalid_argument("energy_bracket: beta must be nonzero (the bracket divides by it)");
  }
  const Field ux = spectral_derivative(u, 1);
  const cplx momentum = terms::prod(u, ux);

  double scale = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    scale += std::abs(u.values[j]) * std::abs(ux.values[j]);
  }
  scale = std::max(1.0, scale * u.grid->spacing);
  if (std::abs(momentum.real()) > 1e-10 * scale) {
    throw std::runtime_error("energy_bracket: int u conj(u_x) has a real part beyond 1e-10");
  }

  const double coef = params.lambda / params.beta - params.a;
  // i * (i Im momentum) = -Im momentum
  return l2_norm_sq(ux) - coef * momentum.imag() - (2.0 * params.beta / 3.0) * terms::cube_abs(u);
}

ResidualSeries identity_residuals(const Trajectory& traj, Identity id,
                                  const std::optional<WeightSpec>& weight) {
  if (traj.size() < 4) throw std::invalid_argument("identity_residuals: need >= 4 snapshots");
  const double dt = traj.uniform_spacing();
  const std::size_t n = traj.size();
  const Grid& g = *traj.initial().grid;

  if (identity_needs_weight(id) && !weight) {
    throw std::invalid_argument("identity " + to_string(id) + " requires a weight");
  }
  if (!identity_needs_weight(id) && weight) {
    throw std::invalid_argument("identity " + to_string(id) + " does not take a weight");
  }

  std::vector<double> psi_v, psi_1, psi_3, psi_sum;
  if (weight) {
    const Weight w(*weight);
    psi_v.resize(g.n_points);
    psi_1.resize(g.n_points);
    psi_3.resize(g.n_points);
    psi_sum.resize(g.n_points);
    for (std::size_t j = 0; j < g.n_points; ++j) {
      psi_v[j] = w.value(g.nodes[j]);
      psi_1[j] = w.derivative(g.nodes[j], 1);
      psi_3[j] = w.derivative(g.nodes[j], 3);
      psi_sum[j] = psi_v[j] + psi_1[j] + std::abs(w.derivative(g.nodes[j], 2)) +
                   std::abs(psi_3[j]);
    }
  }

  const RhsEvaluator rhs(traj.initial().grid, traj.params, traj.damping, traj.nonlinear);
  const std::vector<double> d_vals = traj.damping.values_on(g);
  const std::vector<double> dp_vals = traj.damping.derivative_on(g);
  const double a = traj.params.a;
  const double b = traj.params.b;
  const double lambda = traj.params.lambda;
  const double beta = traj.params.beta;

  if (id == Identity::energy_3_32 && beta == 0.0) {
    throw std::invalid_argument("identity energy_3_32 requires beta != 0");
  }

  // per-snapshot primary quantity (time-differentiated), extra lhs terms and rhs
  std::vector<double> quantity(n, 0.0), extra(n, 0.0), rhs_t(n, 0.0);
  bool momentum_sign_flip = false;

  for (std::size_t i = 0; i < n; ++i) {
    const Field& u = traj.states[i];
    const Field ux = spectral_derivative(u, 1);

    switch (id) {
      case Identity::mass_2_15: {
        const Field f = rhs(u);
        quantity[i] = l2_norm_sq(u);
        rhs_t[i] = 2.0 * terms::im_prod(f, u);
        break;
      }
      case Identity::weighted_2_17: {
        const Field f = rhs(u);
        quantity[i] = terms::abs2_w(u, psi_v);
        extra[i] = 3.0 * terms::abs2_w(ux, psi_1);
        rhs_t[i] = 2.0 * a * terms::prod_w(ux, u, psi_1).imag() + terms::abs2_w(u, psi_3) +
                   b * terms::abs2_w(u, psi_1) + 2.0 * terms::prod_w(f, u, psi_v).imag();
        break;
      }
      case Identity::h1_2_24: {
        const Field f = rhs(u);
        const Field fx = spectral_derivative(f, 1);
        quantity[i] = l2_norm_sq(ux);
        rhs_t[i] = 2.0 * terms::im_prod(fx, ux);
        break;
      }
      case Identity::momentum_2_26: {
        const Field f = rhs(u);
        quantity[i] = terms::prod(u, ux).imag();
        momentum_sign_flip = true;
        rhs_t[i] = 2.0 * terms::re_prod(f, ux);
        break;
      }
      case Identity::mass_balance_3_22: {
        quantity[i] = l2_norm_sq(u);  // cumulative handled below
        extra[i] = 2.0 * terms::abs2_w(u, d_vals);
        break;
      }
      case Identity::h1_balance_3_27: {
        const Field au = abs_derivative(u, ux);
        const Field uxx2 = [&] {
          Field mod = make_field(u.grid);
          for (std::size_t j = 0; j < u.size(); ++j) mod.values[j] = std::norm(u.values[j]);
          return spectral_derivative(mod, 2);
        }();
        quantity[i] = l2_norm_sq(ux);
        double t_lambda = 0.0, t_cubic = 0.0, t_mixed = 0.0;
        for (std::size_t j = 0; j < u.size(); ++j) {
          const double ad = au.values[j].real();
          t_lambda += ad * (u.values[j] * std::conj(ux.values[j])).imag();
          t_cubic += ad * std::norm(ux.values[j]);
          t_mixed += ad * uxx2.values[j].real();
        }
        const double dx = g.spacing;
        rhs_t[i] = -(2.0 * lambda * t_lambda * dx + 3.0 * beta * t_cubic * dx -
                     beta * t_mixed * dx + 2.0 * terms::abs2_w(ux, d_vals) +
                     2.0 * [&] {
                       double s = 0.0;
                       for (std::size_t j = 0; j < u.size(); ++j) {
                         s += dp_vals[j] * (u.values[j] * std::conj(ux.values[j])).real();
                       }
                       return s * dx;
                     }());
        break;
      }
      case Identity::momentum_balance_3_29: {
        const Field au = abs_derivative(u, ux);
        quantity[i] = terms::prod(u, ux).imag();
        momentum_sign_flip = true;
        double t_beta = 0.0, t_d = 0.0;
        for (std::size_t j = 0; j < u.size(); ++j) {
          t_beta += au.values[j].real() * (u.values[j] * std::conj(ux.values[j])).imag();
          t_d += d_vals[j] * (u.values[j] * std::conj(ux.values[j])).imag();
        }
        rhs_t[i] = 2.0 * beta * t_beta * g.spacing + 2.0 * t_d * g.spacing;
        break;
      }
      case Identity::cubic_balance_3_31: {
        const Field au = abs_derivative(u, ux);
        Field mod = make_field(u.grid);
        for (std::size_t j = 0; j < u.size(); ++j) mod.values[j] = std::norm(u.values[j]);
        const Field mod_xx = spectral_derivative(mod, 2);
        quantity[i] = (2.0 / 3.0) * terms::cube_abs(u);
        double t_a = 0.0, t_cubic = 0.0, t_mixed = 0.0;
        for (std::size_t j = 0; j < u.size(); ++j) {
          const double ad = au.values[j].real();
          t_a += ad * (u.values[j] * std::conj(ux.values[j])).imag();
          t_cubic += ad * std::norm(ux.values[j]);
          t_mixed += ad * mod_xx.values[j].real();
        }
        const double dx = g.spacing;
        rhs_t[i] = -(2.0 * a * t_a * dx + 3.0 * t_cubic * dx - t_mixed * dx +
                     2.0 * terms::cube_abs_w(u, d_vals));
        break;
      }
      case Identity::energy_3_32: {
        quantity[i] = energy_bracket(u, traj.params);
        double t_dp = 0.0, t_dmom = 0.0;
        for (std::size_t j = 0; j < u.size(); ++j) {
          t_dp += dp_vals[j] * (u.values[j] * std::conj(ux.values[j])).real();
          t_dmom += d_vals[j] * (u.values[j] * std::conj(ux.values[j])).imag();
        }
        const double dx = g.spacing;
        rhs_t[i] = -(2.0 * terms::abs2_w(ux, d_vals) + 2.0 * t_dp * dx -
                     2.0 * (lambda / beta - a) * t_dmom * dx -
                     2.0 * beta * terms::cube_abs_w(u, d_vals));
        break;
      }
      case Identity::weighted_smoothing_3_39: {
        quantity[i] = terms::abs2_w(u, psi_v);
        extra[i] = terms::abs2_w(ux, psi_1);
        rhs_t[i] = terms::abs2_w(u, psi_sum);
        break;
      }
    }
  }

  ResidualSeries out;
  out.name = to_string(id);

  if (id == Identity::mass_balance_3_22) {
    // integrated form: |u(t)|^2 + 2 int_0^t int d |u|^2 - |u_0|^2
    const std::vector<double> cum = terms::cumulative_integral(extra, dt);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      out.times.push_back(traj.times[i]);
      out.lhs.push_back(quantity[i] + cum[i]);
      out.rhs.push_back(quantity[0]);
      out.residuals.push_back(quantity[i] + cum[i] - quantity[0]);
    }
    return out;
  }

  const std::vector<double> dq = terms::centered_derivative(quantity, dt);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double deriv = momentum_sign_flip ? -dq[i] : dq[i];
    const double lhs = deriv + extra[i];
    out.times.push_back(traj.times[i]);
    out.lhs.push_back(lhs);
    out.rhs.push_back(rhs_t[i]);
    out.residuals.push_back(lhs - rhs_t[i]);
  }
  return out;
}

double local_smoothing_sigma(const Trajectory& traj) {
  const Grid& g = *traj.initial().grid;
  const std::size_t n = traj.size();
  if (n < 2) return 0.0;

  // time-trapezoid of |u_x|^2 per node
  std::vector<double> s(g.n_points, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const Field ux = spectral_derivative(traj.states[i], 1);
    const double w =
        (i == 0) ? 0.5 * (traj.times[1] - traj.times[0])
        : (i + 1 == n)
            ? 0.5 * (traj.times[n - 1] - traj.times[n - 2])
            : 0.5 * (traj.times[i + 1] - traj.times[i - 1]);
    for (std::size_t j = 0; j < g.n_points; ++j) s[j] += w * std::norm(ux.values[j]);
  }

  // windows of length 1 starting at every node (periodic wrap)
  const std::size_t m = std::max<std::size_t>(1, static_cast<std::size_t>(
                                                     std::llround(1.0 / g.spacing)));
  double window = 0.0;
  for (std::size_t j = 0; j < std::min(m, g.n_points); ++j) window += s[j];
  double best = window;
  for (std::size_t j = 0; j < g.n_points; ++j) {
    window -= s[j];
    window += s[(j + m) % g.n_points];
    best = std::max(best, window);
  }
  return best * g.spacing;
}

DecayReport decay_fit(const Trajectory& traj, const DampingSpec& damping) {
  DecayReport report;
  const std::size_t n = traj.size();
  std::vector<double> masses(n);
  for (std::size_t i = 0; i < n; ++i) masses[i] = l2_norm_sq(traj.states[i]);

  report.monotone = true;
  const double tol = 1e-10 * std::max(masses[0], 1e-300);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (masses[i + 1] > masses[i] + tol) {
      report.monotone = false;
      break;
    }
  }

  std::vector<double> ts, logm;
  for (std::size_t i = n / 2; i < n; ++i) {
    if (masses[i] > 0.0) {
      ts.push_back(traj.times[i]);
      logm.push_back(std::log(masses[i]));
    }
  }
  if (ts.size() >= 3) {
    double slope = 0.0, icpt = 0.0, r2 = 0.0;
    lsq_fit(ts, logm, slope, icpt, r2);
    report.gamma_hat = -slope;
    report.r_squared = r2;
  }

  if (damping.is_constant_everywhere()) {
    report.gamma_formula = 2.0 * (damping.is_zero() ? 0.0 : damping.d0);
  }
  return report;
}

StabilityGapSeries stability_gap(const Trajectory& u, const Trajectory& v, double alpha,
                                 double eps) {
  if (u.size() != v.size()) {
    throw std::invalid_argument("stability_gap: trajectories have different snapshot counts");
  }
  const Weight w(WeightSpec{alpha, eps, std::nullopt});
  const Grid& g = *u.initial().grid;
  const std::vector<double> wv = w.values_on(g);

  StabilityGapSeries out;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (std::abs(u.times[i] - v.times[i]) > 1e-12 * std::max(1.0, u.times[i])) {
      throw std::invalid_argument("stability_gap: snapshot times differ");
    }
    double s = 0.0;
    for (std::size_t j = 0; j < g.n_points; ++j) {
      s += std::norm(u.states[i].values[j] - v.states[i].values[j]) * wv[j];
    }
    out.times.push_back(u.times[i]);
    out.gaps.push_back(s * g.spacing);
  }
  const double g0 = out.gaps.front();
  for (double gi : out.gaps) out.ratios.push_back(g0 > 0.0 ? gi / g0 : 0.0);
  return out;
}

}  // namespace hnls::diagnostics
