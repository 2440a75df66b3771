#include "hnls/solver.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "hnls/fft.hpp"
#include "hnls/linear.hpp"
#include "hnls/spectral.hpp"

namespace hnls {

Scheme scheme_from_string(const std::string& name) {
  if (name == "strang_split") return Scheme::strang_split;
  if (name == "if_rk4") return Scheme::if_rk4;
  if (name == "picard_duhamel") return Scheme::picard_duhamel;
  throw std::invalid_argument("unknown scheme: " + name);
}

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::strang_split: return "strang_split";
    case Scheme::if_rk4: return "if_rk4";
    case Scheme::picard_duhamel: return "picard_duhamel";
  }
  return "unknown";
}

void SolveConfig::validate() const {
  if (!(t_final > 0.0)) throw std::invalid_argument("SolveConfig: t_final must be positive");
  if (!(dt > 0.0)) throw std::invalid_argument("SolveConfig: dt must be positive");
  if (!(dt < t_final)) throw std::invalid_argument("SolveConfig: dt must be < t_final");
  if (snapshot_stride < 1) throw std::invalid_argument("SolveConfig: snapshot_stride >= 1");
  if (scheme == Scheme::picard_duhamel) {
    if (!(picard_tol > 0.0)) throw std::invalid_argument("SolveConfig: picard_tol > 0 required");
    if (picard_max_iters < 1) {
      throw std::invalid_argument("SolveConfig: picard_max_iters >= 1 required");
    }
    if (t_final > 0.2) {
      throw std::invalid_argument(
          "SolveConfig: the Picard mode is restricted to t_final <= 0.2; shrink the interval "
          "as in the local contraction construction");
    }
  }
  nonlinear.validate();
}

NumericalAbort::NumericalAbort(std::size_t step_index)
    : std::runtime_error("solver: non-finite state at step " + std::to_string(step_index)),
      step(step_index) {}

double Trajectory::uniform_spacing() const {
  if (times.size() < 2) throw std::logic_error("Trajectory: too few snapshots");
  const double dt0 = times[1] - times[0];
  for (std::size_t i = 1; i + 1 < times.size(); ++i) {
    if (std::abs(times[i + 1] - times[i] - dt0) > 1e-12 * std::max(1.0, std::abs(dt0))) {
      throw std::logic_error("Trajectory: snapshots are not uniformly spaced");
    }
  }
  return dt0;
}

namespace {

// RK4 on u_t = -i F(u) (nonlinearity plus damping only)
Field nonlinear_substep_rk4(const Field& u, double dt, const RhsEvaluator& rhs) {
  const cplx mi{0.0, -1.0};
  Field k1 = rhs(u);
  Field s2 = u;
  axpy(s2, mi * (0.5 * dt), k1);
  Field k2 = rhs(s2);
  Field s3 = u;
  axpy(s3, mi * (0.5 * dt), k2);
  Field k3 = rhs(s3);
  Field s4 = u;
  axpy(s4, mi * dt, k3);
  Field k4 = rhs(s4);

  Field out = u;
  const cplx w = mi * (dt / 6.0);
  for (std::size_t j = 0; j < out.size(); ++j) {
    out.values[j] += w * (k1.values[j] + 2.0 * k2.values[j] + 2.0 * k3.values[j] + k4.values[j]);
  }
  return out;
}

struct StrangStepper {
  LinearMultiplier half;
  RhsEvaluator rhs;

  StrangStepper(GridPtr g, double dt, const EquationParams& p, const DampingSpec& d,
                const NonlinearConfig& cfg)
      : half(LinearMultiplier::make(*g, 0.5 * dt, p.a, p.b)), rhs(std::move(g), p, d, cfg) {}

  Field step(const Field& u, double dt) const {
    Field v = apply_multiplier(u, half.phases);
    v = nonlinear_substep_rk4(v, dt, rhs);
    return apply_multiplier(v, half.phases);
  }
};

struct IfRk4Stepper {
  LinearMultiplier e_full;
  LinearMultiplier e_half;
  RhsEvaluator rhs;
  GridPtr grid;
  double dt;

  IfRk4Stepper(GridPtr g, double step_dt, const EquationParams& p, const DampingSpec& d,
               const NonlinearConfig& cfg)
      : e_full(LinearMultiplier::make(*g, step_dt, p.a, p.b)),
        e_half(LinearMultiplier::make(*g, 0.5 * step_dt, p.a, p.b)),
        rhs(g, p, d, cfg),
        grid(std::move(g)),
        dt(step_dt) {}

  std::vector<cplx> nhat(const std::vector<cplx>& spec) const {
    Field u;
    u.grid = grid;
    u.values = fft::inverse(spec);
    Field f = rhs(u);
    const cplx mi{0.0, -1.0};
    for (cplx& v : f.values) v *= mi;
    return fft::forward(f.values);
  }

  void step(std::vector<cplx>& spec) const {
    const std::size_t n = spec.size();
    std::vector<cplx> k1 = nhat(spec);
    std::vector<cplx> tmp(n);

    for (std::size_t k = 0; k < n; ++k) {
      tmp[k] = e_half.phases[k] * (spec[k] + 0.5 * dt * k1[k]);
    }
    std::vector<cplx> k2 = nhat(tmp);

    for (std::size_t k = 0; k < n; ++k) {
      tmp[k] = e_half.phases[k] * spec[k] + 0.5 * dt * k2[k];
    }
    std::vector<cplx> k3 = nhat(tmp);

    for (std::size_t k = 0; k < n; ++k) {
      tmp[k] = e_full.phases[k] * spec[k] + dt * e_half.phases[k] * k3[k];
    }
    std::vector<cplx> k4 = nhat(tmp);

    for (std::size_t k = 0; k < n; ++k) {
      spec[k] = e_full.phases[k] * spec[k] +
                dt / 6.0 *
                    (e_full.phases[k] * k1[k] + 2.0 * e_half.phases[k] * (k2[k] + k3[k]) + k4[k]);
    }
  }
};

void check_initial_boundary(const Field& u0) {
  const double peak = max_abs(u0);
  if (peak == 0.0) return;
  const double edge = std::max(std::abs(u0.values.front()), std::abs(u0.values.back()));
  if (edge > 1e-8 * peak) {
    throw std::invalid_argument(
        "solve: |u0| at the box edges exceeds 1e-8 of its max; enlarge the domain so the "
        "periodic surrogate stays faithful");
  }
}

}  // namespace

Field step_strang(const Field& u, double dt, const EquationParams& params,
                  const DampingSpec& damping, const NonlinearConfig& cfg) {
  StrangStepper stepper(u.grid, dt, params, damping, cfg);
  return stepper.step(u, dt);
}

Trajectory solve(const Field& u0, const EquationParams& params, const DampingSpec& damping,
                 const SolveConfig& cfg) {
  cfg.validate();
  params.validate();
  damping.validate(*u0.grid);
  check_initial_boundary(u0);

  if (cfg.scheme == Scheme::picard_duhamel) return picard_solve(u0, params, damping, cfg).first;

  const double steps_real = cfg.t_final / cfg.dt;
  const std::size_t n_steps = static_cast<std::size_t>(std::llround(steps_real));
  if (n_steps == 0 || std::abs(steps_real - static_cast<double>(n_steps)) > 1e-9 * steps_real) {
    throw std::invalid_argument("solve: dt must divide t_final");
  }

  Trajectory traj;
  traj.params = params;
  traj.damping = damping;
  traj.nonlinear = cfg.nonlinear;
  traj.scheme = to_string(cfg.scheme);
  traj.dt = cfg.dt;
  traj.times.push_back(0.0);
  traj.states.push_back(u0);

  std::optional<StrangStepper> strang;
  std::optional<IfRk4Stepper> ifrk;
  if (cfg.scheme == Scheme::strang_split) {
    strang.emplace(u0.grid, cfg.dt, params, damping, cfg.nonlinear);
  } else {
    ifrk.emplace(u0.grid, cfg.dt, params, damping, cfg.nonlinear);
  }

  Field u = u0;
  std::vector<cplx> spec;
  if (cfg.scheme == Scheme::if_rk4) spec = fft::forward(u0.values);

  for (std::size_t s = 1; s <= n_steps; ++s) {
    if (cfg.scheme == Scheme::strang_split) {
      u = strang->step(u, cfg.dt);
    } else {
      ifrk->step(spec);
      u.grid = u0.grid;
      u.values = fft::inverse(spec);
    }
    if (!all_finite(u)) throw NumericalAbort(s);

    const double peak = max_abs(u);
    if (peak > 0.0) {
      const double edge = std::max(std::abs(u.values.front()), std::abs(u.values.back()));
      traj.max_edge_ratio = std::max(traj.max_edge_ratio, edge / peak);
      if (edge > 1e-6 * peak) traj.boundary_warning = true;
    }

    if (s % cfg.snapshot_stride == 0 || s == n_steps) {
      traj.times.push_back(static_cast<double>(s) * cfg.dt);
      traj.states.push_back(u);
    }
  }
  return traj;
}

std::pair<Trajectory, PicardReport> picard_solve(const Field& u0, const EquationParams& params,
                                                 const DampingSpec& damping,
                                                 const SolveConfig& cfg) {
  SolveConfig pc = cfg;
  pc.scheme = Scheme::picard_duhamel;
  pc.validate();
  params.validate();
  damping.validate(*u0.grid);
  check_initial_boundary(u0);

  const double steps_real = pc.t_final / pc.dt;
  const std::size_t n_steps = static_cast<std::size_t>(std::llround(steps_real));
  if (n_steps == 0 || std::abs(steps_real - static_cast<double>(n_steps)) > 1e-9 * steps_real) {
    throw std::invalid_argument("picard_solve: dt must divide t_final");
  }

  const RhsEvaluator rhs(u0.grid, params, damping, pc.nonlinear);

  // iterate 0: the free linear flow
  Trajectory current;
  current.times.resize(n_steps + 1);
  current.states.reserve(n_steps + 1);
  for (std::size_t i = 0; i <= n_steps; ++i) {
    current.times[i] = static_cast<double>(i) * pc.dt;
    current.states.push_back(propagate(u0, current.times[i], params.a, params.b));
  }

  // cubic Lagrange interpolation of a trajectory at arbitrary tau
  auto interpolate = [&](const Trajectory& traj, double tau) -> Field {
    const double pos = tau / pc.dt;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(traj.size());
    std::ptrdiff_t i0 = static_cast<std::ptrdiff_t>(std::floor(pos)) - 1;
    i0 = std::clamp<std::ptrdiff_t>(i0, 0, n - 4);
    if (n < 4) i0 = 0;
    const std::size_t m = std::min<std::size_t>(4, traj.size());
    Field out = make_field(u0.grid);
    for (std::size_t p = 0; p < m; ++p) {
      double w = 1.0;
      const double tp = traj.times[i0 + p];
      for (std::size_t q = 0; q < m; ++q) {
        if (q == p) continue;
        const double tq = traj.times[i0 + q];
        w *= (tau - tq) / (tp - tq);
      }
      axpy(out, w, traj.states[i0 + p]);
    }
    return out;
  };

  PicardReport report;
  double prev_gap = -1.0;
  int stall = 0;
  const double scale = std::max(1.0, std::sqrt(l2_norm_sq(u0)));

  for (int it = 0; it < pc.picard_max_iters; ++it) {
    ForcingProvider forcing = [&](double tau) { return rhs(interpolate(current, tau)); };
    Trajectory next = duhamel_solve(u0, forcing, pc.t_final, pc.dt, params.a, params.b);

    double gap = 0.0;
    for (std::size_t i = 0; i <= n_steps; ++i) {
      gap = std::max(gap, l2_distance(next.states[i], current.states[i]));
    }
    report.gaps.push_back(gap);
    if (prev_gap > 0.0) {
      const double ratio = gap / prev_gap;
      report.contraction_ratios.push_back(ratio);
      stall = (ratio >= 1.0) ? stall + 1 : 0;
      if (stall >= 3) {
        throw PicardNonContraction(
            "picard_solve: no contraction for 3 consecutive iterations; reduce t_final "
            "(the fixed-point interval shrinks with delta)");
      }
    }
    current = std::move(next);
    report.iterations = it + 1;
    if (gap < pc.picard_tol * scale) {
      report.converged = true;
      break;
    }
    prev_gap = gap;
  }

  current.params = params;
  current.damping = damping;
  current.nonlinear = pc.nonlinear;
  current.scheme = to_string(Scheme::picard_duhamel);
  current.dt = pc.dt;

  if (pc.snapshot_stride > 1) {
    Trajectory strided;
    strided.params = current.params;
    strided.damping = current.damping;
    strided.nonlinear = current.nonlinear;
    strided.scheme = current.scheme;
    strided.dt = current.dt;
    for (std::size_t i = 0; i < current.size(); ++i) {
      if (i % pc.snapshot_stride == 0 || i + 1 == current.size()) {
        strided.times.push_back(current.times[i]);
        strided.states.push_back(current.states[i]);
      }
    }
    current = std::move(strided);
  }
  return {std::move(current), std::move(report)};
}

DeltaContinuationReport delta_continuation(const Field& u0, const EquationParams& params,
                                           const DampingSpec& damping, const SolveConfig& cfg,
                                           const std::vector<double>& deltas) {
  if (deltas.empty()) throw std::invalid_argument("delta_continuation: empty delta list");
  for (std::size_t i = 0; i + 1 < deltas.size(); ++i) {
    if (!(deltas[i] > deltas[i + 1]) && deltas[i] != deltas[i + 1]) {
      throw std::invalid_argument("delta_continuation: deltas must be non-increasing");
    }
  }
  if (deltas.back() < 0.0) throw std::invalid_argument("delta_continuation: deltas must be >= 0");

  DeltaContinuationReport report;
  report.deltas = deltas;
  for (double d : deltas) {
    EquationParams p = params;
    p.delta = d;
    SolveConfig c = cfg;
    c.nonlinear.delta = d;
    if (d > 0.0) c.nonlinear.evaluation_mode = EvalMode::pseudospectral;
    Trajectory traj = solve(u0, p, damping, c);
    report.final_mass.push_back(l2_norm_sq(traj.final_state()));
    report.final_states.push_back(traj.final_state());
  }
  for (std::size_t i = 0; i + 1 < report.final_states.size(); ++i) {
    report.gaps.push_back(l2_distance(report.final_states[i], report.final_states[i + 1]));
  }
  return report;
}

}  // namespace hnls
