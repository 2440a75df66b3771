#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "hnls/trajectory.hpp"

namespace hnls {

enum class Scheme { strang_split, if_rk4, picard_duhamel };

Scheme scheme_from_string(const std::string& name);
std::string to_string(Scheme scheme);

struct SolveConfig {
  double t_final = 1.0;
  double dt = 1e-3;
  Scheme scheme = Scheme::strang_split;
  std::size_t snapshot_stride = 1;
  double picard_tol = 1e-10;
  int picard_max_iters = 30;
  NonlinearConfig nonlinear;

  void validate() const;
};

/// Thrown when a state turns non-finite; carries the offending step.
struct NumericalAbort : std::runtime_error {
  explicit NumericalAbort(std::size_t step_index);
  std::size_t step = 0;
};

/// Thrown by the Picard mode when the iteration stops contracting.
struct PicardNonContraction : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One Strang step L(dt/2) N(dt) L(dt/2): exact Fourier multiplier for the
/// full linear part, RK4 for the nonlinearity and damping.
Field step_strang(const Field& u, double dt, const EquationParams& params,
                  const DampingSpec& damping, const NonlinearConfig& cfg);

/// Time integration on [0, t_final]. The initial datum must be decayed at the
/// box boundary (< 1e-8 of its max); boundary contamination above 1e-6 of the
/// running max raises Trajectory::boundary_warning.
Trajectory solve(const Field& u0, const EquationParams& params, const DampingSpec& damping,
                 const SolveConfig& cfg);

struct PicardReport {
  std::vector<double> gaps;                // per-iteration sup-L2 increments
  std::vector<double> contraction_ratios;  // gaps[k]/gaps[k-1]
  int iterations = 0;
  bool converged = false;
};

/// Fixed-point iteration u <- Lambda0 u through the Duhamel integrator,
/// mirroring the contraction construction. Restricted to t_final <= 0.2.
std::pair<Trajectory, PicardReport> picard_solve(const Field& u0, const EquationParams& params,
                                                 const DampingSpec& damping,
                                                 const SolveConfig& cfg);

struct DeltaContinuationReport {
  std::vector<double> deltas;
  std::vector<double> gaps;         // ||u_{d_j}(T) - u_{d_{j+1}}(T)||_L2
  std::vector<double> final_mass;   // per delta
  std::vector<Field> final_states;  // per delta
};

/// Solves the regularized equation for each delta in a strictly decreasing
/// list and reports successive final-state gaps.
DeltaContinuationReport delta_continuation(const Field& u0, const EquationParams& params,
                                           const DampingSpec& damping, const SolveConfig& cfg,
                                           const std::vector<double>& deltas);

}  // namespace hnls
