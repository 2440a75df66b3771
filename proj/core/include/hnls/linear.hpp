#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "hnls/field.hpp"
#include "hnls/series.hpp"
#include "hnls/trajectory.hpp"
#include "hnls/weights.hpp"

namespace hnls {

/// Unit-modulus Fourier multiplier e^{i(xi^3 - a xi^2 - b xi) t}.
struct LinearMultiplier {
  std::vector<cplx> phases;

  static LinearMultiplier make(const Grid& grid, double t, double a, double b);
};

/// Exact linear flow via the Fourier multiplier; any finite t (group).
Field propagate(const Field& u0, double t, double a, double b);

/// Same solution through the fundamental-solution convolution
/// u(t,x) = int G(t,x-y) u0(y) dy, quadrature on a spectrally upsampled u0.
/// Requires t > 0 and data decayed at the box boundary.
Field propagate_via_kernel(const Field& u0, double t, double a, double b, int upsample = 8);

using ForcingProvider = std::function<Field(double)>;

/// Integrating-factor quadrature of the Duhamel integral, composite Simpson
/// in tau on each step (order 4). For f == 0 this reduces to propagate.
Trajectory duhamel_solve(const Field& u0, const ForcingProvider& forcing, double t_final,
                         double dt, double a, double b);

enum class LinearIdentity { mass_2_15, weighted_2_17, h1_2_24, momentum_2_26 };

/// Residual time series of the selected linear identity along a trajectory
/// driven by the external forcing f. Endpoint snapshots are not reported
/// (centered time differences). weighted_2_17 requires psi.
ResidualSeries identity_residual_linear(const Trajectory& traj, const ForcingProvider& forcing,
                                        LinearIdentity which,
                                        const std::optional<WeightSpec>& psi = std::nullopt);

}  // namespace hnls
