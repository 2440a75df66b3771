#pragma once

#include <string>
#include <vector>

#include "hnls/damping.hpp"
#include "hnls/field.hpp"
#include "hnls/nonlinearity.hpp"
#include "hnls/params.hpp"

namespace hnls {

/// Snapshots of u(t,.) at strictly increasing times, with the run settings
/// echoed for post-processing.
struct Trajectory {
  std::vector<double> times;
  std::vector<Field> states;

  EquationParams params;
  DampingSpec damping;
  NonlinearConfig nonlinear;
  std::string scheme;
  double dt = 0.0;  // stepping dt; snapshots may be strided

  bool boundary_warning = false;
  double max_edge_ratio = 0.0;

  std::size_t size() const { return states.size(); }
  const Field& initial() const { return states.front(); }
  const Field& final_state() const { return states.back(); }

  /// Snapshot spacing; throws unless times are uniform to 1e-12 relative.
  double uniform_spacing() const;
};

}  // namespace hnls
