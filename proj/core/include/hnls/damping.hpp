#pragma once

#include <string>
#include <vector>

#include "hnls/grid.hpp"

namespace hnls {

enum class DampingProfile { zero, constant, plateau_with_hole, smooth_bump_complement, samples };

/// Damping coefficient d(x) >= 0. Apart from `zero` and `constant`, the
/// analytic profiles satisfy Condition A: d(x) >= d0 for |x| >= R0.
struct DampingSpec {
  double d0 = 0.0;
  double R0 = 1.0;
  DampingProfile profile = DampingProfile::zero;
  std::vector<double> sample_values;  // profile == samples, one per grid node

  double value(double x) const;
  double derivative(double x) const;

  std::vector<double> values_on(const Grid& grid) const;
  std::vector<double> derivative_on(const Grid& grid) const;

  /// Throws if d < 0 anywhere or the declared Condition-A floor is violated.
  void validate(const Grid& grid) const;

  bool is_zero() const { return profile == DampingProfile::zero || d0 == 0.0; }
  bool is_constant_everywhere() const {
    return profile == DampingProfile::constant || is_zero();
  }
};

DampingProfile damping_profile_from_string(const std::string& name);
std::string to_string(DampingProfile profile);

}  // namespace hnls
