#include "hnls/damping.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hnls/field.hpp"
#include "hnls/spectral.hpp"
#include "hnls/weights.hpp"

namespace hnls {

namespace {

double ramp_width(double R0) { return std::min(1.0, 0.5 * R0); }

}  // namespace

double DampingSpec::value(double x) const {
  switch (profile) {
    case DampingProfile::zero:
      return 0.0;
    case DampingProfile::constant:
      return d0;
    case DampingProfile::plateau_with_hole: {
      // zero inside |x| <= R0 - w, exactly d0 outside |x| >= R0
      const double w = ramp_width(R0);
      return d0 * (eval_eta((x - R0 + w) / w) + eval_eta((-x - R0 + w) / w));
    }
    case DampingProfile::smooth_bump_complement:
      return d0 * (1.0 - eval_eta((x + R0) / R0) * eval_eta((R0 - x) / R0));
    case DampingProfile::samples:
      throw std::logic_error("DampingSpec::value: sampled profile needs a grid, use values_on");
  }
  throw std::logic_error("DampingSpec::value: unknown profile");
}

double DampingSpec::derivative(double x) const {
  switch (profile) {
    case DampingProfile::zero:
    case DampingProfile::constant:
      return 0.0;
    case DampingProfile::plateau_with_hole: {
      const double w = ramp_width(R0);
      return d0 / w *
             (eta_derivative((x - R0 + w) / w, 1) - eta_derivative((-x - R0 + w) / w, 1));
    }
    case DampingProfile::smooth_bump_complement: {
      const double a = (x + R0) / R0, b = (R0 - x) / R0;
      return -d0 / R0 * (eta_derivative(a, 1) * eval_eta(b) - eval_eta(a) * eta_derivative(b, 1));
    }
    case DampingProfile::samples:
      throw std::logic_error("DampingSpec::derivative: sampled profile needs a grid");
  }
  throw std::logic_error("DampingSpec::derivative: unknown profile");
}

std::vector<double> DampingSpec::values_on(const Grid& grid) const {
  std::vector<double> out(grid.n_points);
  if (profile == DampingProfile::samples) {
    if (sample_values.size() != grid.n_points) {
      throw std::invalid_argument("DampingSpec: sample_values size does not match grid");
    }
    out = sample_values;
    return out;
  }
  for (std::size_t j = 0; j < grid.n_points; ++j) out[j] = value(grid.nodes[j]);
  return out;
}

std::vector<double> DampingSpec::derivative_on(const Grid& grid) const {
  std::vector<double> out(grid.n_points);
  if (profile == DampingProfile::samples) {
    // spectral derivative of the sampled profile
    Field f = make_field(std::make_shared<Grid>(grid));
    auto vals = values_on(grid);
    for (std::size_t j = 0; j < grid.n_points; ++j) f.values[j] = vals[j];
    Field fx = spectral_derivative(f, 1);
    for (std::size_t j = 0; j < grid.n_points; ++j) out[j] = fx.values[j].real();
    return out;
  }
  for (std::size_t j = 0; j < grid.n_points; ++j) out[j] = derivative(grid.nodes[j]);
  return out;
}

void DampingSpec::validate(const Grid& grid) const {
  if (d0 < 0.0) {
    throw std::invalid_argument(
        "DampingSpec: d0 must be >= 0 (Condition A requires a non-negative profile)");
  }
  if (!(R0 > 0.0)) throw std::invalid_argument("DampingSpec: R0 must be positive");
  const auto vals = values_on(grid);
  for (std::size_t j = 0; j < vals.size(); ++j) {
    if (!(vals[j] >= 0.0)) {
      throw std::invalid_argument("DampingSpec: d(x) must be non-negative everywhere");
    }
  }
  if (d0 > 0.0 && profile != DampingProfile::samples && profile != DampingProfile::zero) {
    for (std::size_t j = 0; j < vals.size(); ++j) {
      const double x = grid.nodes[j];
      if (std::abs(x) >= R0 && vals[j] < d0 * (1.0 - 1e-12)) {
        throw std::invalid_argument("DampingSpec: Condition A floor violated at |x| >= R0");
      }
    }
  }
}

DampingProfile damping_profile_from_string(const std::string& name) {
  if (name == "zero") return DampingProfile::zero;
  if (name == "constant") return DampingProfile::constant;
  if (name == "plateau_with_hole") return DampingProfile::plateau_with_hole;
  if (name == "smooth_bump_complement") return DampingProfile::smooth_bump_complement;
  if (name == "samples") return DampingProfile::samples;
  throw std::invalid_argument("unknown damping profile: " + name);
}

std::string to_string(DampingProfile profile) {
  switch (profile) {
    case DampingProfile::zero: return "zero";
    case DampingProfile::constant: return "constant";
    case DampingProfile::plateau_with_hole: return "plateau_with_hole";
    case DampingProfile::smooth_bump_complement: return "smooth_bump_complement";
    case DampingProfile::samples: return "samples";
  }
  return "unknown";
}

}  // namespace hnls
