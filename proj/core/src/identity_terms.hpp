#pragma once

// Spacing-weighted integral terms shared by the linear and nonlinear
// identity-residual evaluators. Internal header.

#include <complex>
#include <vector>

#include "hnls/field.hpp"

namespace hnls::terms {

// int f conj(g) dx
inline cplx prod(const Field& f, const Field& g) {
  cplx s{0.0, 0.0};
  for (std::size_t j = 0; j < f.size(); ++j) s += f.values[j] * std::conj(g.values[j]);
  return s * f.grid->spacing;
}

inline double im_prod(const Field& f, const Field& g) { return prod(f, g).imag(); }
inline double re_prod(const Field& f, const Field& g) { return prod(f, g).real(); }

// int f conj(g) w dx
inline cplx prod_w(const Field& f, const Field& g, const std::vector<double>& w) {
  cplx s{0.0, 0.0};
  for (std::size_t j = 0; j < f.size(); ++j) {
    s += f.values[j] * std::conj(g.values[j]) * w[j];
  }
  return s * f.grid->spacing;
}

// int |u|^2 w dx
inline double abs2_w(const Field& u, const std::vector<double>& w) {
  double s = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) s += std::norm(u.values[j]) * w[j];
  return s * u.grid->spacing;
}

// int |u|^3 dx
inline double cube_abs(const Field& u) {
  double s = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double m = std::abs(u.values[j]);
    s += m * m * m;
  }
  return s * u.grid->spacing;
}

inline double cube_abs_w(const Field& u, const std::vector<double>& w) {
  double s = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double m = std::abs(u.values[j]);
    s += m * m * m * w[j];
  }
  return s * u.grid->spacing;
}

// centered time differences on a uniform series; endpoints get 0
inline std::vector<double> centered_derivative(const std::vector<double>& f, double dt) {
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t i = 1; i + 1 < f.size(); ++i) out[i] = (f[i + 1] - f[i - 1]) / (2.0 * dt);
  return out;
}

inline std::vector<cplx> centered_derivative(const std::vector<cplx>& f, double dt) {
  std::vector<cplx> out(f.size(), cplx{0.0, 0.0});
  for (std::size_t i = 1; i + 1 < f.size(); ++i) out[i] = (f[i + 1] - f[i - 1]) / (2.0 * dt);
  return out;
}

// cumulative integral of a uniformly sampled series, 4th order
// (Newton-Cotes corrector on interior intervals, one-sided cubic at the ends)
inline std::vector<double> cumulative_integral(const std::vector<double>& f, double dt) {
  const std::size_t n = f.size();
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  if (n < 4) {
    for (std::size_t i = 1; i < n; ++i) {
      out[i] = out[i - 1] + 0.5 * dt * (f[i - 1] + f[i]);
    }
    return out;
  }
  out[1] = out[0] + dt / 24.0 * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]);
  for (std::size_t i = 1; i + 2 < n; ++i) {
    out[i + 1] = out[i] + dt / 24.0 * (-f[i - 1] + 13.0 * f[i] + 13.0 * f[i + 1] - f[i + 2]);
  }
  out[n - 1] = out[n - 2] +
               dt / 24.0 * (9.0 * f[n - 1] + 19.0 * f[n - 2] - 5.0 * f[n - 3] + f[n - 4]);
  return out;
}

}  // namespace hnls::terms
