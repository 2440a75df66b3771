#include "hnls/field.hpp"

#include <cmath>
#include <stdexcept>

namespace hnls {

Field make_field(GridPtr grid) {
  Field f;
  f.grid = std::move(grid);
  f.values.assign(f.grid->n_points, cplx{0.0, 0.0});
  return f;
}

Field sample(GridPtr grid, const std::function<cplx(double)>& f) {
  Field out = make_field(std::move(grid));
  for (std::size_t j = 0; j < out.size(); ++j) {
    out.values[j] = f(out.grid->nodes[j]);
  }
  return out;
}

double l2_norm_sq(const Field& u) {
  double s = 0.0;
  for (const cplx& v : u.values) s += std::norm(v);
  return s * u.grid->spacing;
}

double l2_distance(const Field& u, const Field& v) {
  require_same_grid(u, v, "l2_distance");
  double s = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) s += std::norm(u.values[j] - v.values[j]);
  return std::sqrt(s * u.grid->spacing);
}

double max_abs(const Field& u) {
  double m = 0.0;
  for (const cplx& v : u.values) m = std::max(m, std::abs(v));
  return m;
}

bool all_finite(const Field& u) {
  for (const cplx& v : u.values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

Field operator+(const Field& u, const Field& v) {
  require_same_grid(u, v, "operator+");
  Field out = u;
  for (std::size_t j = 0; j < out.size(); ++j) out.values[j] += v.values[j];
  return out;
}

Field operator-(const Field& u, const Field& v) {
  require_same_grid(u, v, "operator-");
  Field out = u;
  for (std::size_t j = 0; j < out.size(); ++j) out.values[j] -= v.values[j];
  return out;
}

Field operator*(cplx c, const Field& u) {
  Field out = u;
  for (cplx& v : out.values) v *= c;
  return out;
}

void axpy(Field& u, cplx c, const Field& v) {
  require_same_grid(u, v, "axpy");
  for (std::size_t j = 0; j < u.size(); ++j) u.values[j] += c * v.values[j];
}

void require_same_grid(const Field& u, const Field& v, const char* where) {
  if (u.grid.get() != v.grid.get() &&
      (u.grid->n_points != v.grid->n_points || u.grid->half_width != v.grid->half_width)) {
    throw std::invalid_argument(std::string(where) + ": fields live on different grids");
  }
}

}  // namespace hnls
