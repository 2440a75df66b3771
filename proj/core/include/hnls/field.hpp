#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "hnls/grid.hpp"

namespace hnls {

using cplx = std::complex<double>;

/// Complex-valued samples on a Grid; the state u(t,.).
struct Field {
  GridPtr grid;
  std::vector<cplx> values;

  std::size_t size() const { return values.size(); }
};

Field make_field(GridPtr grid);
Field sample(GridPtr grid, const std::function<cplx(double)>& f);

/// Spacing-weighted quadrature of |u|^2, the discrete squared L2 norm.
double l2_norm_sq(const Field& u);

/// sqrt of the spacing-weighted squared L2 norm of u - v.
double l2_distance(const Field& u, const Field& v);

double max_abs(const Field& u);
bool all_finite(const Field& u);

Field operator+(const Field& u, const Field& v);
Field operator-(const Field& u, const Field& v);
Field operator*(cplx c, const Field& u);

/// u += c*v
void axpy(Field& u, cplx c, const Field& v);

void require_same_grid(const Field& u, const Field& v, const char* where);

}  // namespace hnls
