#include "hnls/spectral.hpp"

#include <stdexcept>

#include "hnls/fft.hpp"

namespace hnls {

std::vector<cplx> spectrum(const Field& u) { return fft::forward(u.values); }

Field field_from_spectrum(GridPtr grid, const std::vector<cplx>& spec) {
  if (spec.size() != grid->n_points) {
    throw std::invalid_argument("field_from_spectrum: size mismatch");
  }
  Field out;
  out.grid = std::move(grid);
  out.values = fft::inverse(spec);
  return out;
}

Field spectral_derivative(const Field& u, int order) {
  if (order < 1 || order > 3) {
    throw std::invalid_argument("spectral_derivative: order must be 1, 2 or 3");
  }
  const Grid& g = *u.grid;
  std::vector<cplx> spec = fft::forward(u.values);
  const std::size_t nyquist = g.n_points / 2;
  for (std::size_t k = 0; k < g.n_points; ++k) {
    cplx m{1.0, 0.0};
    const cplx ik{0.0, g.wavenumbers[k]};
    for (int p = 0; p < order; ++p) m *= ik;
    if ((order % 2 == 1) && k == nyquist) m = 0.0;
    spec[k] *= m;
  }
  Field out;
  out.grid = u.grid;
  out.values = fft::inverse(spec);
  return out;
}

Field apply_multiplier(const Field& u, const std::vector<cplx>& mult) {
  if (mult.size() != u.size()) {
    throw std::invalid_argument("apply_multiplier: size mismatch");
  }
  std::vector<cplx> spec = fft::forward(u.values);
  for (std::size_t k = 0; k < spec.size(); ++k) spec[k] *= mult[k];
  Field out;
  out.grid = u.grid;
  out.values = fft::inverse(spec);
  return out;
}

void dealias_two_thirds(std::vector<cplx>& spec) {
  const std::size_t n = spec.size();
  const std::size_t cut = n / 3;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t abs_k = (k <= n / 2) ? k : n - k;
    if (abs_k > cut) spec[k] = 0.0;
  }
}

}  // namespace hnls
