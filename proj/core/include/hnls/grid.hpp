#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace hnls {

/// Periodic grid on [-L, L) with N equispaced nodes, N a power of two.
/// Wavenumbers xi_k = pi*k/L are stored in standard unshifted FFT layout:
/// k = 0,1,...,N/2-1,-N/2,...,-1.
struct Grid {
  double half_width = 0.0;
  std::size_t n_points = 0;
  double spacing = 0.0;
  std::vector<double> nodes;        // x_j = -L + j*spacing
  std::vector<double> wavenumbers;  // FFT layout

  double node(std::size_t j) const { return nodes[j]; }
};

using GridPtr = std::shared_ptr<const Grid>;

/// Builds a grid; rejects non-positive half width and n_points that are
/// not a power of two >= 8.
GridPtr make_grid(double half_width, std::size_t n_points);

bool is_power_of_two(std::size_t n);

}  // namespace hnls
