#include "hnls/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hnls {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

GridPtr make_grid(double half_width, std::size_t n_points) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw std::invalid_argument("make_grid: half_width must be positive and finite");
  }
  if (n_points < 8 || !is_power_of_two(n_points)) {
    throw std::invalid_argument("make_grid: n_points must be a power of two >= 8, got " +
                                std::to_string(n_points));
  }

  auto g = std::make_shared<Grid>();
  g->half_width = half_width;
  g->n_points = n_points;
  g->spacing = 2.0 * half_width / static_cast<double>(n_points);

  g->nodes.resize(n_points);
  for (std::size_t j = 0; j < n_points; ++j) {
    g->nodes[j] = -half_width + static_cast<double>(j) * g->spacing;
  }

  const double base = M_PI / half_width;
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(n_points);
  g->wavenumbers.resize(n_points);
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const std::ptrdiff_t kk = (k < n / 2) ? k : k - n;
    g->wavenumbers[static_cast<std::size_t>(k)] = base * static_cast<double>(kk);
  }
  return g;
}

}  // namespace hnls
