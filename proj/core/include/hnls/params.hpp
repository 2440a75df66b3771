#pragma once

#include <cmath>
#include <stdexcept>

namespace hnls {

/// Coefficients of i u_t + a u_xx + i b u_x + i u_xxx + lambda |u|u
/// + i beta (|u|u)_x + i d(x) u = 0, with the regularization level delta
/// of the smoothed nonlinearity g_delta.
struct EquationParams {
  double a = 0.0;
  double b = 0.0;
  double lambda = 0.0;
  double beta = 0.0;
  double delta = 0.0;

  void validate() const {
    if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(lambda) && std::isfinite(beta) &&
          std::isfinite(delta))) {
      throw std::invalid_argument("EquationParams: coefficients must be finite");
    }
    if (delta < 0.0) throw std::invalid_argument("EquationParams: delta must be >= 0");
  }
};

}  // namespace hnls
