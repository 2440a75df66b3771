#include <stdexcept>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "hnls/oracle.hpp"

namespace hnls::oracle {

Field dense_linear_solve(const Field& u0, double t, double a, double b) {
  const Grid& g = *u0.grid;
  const std::size_t n = g.n_points;
  if (n > 64) throw std::invalid_argument("dense_linear_solve: size guard N <= 64");

  using Mat = Eigen::MatrixXcd;
  using Vec = Eigen::VectorXcd;
  const std::complex<double> i2pi{0.0, -2.0 * M_PI};

  Mat dft(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      dft(k, j) = std::exp(i2pi * (static_cast<double>(k * j % n) / static_cast<double>(n)));
    }
  }
  const Mat idft = dft.adjoint() / static_cast<double>(n);

  Vec symbol(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double xi = g.wavenumbers[k];
    symbol(k) = std::complex<double>{0.0, (xi * xi * xi - a * xi * xi - b * xi)};
  }
  // dense generator; the exponential goes through Pade scaling-and-squaring,
  // not through the diagonal phase formula
  const Mat gen = idft * symbol.asDiagonal() * dft;
  const Mat flow = (t * gen).exp();

  Vec v(n);
  for (std::size_t j = 0; j < n; ++j) v(j) = u0.values[j];
  v = flow * v;

  Field out = make_field(u0.grid);
  for (std::size_t j = 0; j < n; ++j) out.values[j] = v(j);
  return out;
}

}  // namespace hnls::oracle
