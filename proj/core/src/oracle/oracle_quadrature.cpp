#include <cmath>
#include <stdexcept>

#include "hnls/oracle.hpp"
#include "hnls/quadrature.hpp"

namespace hnls::oracle {

namespace {

using cplx = std::complex<double>;

double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

std::complex<double> phi_direct_quadrature(double a, double x) {
  if (std::abs(x) > 30.0 || std::abs(a) > 2.0) {
    throw std::invalid_argument("phi_direct_quadrature: cost guard |x| <= 30, |a| <= 2");
  }

  const double cut = 60.0;
  const auto phase = [a, x](double xi) { return ((xi - a) * xi + x) * xi; };
  const auto dphase = [a, x](double xi) { return (3.0 * xi - 2.0 * a) * xi + x; };

  // phase-resolved panels with a fixed Gauss rule
  const auto& rule = hnls::quad::gauss_legendre(10);
  cplx total{0.0, 0.0};
  double lo = -cut;
  while (lo < cut) {
    const double slope = std::max(std::abs(dphase(lo)), std::abs(dphase(lo + 1e-3)));
    const double width = std::min(1.5 / std::max(slope, 1.0), 0.25);
    const double hi = std::min(lo + width, cut);
    const double mid = 0.5 * (lo + hi), hal = 0.5 * (hi - lo);
    cplx s{0.0, 0.0};
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double xi = mid + hal * static_cast<double>(rule.nodes[q]);
      const double ph = phase(xi);
      s += static_cast<double>(rule.weights[q]) * cplx{std::cos(ph), std::sin(ph)};
    }
    total += hal * s;
    lo = hi;
  }

  // integration-by-parts tail corrections at +-cut
  const auto tail = [&](double xi, int side) {
    const cplx e{std::cos(phase(xi)), std::sin(phase(xi))};
    const double dp = dphase(xi);
    const double ddp = 6.0 * xi - 2.0 * a;
    const cplx i{0.0, 1.0};
    // int_cut^inf = -e/(i phi') + e phi''/phi'^3 (+ higher order),
    // int_-inf^-cut mirrors with opposite signs
    if (side > 0) return -e / (i * dp) + e * ddp / (dp * dp * dp);
    return e / (i * dp) - e * ddp / (dp * dp * dp);
  };
  total += tail(cut, +1) + tail(-cut, -1);

  return total / (2.0 * M_PI);
}

}  // namespace hnls::oracle
