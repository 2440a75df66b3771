#include <cmath>
#include <stdexcept>

#include "hnls/oracle.hpp"

namespace hnls::oracle {

namespace {

constexpr long double kAi0 = 0.355028053887817239260063186004183176L;
constexpr long double kAip0 = -0.258819403792806798405183560189203963L;
constexpr long double kPi = 3.14159265358979323846264338327950288L;

long double maclaurin(long double x) {
  long double f = 1.0L, g = x, sf = 1.0L, sg = x;
  for (int k = 1; k < 80; ++k) {
    const long double x3 = x * x * x;
    f *= x3 / (3.0L * k * (3.0L * k - 1.0L));
    g *= x3 / ((3.0L * k + 1.0L) * 3.0L * k);
    sf += f;
    sg += g;
    if (std::abs(f) < 1e-25L && std::abs(g) < 1e-25L) break;
  }
  return kAi0 * sf + kAip0 * sg;
}

// u_{k+1} = u_k (6k+1)(6k+3)(6k+5) / (216 (k+1)(2k+1))
long double next_u(long double u, int k) {
  return u * (6.0L * k + 1.0L) * (6.0L * k + 3.0L) * (6.0L * k + 5.0L) /
         (216.0L * (k + 1.0L) * (2.0L * k + 1.0L));
}

long double asymptotic_positive(long double x) {
  const long double zeta = 2.0L / 3.0L * std::pow(x, 1.5L);
  long double u = 1.0L, term = 1.0L, sum = 0.0L, prev = 1e30L;
  for (int k = 0; k < 40; ++k) {
    if (std::abs(term) > prev) break;
    sum += term;
    prev = std::abs(term);
    u = next_u(u, k);
    term = ((k + 1) % 2 == 0 ? 1.0L : -1.0L) * u / std::pow(zeta, k + 1);
  }
  return std::exp(-zeta) / (2.0L * std::sqrt(kPi) * std::pow(x, 0.25L)) * sum;
}

long double asymptotic_negative(long double x) {
  const long double z = -x;
  const long double zeta = 2.0L / 3.0L * std::pow(z, 1.5L);
  // u_k table up to the truncation depth
  long double u[24];
  u[0] = 1.0L;
  for (int k = 0; k + 1 < 24; ++k) u[k + 1] = next_u(u[k], k);

  long double c = 0.0L, s = 0.0L, prev = 1e30L;
  for (int k = 0; 2 * k + 1 < 24; ++k) {
    const long double sign = (k % 2 == 0) ? 1.0L : -1.0L;
    const long double tc = sign * u[2 * k] / std::pow(zeta, 2 * k);
    const long double ts = sign * u[2 * k + 1] / std::pow(zeta, 2 * k + 1);
    if (std::abs(tc) > prev) break;
    c += tc;
    s += ts;
    prev = std::abs(tc);
  }
  return (std::cos(zeta - kPi / 4.0L) * c + std::sin(zeta - kPi / 4.0L) * s) /
         (std::sqrt(kPi) * std::pow(z, 0.25L));
}

}  // namespace

double airy_reference(double x) {
  if (std::abs(x) > 12.0) throw std::invalid_argument("airy_reference: |x| <= 12");
  const long double lx = x;
  if (std::abs(lx) <= 7.5L) return static_cast<double>(maclaurin(lx));
  return static_cast<double>(x > 0 ? asymptotic_positive(lx) : asymptotic_negative(lx));
}

}  // namespace hnls::oracle
