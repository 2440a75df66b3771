#include "hnls/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "hnls/quadrature.hpp"
#include "hnls/weights.hpp"

namespace hnls::kernel {

namespace {

using cld = std::complex<long double>;

constexpr long double kPi = 3.14159265358979323846264338327950288L;
constexpr double kQuadPeakMax = 20.0;   // beyond this the contour integrand eats the mantissa
constexpr double kAnchorPeak = 14.0;
constexpr double kOdeStepFactor = 0.008;

// max over r >= 0 of the contour-integrand exponent -r^3 + (sqrt3/2)|a| r^2 + max(-x,0) r/2
double peak_exponent(double a, double x) {
  const double q = std::sqrt(3.0) * 0.5 * std::abs(a);
  const double lin = 0.5 * std::max(-x, 0.0);
  const double disc = q * q + 3.0 * lin;
  const double r = (q + std::sqrt(disc)) / 3.0;
  const double g = -r * r * r + q * r * r + lin * r;
  return std::max(g, 0.0);
}

// Half-line factor of the rotated-contour representation:
// I_pm^{(n)} = int_0^inf r^n exp(-r^3 +- a (sqrt3/2) r^2 - (x/2) r)
//                      * exp(i(-(a/2) r^2 +- (sqrt3/2) x r)) dr
quad::Result half_line_integral(double a, double x, int n, int sign, double peak) {
  const long double s3 = std::sqrt(3.0L) * 0.5L;
  const long double la = a, lx = x, lsign = sign;

  // truncation where the integrand magnitude falls 1e-18 below its peak
  long double R = std::cbrt(peak + 45.0) + 1.0L;
  for (int it = 0; it < 24; ++it) {
    const long double rhs = peak + 45.0L + s3 * std::abs(la) * R * R +
                            0.5L * std::max(-lx, 0.0L) * R + n * std::log(std::max(R, 2.0L));
    R = std::cbrt(rhs) + 0.5L;
  }

  const long double abs_tol = std::max(1e-17L, 1e-19L * std::exp((long double)peak));
  return quad::integrate(
      [=](long double r) -> cld {
        const long double mag = -r * r * r + lsign * la * s3 * r * r - 0.5L * lx * r;
        const long double ph = -0.5L * la * r * r + lsign * s3 * lx * r;
        const long double e = std::exp(mag);
        const long double f = (n == 0) ? e : r * e;
        return cld{f * std::cos(ph), f * std::sin(ph)};
      },
      0.0L, R, abs_tol, 1e-13L);
}

PhiResult phi_by_quadrature(double a, double x, int n) {
  const double peak = peak_exponent(a, x);
  const quad::Result ip = half_line_integral(a, x, n, +1, peak);
  const quad::Result im = half_line_integral(a, x, n, -1, peak);

  const long double ang_p = kPi * (n + 1) / 6.0L;
  const long double ang_m = 5.0L * kPi * (n + 1) / 6.0L;
  cld val = cld{std::cos(ang_p), std::sin(ang_p)} * ip.value -
            cld{std::cos(ang_m), std::sin(ang_m)} * im.value;
  val /= 2.0L * kPi;
  if (n == 1) val *= cld{0.0L, 1.0L};

  PhiResult out;
  out.value = cplx(static_cast<double>(val.real()), static_cast<double>(val.imag()));
  const long double round_floor = 6e-20L * std::exp((long double)peak);
  out.error_estimate =
      static_cast<double>((ip.error_estimate + im.error_estimate) / (2.0L * kPi) + round_floor);
  out.converged = ip.converged && im.converged;
  return out;
}

struct OdeState {
  double x = 0.0;
  cplx y{0.0, 0.0};
  cplx yp{0.0, 0.0};
};

// 3 y'' - 2ai y' - x y = 0 as a first order system
inline void ode_rhs(double a, double x, const cplx& y, const cplx& yp, cplx& dy, cplx& dyp) {
  dy = yp;
  dyp = (cplx{0.0, 2.0 * a} * yp + x * y) / 3.0;
}

void rk4_step(double a, OdeState& s, double h) {
  cplx k1y, k1p, k2y, k2p, k3y, k3p, k4y, k4p;
  ode_rhs(a, s.x, s.y, s.yp, k1y, k1p);
  ode_rhs(a, s.x + 0.5 * h, s.y + 0.5 * h * k1y, s.yp + 0.5 * h * k1p, k2y, k2p);
  ode_rhs(a, s.x + 0.5 * h, s.y + 0.5 * h * k2y, s.yp + 0.5 * h * k2p, k3y, k3p);
  ode_rhs(a, s.x + h, s.y + h * k3y, s.yp + h * k3p, k4y, k4p);
  s.y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
  s.yp += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
  s.x += h;
}

// one Richardson-extrapolated step of size h (towards negative x, h < 0)
double refined_step(double a, OdeState& s, double h) {
  OdeState big = s, fine = s;
  rk4_step(a, big, h);
  rk4_step(a, fine, 0.5 * h);
  rk4_step(a, fine, 0.5 * h);
  const double err = (std::abs(fine.y - big.y) + std::abs(fine.yp - big.yp)) / 15.0;
  s.x = big.x;
  s.y = fine.y + (fine.y - big.y) / 15.0;
  s.yp = fine.yp + (fine.yp - big.yp) / 15.0;
  return err;
}

double local_wavenumber(double a, double x) {
  return (std::abs(a) + std::sqrt(std::max(a * a + 3.0 * std::abs(x), 1.0))) / 3.0 + 0.5;
}

double find_anchor(double a) {
  if (peak_exponent(a, 0.0) <= kAnchorPeak) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (peak_exponent(a, hi) > kAnchorPeak) hi *= 2.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (peak_exponent(a, mid) > kAnchorPeak ? lo : hi) = mid;
  }
  return hi;
}

// Continues (Phi, Phi') from a quadrature anchor down to every requested x.
// Targets must lie below the anchor; results are indexed like `targets`.
void ode_sweep(double a, const std::vector<double>& targets, std::vector<PhiResult>& phi0,
               std::vector<PhiResult>& phi1) {
  const double anchor = find_anchor(a);
  const PhiResult y0 = phi_by_quadrature(a, anchor, 0);
  const PhiResult y1 = phi_by_quadrature(a, anchor, 1);

  std::vector<std::size_t> order(targets.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&targets](std::size_t i, std::size_t j) { return targets[i] > targets[j]; });

  OdeState s{anchor, y0.value, y1.value};
  double err_acc = y0.error_estimate + y1.error_estimate;
  for (std::size_t idx : order) {
    const double target = targets[idx];
    while (s.x > target + 1e-300) {
      double h = std::min(0.02, kOdeStepFactor / local_wavenumber(a, s.x));
      h = std::min(h, s.x - target);
      err_acc += refined_step(a, s, -h);
      if (s.x - target < 1e-12 * std::max(1.0, std::abs(target))) s.x = target;
    }
    phi0[idx] = PhiResult{s.y, err_acc, true};
    phi1[idx] = PhiResult{s.yp, err_acc, true};
  }
}

double fit_r_squared(const std::vector<double>& xs, const std::vector<double>& ys, double slope,
                     double intercept) {
  double mean = 0.0;
  for (double y : ys) mean += y;
  mean /= static_cast<double>(ys.size());
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double fit = intercept + slope * xs[i];
    ss_res += (ys[i] - fit) * (ys[i] - fit);
    ss_tot += (ys[i] - mean) * (ys[i] - mean);
  }
  return (ss_tot > 0.0) ? 1.0 - ss_res / ss_tot : 1.0;
}

void least_squares(const std::vector<double>& xs, const std::vector<double>& ys, double& slope,
                   double& intercept) {
  const double n = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  intercept = (sy - slope * sx) / n;
}

}  // namespace

PhiResult phi_full(double a, double x, int n) {
  const double xs[1] = {x};
  return phi_batch(a, std::span<const double>(xs, 1), n)[0];
}

cplx phi(double a, double x, int n) { return phi_full(a, x, n).value; }

std::vector<PhiResult> phi_batch(double a, std::span<const double> xs, int n) {
  if (n != 0 && n != 1) throw std::invalid_argument("phi: derivative order must be 0 or 1");
  std::vector<PhiResult> out(xs.size());

  std::vector<double> deep;
  std::vector<std::size_t> deep_idx;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i])) throw std::invalid_argument("phi: non-finite x");
    if (peak_exponent(a, xs[i]) <= kQuadPeakMax) {
      out[i] = phi_by_quadrature(a, xs[i], n);
    } else {
      deep.push_back(xs[i]);
      deep_idx.push_back(i);
    }
  }
  if (!deep.empty()) {
    std::vector<PhiResult> p0(deep.size()), p1(deep.size());
    ode_sweep(a, deep, p0, p1);
    for (std::size_t k = 0; k < deep.size(); ++k) {
      out[deep_idx[k]] = (n == 0) ? p0[k] : p1[k];
    }
  }
  return out;
}

double phi_ode_residual(double a, double x) {
  const double h = 2.5e-4;
  const cplx y = phi(a, x, 0);
  const cplx yp = phi(a, x, 1);
  const cplx ypp = (phi(a, x + h, 1) - phi(a, x - h, 1)) / (2.0 * h);
  return std::abs(3.0 * ypp - cplx{0.0, 2.0 * a} * yp - x * y);
}

cplx green(double t, double x, double a, double b, int n) {
  if (!(t > 0.0)) throw std::invalid_argument("green: t must be positive");
  const double tc = std::cbrt(t);
  const cplx v = phi(a * tc, (x - b * t) / tc, n);
  return v / std::pow(tc, n + 1);
}

std::vector<PhiResult> green_batch(double t, std::span<const double> xs, double a, double b,
                                   int n) {
  if (!(t > 0.0)) throw std::invalid_argument("green_batch: t must be positive");
  const double tc = std::cbrt(t);
  std::vector<double> args(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) args[i] = (xs[i] - b * t) / tc;
  std::vector<PhiResult> vals = phi_batch(a * tc, args, n);
  const double scale = 1.0 / std::pow(tc, n + 1);
  for (PhiResult& r : vals) {
    r.value *= scale;
    r.error_estimate *= scale;
  }
  return vals;
}

EnvelopeCertification certify_envelope(double a, int n, double x_min, double x_max,
                                       std::size_t n_samples) {
  if (!(x_min < -2.0 && x_max > 1.0)) {
    throw std::invalid_argument("certify_envelope: range must span [-2, 1]");
  }
  if (n_samples < 64) throw std::invalid_argument("certify_envelope: need >= 64 samples");

  // sample densely enough to resolve the oscillation at the deep end
  const double k_max = local_wavenumber(a, x_min);
  const std::size_t needed =
      static_cast<std::size_t>(std::ceil((x_max - x_min) * k_max / 0.25));
  const std::size_t m = std::max(n_samples, needed);
  std::vector<double> xs(m);
  for (std::size_t i = 0; i < m; ++i) {
    xs[i] = x_min + (x_max - x_min) * static_cast<double>(i) / static_cast<double>(m - 1);
  }
  const std::vector<PhiResult> vals = phi_batch(a, xs, n);

  EnvelopeCertification cert;
  cert.left.region = EnvelopeReport::Region::left;
  cert.right.region = EnvelopeReport::Region::right;

  // left side: local maxima of |Phi| against (1+|x|)^s
  {
    std::vector<double> lx, ly;
    std::vector<std::size_t> region;
    for (std::size_t i = 0; i < m; ++i) {
      if (xs[i] <= -2.0) region.push_back(i);
    }
    for (std::size_t r = 1; r + 1 < region.size(); ++r) {
      const std::size_t i = region[r];
      const double v = std::abs(vals[i].value);
      if (v > std::abs(vals[i - 1].value) && v > std::abs(vals[i + 1].value) && v > 0.0) {
        lx.push_back(std::log1p(std::abs(xs[i])));
        ly.push_back(std::log(v));
      }
    }
    if (lx.size() >= 3) {
      double slope = 0.0, icpt = 0.0;
      least_squares(lx, ly, slope, icpt);
      cert.left.fitted_rate = slope;
      cert.left.fitted_prefactor = std::exp(icpt);
      cert.left.r_squared = fit_r_squared(lx, ly, slope, icpt);
      double viol = 0.0;
      for (std::size_t i : region) {
        const double env =
            cert.left.fitted_prefactor * std::pow(1.0 + std::abs(xs[i]), slope);
        viol = std::max(viol, std::abs(vals[i].value) - env);
      }
      cert.left.max_violation = viol;
    }
  }

  // right side: log|Phi| linear in x^{3/2}
  {
    std::vector<double> rx, ry;
    std::vector<std::size_t> region;
    for (std::size_t i = 0; i < m; ++i) {
      if (xs[i] >= 1.0 && std::abs(vals[i].value) > 1e-250) {
        region.push_back(i);
        rx.push_back(std::pow(xs[i], 1.5));
        ry.push_back(std::log(std::abs(vals[i].value)));
      }
    }
    if (rx.size() >= 3) {
      double slope = 0.0, icpt = 0.0;
      least_squares(rx, ry, slope, icpt);
      cert.right.fitted_rate = -slope;
      cert.right.fitted_prefactor = std::exp(icpt);
      cert.right.r_squared = fit_r_squared(rx, ry, slope, icpt);
      double viol = 0.0;
      for (std::size_t k = 0; k < region.size(); ++k) {
        const double env = cert.right.fitted_prefactor * std::exp(slope * rx[k]);
        viol = std::max(viol, std::abs(vals[region[k]].value) - env);
      }
      cert.right.max_violation = viol;
    }
  }
  return cert;
}

double kernel_weighted_norm(double t, double y, double alpha, double eps, int n, double a,
                            double b) {
  if (!(t > 0.0)) throw std::invalid_argument("kernel_weighted_norm: t must be positive");
  const Weight w(WeightSpec{alpha, eps, std::nullopt});
  const double tc = std::cbrt(t);

  // integrate in s = x - y: rho(s + y) |d^n G(t, s)|^2; the kernel profile in s
  // is centered at b t with a super-exponential right tail, the weight caps the
  // left tail through e^{2 eps (s+y)}
  const double s_lo = std::min(b * t, -y) - 45.0 / eps;
  const double s_hi = b * t + 30.0 * tc + 1.0;

  // resolve twice the local oscillation of |Phi|^2 at the deep end
  const double arg_lo = (s_lo - b * t) / tc;
  const double k_x = 2.0 * local_wavenumber(a * tc, arg_lo) / tc;
  double h = std::min(0.1 / k_x, 0.05);
  std::size_t m = static_cast<std::size_t>(std::ceil((s_hi - s_lo) / h));
  m = std::min(m, static_cast<std::size_t>(800'000));
  if (m % 2 == 1) ++m;  // Simpson wants an even interval count
  h = (s_hi - s_lo) / static_cast<double>(m);

  std::vector<double> ss(m + 1);
  for (std::size_t i = 0; i <= m; ++i) ss[i] = s_lo + h * static_cast<double>(i);
  const std::vector<PhiResult> g = green_batch(t, ss, a, b, n);

  double sum = 0.0;
  for (std::size_t i = 0; i <= m; ++i) {
    const double f = w.value(ss[i] + y) * std::norm(g[i].value);
    const double coef = (i == 0 || i == m) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    sum += coef * f;
  }
  return sum * h / 3.0;
}

void write_phi_table_csv(std::ostream& os, const std::vector<KernelQuery>& queries) {
  os << "a,x,n,re,im,err_estimate\n";
  char buf[256];
  for (const KernelQuery& q : queries) {
    const PhiResult r = phi_full(q.a, q.x, q.derivative_order);
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%d,%.17g,%.17g,%.17g\n", q.a, q.x,
                  q.derivative_order, r.value.real(), r.value.imag(), r.error_estimate);
    os << buf;
  }
}

}  // namespace hnls::kernel
