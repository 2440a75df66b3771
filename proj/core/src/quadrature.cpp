#include "hnls/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace hnls::quad {

namespace {

GaussRule build_rule(int n) {
  if (n < 2 || n > 64) throw std::invalid_argument("gauss_legendre: order out of range");
  GaussRule rule;
  rule.nodes.assign(n, 0.0L);
  rule.weights.assign(n, 0.0L);
  const long double pi = 3.14159265358979323846264338327950288L;
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    long double x = std::cos(pi * (static_cast<long double>(i) + 0.75L) /
                             (static_cast<long double>(n) + 0.5L));
    long double dp = 0.0L;
    for (int iter = 0; iter < 100; ++iter) {
      long double p0 = 1.0L, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0L);
      const long double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-19L) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const long double w = 2.0L / ((1.0L - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

const GaussRule& default_rule() { return gauss_legendre(12); }

std::complex<long double> panel(const ComplexIntegrand& f, const GaussRule& r, long double a,
                                long double b, std::size_t& evals) {
  const long double mid = 0.5L * (a + b);
  const long double hal = 0.5L * (b - a);
  std::complex<long double> s{0.0L, 0.0L};
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    s += r.weights[i] * f(mid + hal * r.nodes[i]);
  }
  evals += r.nodes.size();
  return hal * s;
}

void adapt(const ComplexIntegrand& f, const GaussRule& r, long double a, long double b,
           std::complex<long double> whole, long double abs_tol, long double rel_tol, int depth,
           Result& out, std::size_t max_evals) {
  const long double mid = 0.5L * (a + b);
  const std::complex<long double> left = panel(f, r, a, mid, out.evaluations);
  const std::complex<long double> right = panel(f, r, mid, b, out.evaluations);
  const std::complex<long double> split = left + right;
  const long double err = std::abs(split - whole);
  const long double goal = std::max(abs_tol, rel_tol * std::abs(split));
  if (err <= goal || depth <= 0 || out.evaluations > max_evals) {
    out.value += split;
    out.error_estimate += err;
    if (err > goal) out.converged = false;
    return;
  }
  adapt(f, r, a, mid, left, 0.5L * abs_tol, rel_tol, depth - 1, out, max_evals);
  adapt(f, r, mid, b, right, 0.5L * abs_tol, rel_tol, depth - 1, out, max_evals);
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  static std::map<int, GaussRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, build_rule(order)).first;
  return it->second;
}

Result integrate(const ComplexIntegrand& f, long double a, long double b, long double abs_tol,
                 long double rel_tol, int max_depth, std::size_t max_evaluations) {
  Result out;
  if (a == b) return out;
  const GaussRule& r = default_rule();
  const std::complex<long double> whole = panel(f, r, a, b, out.evaluations);
  adapt(f, r, a, b, whole, abs_tol, rel_tol, max_depth, out, max_evaluations);
  return out;
}

double integrate_real(const std::function<double(double)>& f, double a, double b, double abs_tol,
                      double rel_tol) {
  Result res = integrate(
      [&f](long double x) {
        return std::complex<long double>(f(static_cast<double>(x)), 0.0L);
      },
      a, b, abs_tol, rel_tol);
  return static_cast<double>(res.value.real());
}

}  // namespace hnls::quad
