#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hnls/kernel.hpp"
#include "hnls/oracle.hpp"
#include "hnls/quadrature.hpp"
#include "hnls/weights.hpp"

using namespace hnls;
using kernel::phi;

namespace {

// mpmath references (30 digits), from the absolutely convergent contour form
constexpr double kPhi00 = 0.246162703873882770978584791722;  // = 1/(3 Gamma(2/3))

// improper integral of Phi over the real line with a smooth left cutoff;
// the oscillatory tail has no stationary points, so the cutoff error is
// superalgebraically small
double phi_mass(double a_eff) {
  const double s_cut = 150.0, ramp = 60.0, s_hi = 18.0;
  const double lo = -s_cut - ramp;
  const double k_deep = std::sqrt((s_cut + ramp) / 3.0) + std::abs(a_eff) + 1.0;
  const double h = 0.08 / k_deep;
  std::size_t m = static_cast<std::size_t>((s_hi - lo) / h);
  if (m % 2 == 1) ++m;
  const double step = (s_hi - lo) / static_cast<double>(m);
  std::vector<double> ss(m + 1);
  for (std::size_t i = 0; i <= m; ++i) ss[i] = lo + step * static_cast<double>(i);
  const auto vals = kernel::phi_batch(a_eff, ss, 0);
  double sum = 0.0;
  for (std::size_t i = 0; i <= m; ++i) {
    const double cutoff = eval_eta((ss[i] + s_cut + ramp) / ramp);
    const double coef = (i == 0 || i == m) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    sum += coef * cutoff * vals[i].value.real();
  }
  // Phi integrates to a real number; imaginary parts cancel by symmetry only
  // for a = 0, so accumulate the full complex sum for general a
  cplx csum{0.0, 0.0};
  for (std::size_t i = 0; i <= m; ++i) {
    const double cutoff = eval_eta((ss[i] + s_cut + ramp) / ramp);
    const double coef = (i == 0 || i == m) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    csum += coef * cutoff * vals[i].value;
  }
  (void)sum;
  return std::abs(csum * (step / 3.0));
}

}  // namespace

TEST_CASE("phi: frozen high-precision references") {
  CHECK(std::abs(phi(0, 0, 0) - cplx{kPhi00, 0.0}) < 1e-10);
  CHECK(std::abs(phi(1, 3, 0) - cplx{0.0182468703284175805, 0.0242598832784057440}) < 1e-9);
  CHECK(std::abs(phi(1, 2, 1) - cplx{-0.0697035376507998851, -0.0156852001288653932}) < 1e-9);
  CHECK(std::abs(phi(0, -5, 0) - cplx{-0.267779652722961394, 0.0}) < 1e-9);
  CHECK(std::abs(phi(0, -5, 1) - cplx{-0.143932473630001117, 0.0}) < 1e-9);
  CHECK(std::abs(phi(2, -10, 0) - cplx{0.0313560866320912068, -0.0463561598370968809}) < 1e-9);
  CHECK(std::abs(phi(2, -10, 1) - cplx{0.278660112079832835, -0.345373058625397325}) < 1e-9);
  CHECK(std::abs(phi(0.5, 1.5, 0) - cplx{0.0930165458193754955, 0.0228357430216142153}) < 1e-9);
}

TEST_CASE("phi: conjugation symmetry and realness at a = 0") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> ua(-2.0, 2.0), ux(-20.0, 20.0);
  for (int i = 0; i < 24; ++i) {
    const double a = ua(rng), x = ux(rng);
    const cplx lhs = std::conj(phi(a, x, 0));
    const cplx rhs = phi(-a, x, 0);
    CHECK(std::abs(lhs - rhs) < 1e-9);
  }
  for (double x : {-18.0, -7.5, -1.0, 0.0, 2.0, 6.0}) {
    CHECK(std::abs(phi(0, x, 0).imag()) < 1e-10);
  }
}

TEST_CASE("phi: classical Airy reduction on [-10, 5]") {
  const double c = std::pow(3.0, -1.0 / 3.0);
  double worst = 0.0;
  for (int i = 0; i <= 300; ++i) {
    const double x = -10.0 + 15.0 * i / 300.0;
    const double want = c * oracle::airy_reference(c * x);
    worst = std::max(worst, std::abs(phi(0, x, 0) - cplx{want, 0.0}));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("phi: ODE residual at spec points") {
  CHECK(kernel::phi_ode_residual(0, -5) < 1e-6);
  CHECK(kernel::phi_ode_residual(1, 2) < 1e-6);
  CHECK(kernel::phi_ode_residual(0, 0) < 1e-8);
}

TEST_CASE("phi: ODE residual stays small across the quadrature/continuation switch") {
  // the evaluation path switches near x ~ -28 for a = 0; a residual blowup
  // there would reveal a mismatch between the two routes
  for (double x = -40.0; x <= -16.0; x += 0.5) {
    CHECK(kernel::phi_ode_residual(0, x) < 1e-6);
    CHECK(kernel::phi_ode_residual(0.8, x) < 1e-6);
  }
}

TEST_CASE("phi: deep-region conjugation symmetry (one ODE sweep each)") {
  for (double x : {-60.0, -120.0, -200.0}) {
    const cplx p = phi(1.3, x, 0);
    const cplx q = phi(-1.3, x, 0);
    CHECK(std::abs(std::conj(p) - q) < 1e-8);
    CHECK(std::abs(p) > 1e-3);  // the oscillatory envelope has no zeros this deep
  }
}

TEST_CASE("green: scaling identities and unit mass") {
  auto want = phi(0, 1.25, 0);
  CHECK(std::abs(kernel::green(1.0, 1.25, 0, 0, 0) - want) < 1e-12);
  CHECK(std::abs(kernel::green(8.0, 0, 0, 0, 0) - 0.5 * phi(0, 0, 0)) < 1e-12);
  CHECK_THROWS_AS(kernel::green(0.0, 1.0, 0, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(kernel::green(-1.0, 1.0, 0, 0, 0), std::invalid_argument);

  // int G(t,x) dx = int Phi(s) ds = 1; a_eff = a t^{1/3} varies with t
  for (double t : {0.1, 1.0}) {
    const double a_eff = 0.6 * std::cbrt(t);
    CHECK(std::abs(phi_mass(a_eff) - 1.0) < 1e-8);
  }
}

TEST_CASE("kernel_weighted_norm: (A.30) scaling probes") {
  // n = 0: sqrt(int) * t^{4/12} bounded as t -> 0; n = 1: exponent 9/12
  for (int n : {0, 1}) {
    const double expo = (5.0 * n + 4.0) / 12.0;
    std::vector<double> ratios;
    for (double t : {0.05, 0.1, 0.5, 1.0}) {
      const double val = kernel::kernel_weighted_norm(t, 0.0, 0.75, 0.5, n);
      ratios.push_back(std::sqrt(val) * std::pow(t, expo));
    }
    const double lo = *std::min_element(ratios.begin(), ratios.end());
    const double hi = *std::max_element(ratios.begin(), ratios.end());
    CHECK(hi / lo < 6.0);  // bounded, no blow-up trend as t shrinks
  }

  // growth in y no faster than rho^{1/2}(y) (1+y_+)^{(2n+1)/4}
  for (int n : {0, 1}) {
    const Weight w(WeightSpec{0.75, 0.5, std::nullopt});
    std::vector<double> scaled;
    for (double y : {0.0, 5.0, 15.0}) {
      const double val = kernel::kernel_weighted_norm(0.5, y, 0.75, 0.5, n);
      scaled.push_back(std::sqrt(val) /
                       (std::sqrt(w.value(y)) * std::pow(1.0 + std::max(y, 0.0),
                                                         (2.0 * n + 1.0) / 4.0)));
    }
    const double hi = *std::max_element(scaled.begin(), scaled.end());
    const double lo = *std::min_element(scaled.begin(), scaled.end());
    CHECK(hi / lo < 8.0);
  }
}

TEST_CASE("certify_envelope: left power law, right stretched exponential") {
  const auto cert = kernel::certify_envelope(0.0, 0, -200.0, 12.0, 4096);
  CHECK(cert.left.fitted_rate > -0.30);
  CHECK(cert.left.fitted_rate < -0.20);
  CHECK(cert.right.r_squared > 0.99);
  CHECK(cert.right.fitted_rate > 0.0);
  CHECK(cert.left.max_violation >= 0.0);

  const auto cert1 = kernel::certify_envelope(0.0, 1, -200.0, 12.0, 4096);
  CHECK(cert1.left.fitted_rate > 0.20);
  CHECK(cert1.left.fitted_rate < 0.30);

  CHECK_THROWS_AS(kernel::certify_envelope(0.0, 0, 1.0, 2.0, 128), std::invalid_argument);
}

TEST_CASE("phi table CSV") {
  std::vector<kernel::KernelQuery> q = {{0.0, 0.0, 0}, {1.0, 3.0, 0}, {0.0, -5.0, 1}};
  std::ostringstream os;
  kernel::write_phi_table_csv(os, q);
  const std::string s = os.str();
  CHECK(s.find("a,x,n,re,im,err_estimate") == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 4);
  CHECK(s.find("0.24616270") != std::string::npos);
}
