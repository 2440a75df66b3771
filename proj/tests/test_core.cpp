#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hnls/fft.hpp"
#include "hnls/grid.hpp"
#include "hnls/spectral.hpp"
#include "test_util.hpp"

using namespace hnls;

TEST_CASE("make_grid: layout and spacing") {
  auto g = make_grid(M_PI, 8);
  CHECK(g->spacing == doctest::Approx(M_PI / 4.0).epsilon(1e-15));
  const std::vector<double> want = {0, 1, 2, 3, -4, -3, -2, -1};
  REQUIRE(g->wavenumbers.size() == 8);
  for (std::size_t k = 0; k < 8; ++k) {
    CHECK(g->wavenumbers[k] == doctest::Approx(want[k]).epsilon(1e-14));
  }
  CHECK(g->nodes.front() == doctest::Approx(-M_PI));

  auto g2 = make_grid(40.0, 1024);
  CHECK(g2->spacing == doctest::Approx(0.078125).epsilon(1e-15));
  CHECK(g2->spacing * static_cast<double>(g2->n_points) ==
        doctest::Approx(2.0 * g2->half_width));
}

TEST_CASE("make_grid: rejects bad input") {
  CHECK_THROWS_AS(make_grid(1.0, 7), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(-1.0, 16), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(0.0, 16), std::invalid_argument);
}

TEST_CASE("l2_norm_sq: zero, constant, gaussian") {
  auto g = make_grid(M_PI, 8);
  CHECK(l2_norm_sq(make_field(g)) == 0.0);

  Field ones = sample(g, [](double) { return cplx{1.0, 0.0}; });
  CHECK(l2_norm_sq(ones) == doctest::Approx(2.0 * M_PI).epsilon(1e-14));

  auto g2 = make_grid(40.0, 2048);
  Field gauss = sample(g2, [](double x) { return cplx{std::exp(-x * x), 0.0}; });
  // int e^{-2x^2} dx = sqrt(pi/2); tail beyond |x|=40 is negligible
  CHECK(std::abs(l2_norm_sq(gauss) - 1.2533141373155003) < 1e-10);
}

TEST_CASE("spectral_derivative: eigenmode, constant, analytic third derivative") {
  auto g = make_grid(M_PI, 64);
  Field mode = sample(g, [](double x) { return cplx{std::cos(x), std::sin(x)}; });
  Field d1 = spectral_derivative(mode, 1);
  for (std::size_t j = 0; j < mode.size(); ++j) {
    const cplx want = cplx{0.0, 1.0} * mode.values[j];
    CHECK(std::abs(d1.values[j] - want) < 1e-12);
  }

  Field constant = sample(g, [](double) { return cplx{3.5, -1.0}; });
  for (int order = 1; order <= 3; ++order) {
    Field d = spectral_derivative(constant, order);
    CHECK(max_abs(d) < 1e-12);
  }

  auto g2 = make_grid(M_PI, 128);
  Field s2 = sample(g2, [](double x) { return cplx{std::sin(2.0 * x), 0.0}; });
  Field d3 = spectral_derivative(s2, 3);
  double worst = 0.0;
  for (std::size_t j = 0; j < s2.size(); ++j) {
    worst = std::max(worst, std::abs(d3.values[j] - cplx{-8.0 * std::cos(2.0 * g2->nodes[j]), 0.0}));
  }
  CHECK(worst < 1e-10);

  CHECK_THROWS_AS(spectral_derivative(s2, 4), std::invalid_argument);
  CHECK_THROWS_AS(spectral_derivative(s2, 0), std::invalid_argument);
}

TEST_CASE("Parseval holds for random fields") {
  auto g = make_grid(17.0, 256);
  for (unsigned seed = 1; seed <= 8; ++seed) {
    Field u = testutil::random_smooth_field(g, seed, 40);
    const auto spec = spectrum(u);
    double sum = 0.0;
    for (const cplx& c : spec) sum += std::norm(c);
    const double parseval = 2.0 * g->half_width /
                            (static_cast<double>(g->n_points) * g->n_points) * sum;
    CHECK(testutil::rel_err(parseval, l2_norm_sq(u)) < 1e-12);
  }
}

TEST_CASE("derivative is linear and integrates to zero over the period") {
  auto g = make_grid(9.0, 128);
  Field u = testutil::random_smooth_field(g, 3);
  Field v = testutil::random_smooth_field(g, 4);
  Field lin = spectral_derivative(u + v, 1);
  Field sep = spectral_derivative(u, 1) + spectral_derivative(v, 1);
  double worst = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    worst = std::max(worst, std::abs(lin.values[j] - sep.values[j]));
  }
  CHECK(worst < 1e-11);

  // int (|u|^2)_x dx = 0
  Field mod = make_field(g);
  for (std::size_t j = 0; j < u.size(); ++j) mod.values[j] = std::norm(u.values[j]);
  Field dmod = spectral_derivative(mod, 1);
  cplx total{0.0, 0.0};
  for (const cplx& c : dmod.values) total += c;
  CHECK(std::abs(total) * g->spacing < 1e-10);
}

TEST_CASE("fft round trip") {
  auto g = make_grid(5.0, 64);
  Field u = testutil::random_smooth_field(g, 7, 20);
  auto round = fft::inverse(fft::forward(u.values));
  double worst = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) worst = std::max(worst, std::abs(round[j] - u.values[j]));
  CHECK(worst < 1e-13);
}
