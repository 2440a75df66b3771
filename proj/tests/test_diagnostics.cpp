#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "hnls/diagnostics.hpp"
#include "hnls/solver.hpp"
#include "hnls/spectral.hpp"
#include "test_util.hpp"

using namespace hnls;
namespace diag = hnls::diagnostics;

namespace {

Trajectory run_gaussian(GridPtr g, const EquationParams& p, const DampingSpec& d, double t_final,
                        double dt, std::size_t stride = 1) {
  Field u0 = testutil::gaussian_field(g, 1.0, 2.0, 0.0);
  SolveConfig cfg;
  cfg.t_final = t_final;
  cfg.dt = dt;
  cfg.snapshot_stride = stride;
  return solve(u0, p, d, cfg);
}

Trajectory zero_trajectory(GridPtr g, const EquationParams& p) {
  Trajectory traj;
  traj.params = p;
  traj.nonlinear = NonlinearConfig{};
  for (int i = 0; i <= 8; ++i) {
    traj.times.push_back(0.01 * i);
    traj.states.push_back(make_field(g));
  }
  return traj;
}

}  // namespace

TEST_CASE("identity names round-trip and unknown names fail loudly") {
  for (const std::string& name : diag::identity_names()) {
    CHECK(diag::to_string(diag::identity_from_string(name)) == name);
  }
  CHECK_THROWS_WITH_AS(diag::identity_from_string("mass"),
                       doctest::Contains("valid names"), std::invalid_argument);
}

TEST_CASE("energy_bracket: zero, real field, beta guard") {
  auto g = make_grid(20.0, 512);
  EquationParams p{0.4, 0.0, 1.3, 0.9, 0.0};
  CHECK(diag::energy_bracket(make_field(g), p) == 0.0);

  Field real_u = testutil::gaussian_field(g, 1.2, 2.0, 1.0);
  const Field ux = spectral_derivative(real_u, 1);
  double cube = 0.0;
  for (const cplx& v : real_u.values) cube += std::pow(std::abs(v), 3);
  const double want = l2_norm_sq(ux) - (2.0 * p.beta / 3.0) * cube * g->spacing;
  CHECK(diag::energy_bracket(real_u, p) == doctest::Approx(want).epsilon(1e-12));

  EquationParams nobeta{0.4, 0.0, 1.3, 0.0, 0.0};
  CHECK_THROWS_AS(diag::energy_bracket(real_u, nobeta), std::invalid_argument);
}

TEST_CASE("all residual series vanish on the zero trajectory") {
  auto g = make_grid(20.0, 256);
  EquationParams p{0.3, 0.1, 1.0, 1.0, 0.0};
  Trajectory traj = zero_trajectory(g, p);
  const WeightSpec w{0.0, 1.0, std::nullopt};
  for (const std::string& name : diag::identity_names()) {
    const diag::Identity id = diag::identity_from_string(name);
    auto series = diag::identity_residuals(
        traj, id, diag::identity_needs_weight(id) ? std::optional<WeightSpec>(w) : std::nullopt);
    CHECK(series.max_abs_residual() == 0.0);
  }
}

TEST_CASE("weight argument is validated per identity") {
  auto g = make_grid(20.0, 256);
  EquationParams p{0.3, 0.1, 1.0, 1.0, 0.0};
  Trajectory traj = zero_trajectory(g, p);
  CHECK_THROWS_AS(diag::identity_residuals(traj, diag::Identity::weighted_2_17),
                  std::invalid_argument);
  CHECK_THROWS_AS(diag::identity_residuals(traj, diag::Identity::mass_2_15,
                                           WeightSpec{0.0, 1.0, std::nullopt}),
                  std::invalid_argument);
}

TEST_CASE("mass balance (3.22) residual and its convergence order") {
  auto g = make_grid(40.0, 1024);
  EquationParams p{0.3, 0.1, 1.0, 1.0, 0.0};
  DampingSpec d{1.0, 5.0, DampingProfile::plateau_with_hole, {}};

  auto max_resid = [&](double dt) {
    Trajectory traj = run_gaussian(g, p, d, 0.5, dt);
    auto series = diag::identity_residuals(traj, diag::Identity::mass_balance_3_22);
    return series.max_abs_residual();
  };
  const double m0 = 2.0 * std::sqrt(M_PI / 2.0);  // mass of the width-2 Gaussian
  const double e1 = max_resid(2e-3);
  const double e2 = max_resid(1e-3);
  CHECK(e1 < 1e-6 * m0);
  CHECK(std::log2(e1 / e2) > 1.9);
}

TEST_CASE("differential identities on a nonlinear damped run are O(dt^2)") {
  auto g = make_grid(40.0, 1024);
  EquationParams p{0.3, 0.1, 1.0, 1.0, 0.0};
  DampingSpec d{0.5, 5.0, DampingProfile::smooth_bump_complement, {}};

  auto max_resid = [&](diag::Identity id, double dt) {
    Trajectory traj = run_gaussian(g, p, d, 0.2, dt);
    return diag::identity_residuals(traj, id).max_abs_residual();
  };

  for (diag::Identity id : {diag::Identity::mass_2_15, diag::Identity::h1_2_24,
                            diag::Identity::momentum_2_26, diag::Identity::h1_balance_3_27,
                            diag::Identity::momentum_balance_3_29,
                            diag::Identity::cubic_balance_3_31, diag::Identity::energy_3_32}) {
    const double e1 = max_resid(id, 8e-3);
    const double e2 = max_resid(id, 4e-3);
    INFO("identity ", diag::to_string(id), " e1=", e1, " e2=", e2);
    CHECK(e2 < e1 / 2.0);
  }
}

TEST_CASE("weighted smoothing (3.39): the lhs/rhs ratio is bounded and stable") {
  auto g = make_grid(40.0, 2048);
  EquationParams p{0.3, 0.1, 1.0, 1.0, 0.0};
  DampingSpec nod{};
  const WeightSpec w{0.75, 0.5, 10.0};  // truncated weight as in the paper's argument

  auto ratio = [&](double dt) {
    Trajectory traj = run_gaussian(g, p, nod, 0.2, dt);
    auto series =
        diag::identity_residuals(traj, diag::Identity::weighted_smoothing_3_39, w);
    double worst = 0.0;
    for (std::size_t i = 0; i < series.lhs.size(); ++i) {
      worst = std::max(worst, series.lhs[i] / series.rhs[i]);
    }
    return worst;
  };
  const double r1 = ratio(4e-3);
  const double r2 = ratio(2e-3);
  CHECK(std::isfinite(r1));
  CHECK(r1 < 50.0);
  CHECK(std::abs(r1 - r2) < 0.2 * std::max(std::abs(r1), 1.0));
}

TEST_CASE("energy bracket drift vanishes with d = 0 and halves under dt-halving") {
  auto g = make_grid(40.0, 1024);
  EquationParams p{0.3, 0.0, 1.0, 1.0, 0.0};
  DampingSpec nod{};

  auto drift = [&](double dt) {
    Trajectory traj = run_gaussian(g, p, nod, 1.0, dt, 10);
    const double e0 = diag::energy_bracket(traj.initial(), p);
    double worst = 0.0;
    for (const Field& s : traj.states) {
      worst = std::max(worst, std::abs(diag::energy_bracket(s, p) - e0));
    }
    return worst / std::abs(e0);
  };
  const double d1 = drift(1e-3);
  const double d2 = drift(5e-4);
  CHECK(d1 < 1e-4);
  CHECK(d2 < d1 / 2.0);
}

TEST_CASE("local smoothing sigma: zero, refinement stability, crude bound") {
  EquationParams p{0.0, 0.0, 0.0, 0.0, 0.0};
  auto g = make_grid(40.0, 1024);
  CHECK(diag::local_smoothing_sigma(zero_trajectory(g, p)) == 0.0);

  auto run = [&](std::size_t n) {
    auto gg = make_grid(40.0, n);
    return run_gaussian(gg, p, DampingSpec{}, 1.0, 2e-3, 25);
  };
  Trajectory coarse = run(1024);
  Trajectory fine = run(2048);
  const double s1 = diag::local_smoothing_sigma(coarse);
  const double s2 = diag::local_smoothing_sigma(fine);
  CHECK(s1 > 0.0);
  CHECK(std::abs(s1 - s2) < 0.02 * s1);

  double bound = 0.0;
  for (const Field& s : coarse.states) {
    bound = std::max(bound, l2_norm_sq(spectral_derivative(s, 1)));
  }
  CHECK(s1 <= bound * 1.0 + 1e-12);
}

TEST_CASE("decay_fit: exact law, hole damping, conservation") {
  auto g = make_grid(40.0, 1024);
  EquationParams p{0.3, 0.1, 1.0, 1.0, 0.0};

  SUBCASE("constant damping pins gamma to 2 d0") {
    DampingSpec d{0.5, 1.0, DampingProfile::constant, {}};
    Trajectory traj = run_gaussian(g, p, d, 2.0, 1e-3, 20);
    auto rep = diag::decay_fit(traj, d);
    CHECK(rep.monotone);
    CHECK(std::abs(rep.gamma_hat - 1.0) < 1e-3);
    REQUIRE(rep.gamma_formula.has_value());
    CHECK(*rep.gamma_formula == doctest::Approx(1.0));
  }

  SUBCASE("hole damping decays monotonically with a positive fitted rate") {
    DampingSpec d{1.0, 5.0, DampingProfile::plateau_with_hole, {}};
    Trajectory traj = run_gaussian(g, p, d, 6.0, 1e-3, 50);
    auto rep = diag::decay_fit(traj, d);
    CHECK(rep.monotone);
    CHECK(rep.gamma_hat > 0.0);
    CHECK(rep.r_squared > 0.9);
    CHECK(!rep.gamma_formula.has_value());
  }

  SUBCASE("no damping: flat mass, near-zero rate") {
    Trajectory traj = run_gaussian(g, p, DampingSpec{}, 1.0, 1e-3, 20);
    auto rep = diag::decay_fit(traj, DampingSpec{});
    CHECK(std::abs(rep.gamma_hat) < 1e-6);
    REQUIRE(rep.gamma_formula.has_value());
    CHECK(*rep.gamma_formula == 0.0);
  }
}

TEST_CASE("stability_gap: zero perturbation and quadratic amplitude scaling") {
  auto g = make_grid(40.0, 1024);
  EquationParams p{0.3, 0.1, 1.0, 1.0, 0.0};
  DampingSpec nod{};
  Field u0 = testutil::gaussian_field(g, 1.0, 2.0, 0.0);
  SolveConfig cfg;
  cfg.t_final = 0.5;
  cfg.dt = 1e-3;
  cfg.snapshot_stride = 25;
  Trajectory base = solve(u0, p, nod, cfg);

  SUBCASE("identical data gives the zero series") {
    auto saga = diag::stability_gap(base, base, 0.75, 0.5);
    for (double v : saga.gaps) CHECK(v == 0.0);
    for (double r : saga.ratios) CHECK(r == 0.0);
  }

  SUBCASE("gap ratio is stable across perturbation amplitudes") {
    auto perturbed = [&](double amp) {
      Field v0 = u0;
      Field bump = testutil::gaussian_field(g, amp, 1.0, 2.0);
      for (std::size_t j = 0; j < v0.size(); ++j) v0.values[j] += bump.values[j];
      return solve(v0, p, nod, cfg);
    };
    auto s_small = diag::stability_gap(base, perturbed(1e-3), 0.75, 0.5);
    auto s_big = diag::stability_gap(base, perturbed(2e-3), 0.75, 0.5);
    // quadratic in the amplitude: 2x amplitude -> ~4x gap
    CHECK(s_big.gaps.front() == doctest::Approx(4.0 * s_small.gaps.front()).epsilon(1e-6));
    CHECK(s_big.gaps.back() > 3.2 * s_small.gaps.back());
    CHECK(s_big.gaps.back() < 4.8 * s_small.gaps.back());
    // ratio-to-initial agrees within 20% across amplitudes
    CHECK(std::abs(s_big.ratios.back() - s_small.ratios.back()) <
          0.2 * std::max(s_small.ratios.back(), 1.0));
    // bounded over the run
    for (double r : s_small.ratios) CHECK(r < 50.0);
  }
}

TEST_CASE("series CSV emission") {
  auto g = make_grid(40.0, 512);
  EquationParams p{0.3, 0.1, 1.0, 1.0, 0.0};
  Trajectory traj = run_gaussian(g, p, DampingSpec{}, 0.05, 1e-2);
  auto series = diag::identity_residuals(traj, diag::Identity::mass_2_15);
  std::ostringstream os;
  write_series_csv(os, series);
  const std::string text = os.str();
  CHECK(text.rfind("t,lhs,rhs,residual\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') ==
        static_cast<long>(series.times.size()) + 1);
}
