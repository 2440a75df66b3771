#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "hnls/linear.hpp"
#include "hnls/solver.hpp"
#include "hnls/trajectory_io.hpp"
#include "test_util.hpp"

using namespace hnls;

namespace {

SolveConfig base_config(double t_final, double dt, Scheme scheme = Scheme::strang_split) {
  SolveConfig cfg;
  cfg.t_final = t_final;
  cfg.dt = dt;
  cfg.scheme = scheme;
  cfg.snapshot_stride = 1;
  return cfg;
}

}  // namespace

TEST_CASE("step_strang reduces to the exact linear flow when N is trivial") {
  auto g = make_grid(20.0, 256);
  Field u0 = testutil::gaussian_field(g, 1.0, 2.0, 0.0);
  EquationParams p{0.7, -0.4, 0.0, 0.0, 0.0};
  DampingSpec nod{};
  Field stepped = step_strang(u0, 0.01, p, nod, NonlinearConfig{});
  Field exact = propagate(u0, 0.01, p.a, p.b);
  CHECK(l2_distance(stepped, exact) < 1e-13);
}

TEST_CASE("solve: zero datum, boundary guard, config validation") {
  auto g = make_grid(20.0, 256);
  EquationParams p{0.0, 0.0, 1.0, 1.0, 0.0};
  DampingSpec nod{};

  Trajectory traj = solve(make_field(g), p, nod, base_config(0.1, 1e-2));
  for (const Field& s : traj.states) CHECK(max_abs(s) == 0.0);

  Field flat = sample(g, [](double) { return cplx{1.0, 0.0}; });
  CHECK_THROWS_AS(solve(flat, p, nod, base_config(0.1, 1e-2)), std::invalid_argument);

  SolveConfig bad = base_config(0.1, 0.2);
  Field u0 = testutil::gaussian_field(g, 1.0, 2.0, 0.0);
  CHECK_THROWS_AS(solve(u0, p, nod, bad), std::invalid_argument);

  SolveConfig nodiv = base_config(0.1, 0.03);
  CHECK_THROWS_AS(solve(u0, p, nod, nodiv), std::invalid_argument);
}

TEST_CASE("solve: NaN abort carries the step index") {
  auto g = make_grid(20.0, 256);
  Field u0 = testutil::gaussian_field(g, 1e160, 2.0, 0.0);
  EquationParams p{0.0, 0.0, 1.0, 0.0, 0.0};
  DampingSpec nod{};
  CHECK_THROWS_AS(solve(u0, p, nod, base_config(0.1, 1e-2)), NumericalAbort);
}

TEST_CASE("solve: self-convergence order of the Strang step is ~2") {
  auto g = make_grid(40.0, 512);
  Field u0 = testutil::gaussian_field(g, 1.0, 2.0, 0.0);
  EquationParams p{0.5, 0.3, 1.0, 1.0, 0.0};
  DampingSpec nod{};

  auto final_state = [&](double dt) {
    return solve(u0, p, nod, base_config(0.5, dt)).final_state();
  };
  Field c = final_state(4e-3);
  Field m = final_state(2e-3);
  Field f = final_state(1e-3);
  const double e1 = l2_distance(c, m);
  const double e2 = l2_distance(m, f);
  const double order = std::log2(e1 / e2);
  CHECK(order >= 1.9);
}

TEST_CASE("solve: mass conservation and the exact constant-damping law") {
  auto g = make_grid(40.0, 1024);
  Field u0 = testutil::gaussian_field(g, 1.0, 2.0, 0.0);
  EquationParams p{0.3, 0.1, 1.0, 1.0, 0.0};

  SUBCASE("d = 0 conserves mass to scheme accuracy") {
    Trajectory traj = solve(u0, p, DampingSpec{}, base_config(1.0, 1e-3));
    CHECK(testutil::rel_err(l2_norm_sq(traj.final_state()), l2_norm_sq(u0)) < 1e-8);
  }

  SUBCASE("constant d integrates to e^{-2 d0 t} exactly") {
    DampingSpec d{0.5, 1.0, DampingProfile::constant, {}};
    Trajectory traj = solve(u0, p, d, base_config(1.0, 1e-3));
    const double want = std::exp(-1.0) * l2_norm_sq(u0);
    CHECK(testutil::rel_err(l2_norm_sq(traj.final_state()), want) < 1e-6);
  }

  SUBCASE("mass is monotone under Condition-A damping") {
    DampingSpec d{1.0, 5.0, DampingProfile::plateau_with_hole, {}};
    Trajectory traj = solve(u0, p, d, base_config(1.0, 1e-3));
    double prev = l2_norm_sq(traj.states.front());
    for (std::size_t i = 1; i < traj.size(); ++i) {
      const double cur = l2_norm_sq(traj.states[i]);
      CHECK(cur <= prev + 1e-10 * l2_norm_sq(u0));
      prev = cur;
    }
  }
}

TEST_CASE("solve: schemes agree on the Gaussian benchmark") {
  auto g = make_grid(40.0, 1024);
  Field u0 = testutil::gaussian_field(g, 1.0, 2.0, 0.0);
  EquationParams p{0.5, 0.2, 1.0, 1.0, 0.0};
  DampingSpec nod{};

  Trajectory strang = solve(u0, p, nod, base_config(0.5, 1e-3, Scheme::strang_split));
  Trajectory ifrk = solve(u0, p, nod, base_config(0.5, 1e-3, Scheme::if_rk4));
  CHECK(l2_distance(strang.final_state(), ifrk.final_state()) < 1e-5);

  // the Picard mode is restricted to short horizons; compare on t <= 0.2
  Trajectory strang_short = solve(u0, p, nod, base_config(0.2, 1e-3, Scheme::strang_split));
  auto [picard, report] = picard_solve(u0, p, nod, base_config(0.2, 1e-3, Scheme::picard_duhamel));
  CHECK(report.converged);
  CHECK(l2_distance(strang_short.final_state(), picard.final_state()) < 1e-5);
}

TEST_CASE("solve: boundary contamination raises the warning flag") {
  auto g = make_grid(10.0, 512);
  Field u0 = testutil::gaussian_field(g, 1.0, 1.0, 0.0);
  EquationParams p{0.0, 0.0, 0.0, 0.0, 0.0};  // pure dispersion spreads fast
  Trajectory traj = solve(u0, p, DampingSpec{}, base_config(2.0, 1e-3));
  CHECK(traj.boundary_warning);
  CHECK(traj.max_edge_ratio > 1e-6);
}

TEST_CASE("picard_solve: trivial contraction and ratio reporting") {
  auto g = make_grid(20.0, 256);
  Field u0 = testutil::gaussian_field(g, 0.5, 2.0, 0.0);

  SUBCASE("lambda = beta = 0 converges immediately") {
    EquationParams p{0.4, -0.2, 0.0, 0.0, 0.0};
    auto [traj, report] = picard_solve(u0, p, DampingSpec{}, base_config(0.1, 1e-3));
    CHECK(report.converged);
    CHECK(report.iterations == 1);
    CHECK(l2_distance(traj.final_state(), propagate(u0, 0.1, p.a, p.b)) < 1e-12);
  }

  SUBCASE("small data contracts geometrically") {
    EquationParams p{0.0, 0.0, 1.0, 1.0, 0.01};
    SolveConfig cfg = base_config(0.05, 5e-4);
    cfg.nonlinear.delta = 0.01;
    auto [traj, report] = picard_solve(u0, p, DampingSpec{}, cfg);
    CHECK(report.converged);
    for (double r : report.contraction_ratios) CHECK(r < 0.9);
  }

  SUBCASE("long horizons are rejected") {
    EquationParams p{0.0, 0.0, 1.0, 1.0, 0.0};
    CHECK_THROWS_AS(picard_solve(u0, p, DampingSpec{}, base_config(0.5, 1e-3)),
                    std::invalid_argument);
  }
}

TEST_CASE("delta_continuation: monotone gaps and the repeated-delta edge case") {
  auto g = make_grid(40.0, 512);
  Field u0 = testutil::gaussian_field(g, 1.0, 2.0, 0.0);
  EquationParams p{0.3, 0.1, 1.0, 1.0, 0.0};
  SolveConfig cfg = base_config(0.5, 1e-3);

  SUBCASE("decreasing deltas give decreasing gaps") {
    DeltaContinuationReport rep =
        delta_continuation(u0, p, DampingSpec{}, cfg, {1e-1, 1e-2, 1e-3, 1e-4});
    REQUIRE(rep.gaps.size() == 3);
    CHECK(rep.gaps[0] > rep.gaps[1]);
    CHECK(rep.gaps[1] > rep.gaps[2]);
  }

  SUBCASE("equal deltas give a zero gap") {
    DeltaContinuationReport rep = delta_continuation(u0, p, DampingSpec{}, cfg, {0.5, 0.5});
    REQUIRE(rep.gaps.size() == 1);
    CHECK(rep.gaps[0] == 0.0);
  }

  SUBCASE("increasing deltas are rejected") {
    CHECK_THROWS_AS(delta_continuation(u0, p, DampingSpec{}, cfg, {1e-3, 1e-2}),
                    std::invalid_argument);
  }
}

TEST_CASE("trajectory binary serialization round-trips bit-exactly") {
  auto g = make_grid(20.0, 256);
  Field u0 = testutil::gaussian_field(g, 1.0, 2.0, 0.0);
  EquationParams p{0.3, 0.1, 1.0, 1.0, 0.0};
  SolveConfig cfg = base_config(0.05, 1e-2);
  Trajectory traj = solve(u0, p, DampingSpec{}, cfg);

  std::stringstream buf;
  save_trajectory_binary(buf, traj);
  Trajectory back = load_trajectory_binary(buf);
  REQUIRE(back.size() == traj.size());
  CHECK(back.initial().grid->half_width == 20.0);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    CHECK(back.times[i] == traj.times[i]);
    for (std::size_t j = 0; j < traj.states[i].size(); ++j) {
      CHECK(back.states[i].values[j] == traj.states[i].values[j]);
    }
  }

  std::ostringstream csv;
  save_trajectory_csv(csv, traj);
  CHECK(csv.str().rfind("t,x,re,im\n", 0) == 0);
}

TEST_CASE("time reversal of the pure linear flow") {
  auto g = make_grid(30.0, 512);
  Field u0 = testutil::gaussian_field(g, 1.0, 2.0, 0.0);
  Field fwd = propagate(u0, 3.0, 1.1, -0.7);
  Field back = propagate(fwd, -3.0, 1.1, -0.7);
  CHECK(l2_distance(back, u0) < 1e-11);
}
