#include <doctest.h>

#include <cmath>

#include "hyperflow/errors.hpp"
#include "hyperflow/flow.hpp"

using namespace hyperflow;

namespace {
const BallConfig ball = make_ball_config(2, 1.0);
}

TEST_CASE("rhs signs") {
  const PolarGrid g(16, 32);
  const FlowState cap = make_state(g, cap_graph(g, 2.0), ball);
  CHECK(imcf_rhs(cap, ball).maxCoeff() < 0.0);  // the cap moves toward lambda = 1
  CHECK(mcf_rhs(cap, ball).minCoeff() > 0.0);
  const FlowState disk = make_state(g, totally_geodesic_disk(g), ball);
  CHECK_THROWS_AS(imcf_rhs(disk, ball), FlowDegenerateError);
  CHECK(mcf_rhs(disk, ball).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("AutoDiff Jacobian matches central differences") {
  const PolarGrid g(12, 24);
  Ros2Stepper st(g, ball, FlowMode::imcf);
  const Eigen::VectorXd x = st.interior_of(perturbed_cap(g, 2.0, 0.2, Perturbation::angular));
  st.refresh_jacobian(x, st.rhs(x));
  Eigen::VectorXd v(x.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = std::sin(0.37 * i + 1.0);
  const double h = 1e-6;
  const Eigen::VectorXd fd = (st.rhs(x + h * v) - st.rhs(x - h * v)) / (2 * h);
  const Eigen::VectorXd jv = st.jacobian() * v;
  CHECK((fd - jv).cwiseAbs().maxCoeff() < 1e-5 * jv.cwiseAbs().maxCoeff());
}

TEST_CASE("Rosenbrock step is second order in dt") {
  const PolarGrid g(12, 24);
  auto integrate = [&](int steps) {
    FlowState s = make_state(g, perturbed_cap(g, 2.0, 0.2, Perturbation::radial), ball);
    const double dt = 0.008 / steps;
    for (int k = 0; k < steps; ++k) s = step(s, dt, ball, FlowMode::imcf);
    return s.u;
  };
  const ScalarField a = integrate(8), b = integrate(16), c = integrate(32);
  const double r = (a - b).cwiseAbs().maxCoeff() / (b - c).cwiseAbs().maxCoeff();
  CHECK(r > 3.0);
  CHECK(r < 5.5);
}

TEST_CASE("neumann condition is exact after a step") {
  const PolarGrid g(12, 24);
  const FlowState s = step(make_state(g, cap_graph(g, 2.0), ball), 1e-3, ball, FlowMode::imcf);
  const ScalarField us = d_s(g, s.u);
  for (int k = 0; k < g.nt(); ++k) CHECK(std::abs(us(g.index(g.nr(), k))) < 1e-10);
}

TEST_CASE("run: t_max = 0 gives a single record") {
  FlowConfig c;
  c.grid_radial = 16;
  c.grid_angular = 32;
  c.t_max = 0.0;
  const Trajectory tr = run(c);
  CHECK(tr.records.size() == 1);
  CHECK(tr.stop_reason == "t_max");
  CHECK(!tr.aborted);
}

TEST_CASE("run: strict mode refuses a non-convex start") {
  FlowConfig c;
  c.grid_radial = 16;
  c.grid_angular = 32;
  c.initial = InitialKind::perturbed_cap;
  c.eps = 0.3;
  c.perturbation = Perturbation::angular;
  const Trajectory tr = run(c);
  CHECK(tr.aborted);
  CHECK(tr.stop_reason.rfind("abort: strict convexity", 0) == 0);
}

TEST_CASE("run: mcf shrinks the cap") {
  FlowConfig c;
  c.grid_radial = 16;
  c.grid_angular = 32;
  c.mode = FlowMode::mcf;
  c.t_max = 0.02;
  const Trajectory tr = run(c);
  REQUIRE(tr.records.size() > 2);
  for (size_t k = 1; k < tr.records.size(); ++k) CHECK(tr.records[k].area < tr.records[k - 1].area);
}

TEST_CASE("run: n other than 2 is rejected") {
  FlowConfig c;
  c.n = 3;
  CHECK_THROWS_AS(run(c), ConfigError);
}
