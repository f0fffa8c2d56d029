#include <doctest.h>

#include <cmath>

#include "hyperflow/errors.hpp"
#include "hyperflow/shapes.hpp"
#include "hyperflow/surface.hpp"

using namespace hyperflow;

namespace {

// f = x^2 y + x = s^3 cos^2 sin + s cos
ScalarField sample(const PolarGrid& g) {
  ScalarField f(g.nodes());
  for (int j = 0; j < g.rings(); ++j)
    for (int k = 0; k < g.nt(); ++k) {
      const double s = g.s(j), t = g.theta(k);
      f(g.index(j, k)) = std::pow(s, 3) * std::cos(t) * std::cos(t) * std::sin(t) + s * std::cos(t);
    }
  return f;
}

double ds_error(int nr) {
  const PolarGrid g(nr, 2 * nr);
  const ScalarField d = d_s(g, sample(g));
  double e = 0.0;
  for (int j = 0; j < g.rings(); ++j)
    for (int k = 0; k < g.nt(); ++k) {
      const double s = g.s(j), t = g.theta(k);
      const double exact = 3 * s * s * std::cos(t) * std::cos(t) * std::sin(t) + std::cos(t);
      e = std::max(e, std::abs(d(g.index(j, k)) - exact));
    }
  return e;
}

}  // namespace

TEST_CASE("fornberg weights reproduce the centered stencils") {
  const Eigen::MatrixXd w = fornberg_weights(0.0, {-1.0, 0.0, 1.0}, 2);
  CHECK(w(1, 0) == doctest::Approx(-0.5));
  CHECK(w(1, 2) == doctest::Approx(0.5));
  CHECK(w(2, 0) == doctest::Approx(1.0));
  CHECK(w(2, 1) == doctest::Approx(-2.0));
}

TEST_CASE("polar grid contract") {
  CHECK_THROWS_AS(PolarGrid(4, 32), ContractViolation);
  CHECK_THROWS_AS(PolarGrid(16, 31), ContractViolation);
  const PolarGrid g(16, 32);
  CHECK(g.nodes() == 17 * 32);
  CHECK(g.s(0) == doctest::Approx(0.5 / 16));
  CHECK(g.s(16) == 1.0);
  CHECK(g.source(-1, 3) == g.index(0, 19));
}

TEST_CASE("radial derivative is second order through the axis and at the rim") {
  const double e1 = ds_error(16), e2 = ds_error(32);
  CHECK(std::log2(e1 / e2) > 1.8);
}

TEST_CASE("neumann ghost zeroes the one-sided derivative") {
  const PolarGrid g(12, 24);
  ScalarField u = sample(g);
  for (int k = 0; k < g.nt(); ++k)
    u(g.index(g.nr(), k)) = g.neumann_ghost(u(g.index(g.nr() - 1, k)), u(g.index(g.nr() - 2, k)));
  const ScalarField d = d_s(g, u);
  for (int k = 0; k < g.nt(); ++k) CHECK(std::abs(d(g.index(g.nr(), k))) < 1e-12);
}

TEST_CASE("geodesic sphere patch has H = 2 coth rho") {
  const PolarGrid g(64, 96);
  const SurfaceGeometry s = fundamental_forms(geodesic_sphere_patch(0.5, g));
  const double exact = 2.0 / std::tanh(0.5);
  CHECK(exact == doctest::Approx(4.327906).epsilon(1e-6));
  CHECK(((s.H.array() - exact).abs() / exact).maxCoeff() < 1e-3);
}

TEST_CASE("cap fixture: closed form, area and boundary length") {
  const BallConfig b = make_ball_config(2, 1.0);
  CHECK(2.0 * cap_principal_curvature(2.0, b.r0) == doctest::Approx(1.2763771923589823).epsilon(1e-14));
  double prev_a = 0.0, prev_l = 0.0;
  for (int nr : {24, 48, 96}) {
    const PolarGrid g(nr, 2 * nr);
    const SurfaceGeometry s = fundamental_forms(embed(g, cap_graph(g, 2.0), b));
    const double ea = std::abs(area(s) - 2.4854831851883801), el = std::abs(boundary_length(s) - 5.907205498306116);
    if (prev_a > 0.0) {
      CHECK(prev_a / ea > 3.0);
      CHECK(prev_l / el > 3.0);
    }
    prev_a = ea;
    prev_l = el;
  }
  CHECK(prev_a < 5e-4);
}

TEST_CASE("disk fixture is minimal and meets the sphere orthogonally") {
  const BallConfig b = make_ball_config(2, 1.0);
  const PolarGrid g(24, 48);
  const SurfaceGeometry s = fundamental_forms(embed(g, totally_geodesic_disk(g), b));
  CHECK(s.H.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(free_boundary_residual(s) < 1e-12);
  CHECK(s.z.row(1).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("embedding route and chart route agree on a perturbed graph") {
  const BallConfig b = make_ball_config(2, 1.0);
  double prev = 0.0;
  for (int nr : {24, 48}) {
    const PolarGrid g(nr, 2 * nr);
    const ScalarField u = perturbed_cap(g, 1.7, 0.2, Perturbation::angular);
    const SurfaceGeometry s = fundamental_forms(embed(g, u, b));
    const ScalarField Hc = mean_curvature_chart(g, u, b);
    const double d = (s.H - Hc).cwiseAbs().maxCoeff();
    if (prev > 0.0) CHECK(prev / d > 3.0);
    prev = d;
  }
}

TEST_CASE("weakly convex bisection lands in [0, 1e-4]") {
  const BallConfig b = make_ball_config(2, 1.0);
  const PolarGrid g(24, 48);
  const double eps = weak_convexity_eps(g, b, 2.0, Perturbation::radial, 0.0, 1.0);
  const double k = min_principal_curvature(g, perturbed_cap(g, 2.0, eps, Perturbation::radial), b);
  CHECK(k >= 0.0);
  CHECK(k <= 1e-4);
  CHECK_THROWS_AS(weak_convexity_eps(g, b, 2.0, Perturbation::radial, 0.0, 0.1), DomainError);
}
