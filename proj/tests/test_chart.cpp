#include <doctest.h>

#include <cmath>

#include "hyperflow/errors.hpp"
#include "hyperflow/moebius.hpp"

using namespace hyperflow;

namespace {
const double r0 = ball_radius_of_geodesic_ball(1.0);
}

TEST_CASE("chart factors at the axis") {
  const ChartMetric<double> m = chart_factors(0.0, 2.0, r0);
  CHECK(m.phi1 == doctest::Approx(0.21037724063443275).epsilon(1e-14));
  CHECK(m.phi2 == doctest::Approx(0.841508962537731).epsilon(1e-14));
  ChartPoint<double, 2> p{Eigen::Vector2d::Zero(), 2.0};
  CHECK(speed_factor_v(p, Eigen::Vector2d::Zero(), r0) ==
        doctest::Approx(4.753365891596966).epsilon(1e-14));
  p.lambda = 1.0;
  CHECK(speed_factor_v(p, Eigen::Vector2d::Zero(), r0) ==
        doctest::Approx(2.163953413738653).epsilon(1e-14));
  CHECK_THROWS_AS(chart_factors(0.0, -1.0, r0), DomainError);
}

TEST_CASE("chart lands in the half ball and lambda = 1 is the flat disk") {
  ChartPoint<double, 2> p{Eigen::Vector2d::Zero(), 2.0};
  CHECK(chart_to_hyperboloid(p, r0)(0) == doctest::Approx(1.0486094661970945).epsilon(1e-14));
  p.xi = Eigen::Vector2d(0.6, 0.0);
  p.lambda = 1.0;
  const Eigen::Vector3d x = chart_to_ball(p, r0);
  CHECK(x(0) == 0.0);
  for (double w : {0.0, 0.3, 1.0}) {
    ChartPoint<double, 2> q{Eigen::Vector2d(std::sqrt(w), 0.0), 3.0};
    CHECK(chart_to_ball(q, r0).norm() <= r0 * (1.0 + 1e-14));
  }
  // the unit circle of xi maps onto the sphere of radius r0
  ChartPoint<double, 2> e{Eigen::Vector2d(0.0, 1.0), 1.7};
  CHECK(chart_to_ball(e, r0).norm() == doctest::Approx(r0).epsilon(1e-14));
}

TEST_CASE("pullback metric is diagonal with factors phi1, phi2") {
  const double h = 1e-6;
  const ChartPoint<double, 2> p{Eigen::Vector2d(0.3, -0.4), 1.8};
  const ChartMetric<double> m = chart_metric(p, r0);
  auto z = [&](Eigen::Vector2d xi, double l) { return chart_to_hyperboloid(ChartPoint<double, 2>{xi, l}, r0); };
  const Vec4 zl = (z(p.xi, p.lambda + h) - z(p.xi, p.lambda - h)) / (2 * h);
  const Vec4 z1 = (z(p.xi + Eigen::Vector2d(h, 0), p.lambda) - z(p.xi - Eigen::Vector2d(h, 0), p.lambda)) / (2 * h);
  const Vec4 z2 = (z(p.xi + Eigen::Vector2d(0, h), p.lambda) - z(p.xi - Eigen::Vector2d(0, h), p.lambda)) / (2 * h);
  CHECK(minkowski_inner(zl, zl) == doctest::Approx(m.phi1 * m.phi1).epsilon(1e-8));
  CHECK(minkowski_inner(z1, z1) == doctest::Approx(m.phi2 * m.phi2).epsilon(1e-8));
  CHECK(std::abs(minkowski_inner(z1, zl)) < 1e-8);
  CHECK(std::abs(minkowski_inner(z1, z2)) < 1e-8);
  CHECK((chart_lambda_tangent(p, r0) - zl).norm() < 1e-8);
}
