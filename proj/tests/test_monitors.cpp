#include <doctest.h>

#include <cmath>

#include "hyperflow/monitors.hpp"
#include "hyperflow/shapes.hpp"

using namespace hyperflow;

TEST_CASE("constants of the unit geodesic ball") {
  const Constants c = constants(2, 1.0);
  CHECK(c.lambda == doctest::Approx(3.4122762652849023).epsilon(1e-13));
  CHECK(c.Lambda == doctest::Approx(2.6260705709986626).epsilon(1e-14));
  CHECK(c.willmore_rhs == doctest::Approx(5.741818083789368).epsilon(1e-13));
  CHECK(c.r0 == doctest::Approx(0.46211715726000976).epsilon(1e-15));
  CHECK(c.omega == doctest::Approx(2.0 * M_PI));
  CHECK(constants(3, 1.0).omega == doctest::Approx(4.0 * M_PI));
  CHECK(constants(2, 1e-6).lambda < 1e-11);
  // n = 3: lambda = 4 pi (sinh 2 / 4 - 1 / 2)
  CHECK(constants(3, 1.0).lambda == doctest::Approx(4 * M_PI * (std::sinh(2.0) / 4 - 0.5)).epsilon(1e-10));
}

TEST_CASE("predicted T* and q on the cap") {
  const Constants c = constants(2, 1.0);
  CHECK(predicted_T_star(2.4854831851883801, c) == doctest::Approx(0.31691251370812095).epsilon(1e-13));
  const PolarGrid g(96, 192);
  const BallConfig b = make_ball_config(2, 1.0);
  const double q = willmore_q(fundamental_forms(embed(g, cap_graph(g, 2.0), b)), c);
  CHECK(q == doctest::Approx(9.620002712775164).epsilon(1e-3));
  CHECK(q > c.willmore_rhs);
}

TEST_CASE("q of the disk is the equality value") {
  const Constants c = constants(2, 1.0);
  const PolarGrid g(48, 96);
  const BallConfig b = make_ball_config(2, 1.0);
  const double q = willmore_q(fundamental_forms(embed(g, totally_geodesic_disk(g), b)), c);
  CHECK(std::abs(q / c.willmore_rhs - 1.0) < 1e-2);
}

TEST_CASE("plane fit") {
  const BallConfig b = make_ball_config(2, 1.0);
  const PolarGrid g(24, 48);
  const PlaneFit d = fit_totally_geodesic(fundamental_forms(embed(g, totally_geodesic_disk(g), b)));
  CHECK(d.hausdorff_proxy < 1e-12);
  CHECK(d.w(0) == doctest::Approx(1.0));
  const PlaneFit c = fit_totally_geodesic(fundamental_forms(embed(g, cap_graph(g, 2.0), b)));
  CHECK(c.hausdorff_proxy > 0.05 * b.r0);
}

TEST_CASE("records of the cap") {
  const Constants c = constants(2, 1.0);
  const BallConfig b = make_ball_config(2, 1.0);
  const PolarGrid g(24, 48);
  const TimeSeriesRecord r = make_record(fundamental_forms(embed(g, cap_graph(g, 2.0), b)), c, 0.0);
  CHECK(r.min_kappa > 0.6);
  CHECK(r.min_z1 > 0.0);
  CHECK(r.min_H <= r.max_H);
  CHECK(r.zeta_max == doctest::Approx(std::log(r.max_H) + std::log(std::cosh(1.0))).epsilon(1e-2));
  const TimeSeriesRecord d = make_record(fundamental_forms(embed(g, totally_geodesic_disk(g), b)), c, 0.0);
  CHECK(std::isnan(d.stahl_res));
}
