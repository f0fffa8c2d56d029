#include <doctest.h>

#include <cmath>

#include "hyperflow/errors.hpp"
#include "hyperflow/hyperbolic.hpp"

using namespace hyperflow;

TEST_CASE("minkowski inner product of the base point with a point at distance 1") {
  const Vec4 e0(1, 0, 0, 0);
  const Vec4 z(std::cosh(1.0), std::sinh(1.0), 0, 0);
  CHECK(minkowski_inner(e0, z) == doctest::Approx(-1.5430806348152437).epsilon(1e-15));
  CHECK(minkowski_inner(z, z) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK_THROWS_AS(minkowski_inner(Eigen::Vector3d(1, 0, 0), e0), ContractViolation);
}

TEST_CASE("ball and hyperboloid models") {
  const Vec4 z = ball_to_hyperboloid(Eigen::Vector3d(0.5, 0, 0));
  CHECK(z(0) == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  CHECK(z(1) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(z(2) == 0.0);
  CHECK_THROWS_AS(ball_to_hyperboloid(Eigen::Vector3d(1.0, 0, 0)), DomainError);

  const Eigen::Vector3d x(0.3, -0.2, 0.55);
  const Eigen::Vector3d back = hyperboloid_to_ball(ball_to_hyperboloid(x));
  CHECK((back - x).norm() < 1e-15);
  CHECK_THROWS_AS(hyperboloid_to_ball(Vec4(1, 1, 0, 0)), DomainError);
}

TEST_CASE("geodesic distance") {
  const Vec4 o(1, 0, 0, 0);
  const Vec4 z = ball_to_hyperboloid(Eigen::Vector3d(std::tanh(0.5), 0, 0));
  CHECK(geodesic_distance(o, z) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(distance_to_origin(z) == doctest::Approx(1.0).epsilon(1e-14));
  // nearby points keep their relative accuracy
  const Vec4 w = ball_to_hyperboloid(Eigen::Vector3d(std::tanh(0.5) + 1e-10, 0, 0));
  const double d = geodesic_distance(z, w);
  const double expect = 2.0 * 1e-10 / (1.0 - std::pow(std::tanh(0.5), 2));
  CHECK(std::abs(d / expect - 1.0) < 1e-5);
  CHECK(geodesic_distance(z, z) == 0.0);
}

TEST_CASE("geodesic ball radius and sphere normal") {
  CHECK(ball_radius_of_geodesic_ball(1.0) == doctest::Approx(0.46211715726000976).epsilon(1e-15));
  const Vec4 z(std::cosh(1.0), 0, std::sinh(1.0), 0);
  const Vec4 eta = sphere_outward_normal(z);
  CHECK(minkowski_inner(eta, eta) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(minkowski_inner(eta, z)) < 1e-14);
  CHECK(eta(0) == doctest::Approx(std::sinh(1.0)));
  CHECK_THROWS_AS(sphere_outward_normal(Vec4(1, 0, 0, 0)), SingularGeometryError);
}

TEST_CASE("signed distance to a totally geodesic subspace") {
  const Vec4 y(0, 1, 0, 0);
  const Vec4 z(std::cosh(0.7), std::sinh(0.7), 0, 0);
  CHECK(signed_distance_to_subspace(z, y) == doctest::Approx(0.7).epsilon(1e-14));
  CHECK_THROWS_AS(signed_distance_to_subspace(z, Vec4(0, 2, 0, 0)), ContractViolation);
}

TEST_CASE("conformal position field is tangent to the hyperboloid") {
  const Vec4 z = ball_to_hyperboloid(Eigen::Vector3d(0.2, 0.1, -0.3));
  const Vec4 X = conformal_killing_field(z);
  CHECK(std::abs(minkowski_inner(X, z)) < 1e-14);
}

TEST_CASE("ball christoffel symbols are symmetric") {
  const Eigen::Vector3d x(0.1, 0.2, 0.3);
  const auto G = ball_christoffel(x);
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(G(k, i * 3 + j) == doctest::Approx(G(k, j * 3 + i)));
}
