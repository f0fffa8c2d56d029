#pragma once
// Minkowski space R^{n+1,1}, the hyperboloid model and the Poincare ball.
// Index 0 is timelike. All functions are templated on the Eigen expression
// so they work with fixed-size, dynamic and AutoDiff scalars alike.

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "hyperflow/errors.hpp"

namespace hyperflow {

template <typename Scalar, int Dim = Eigen::Dynamic>
using MinkowskiVector = Eigen::Matrix<Scalar, Dim, 1>;

using Vec4 = Eigen::Vector4d;

namespace detail {
template <typename Derived>
constexpr int plus_one() {
  constexpr int s = Derived::SizeAtCompileTime;
  return s == Eigen::Dynamic ? Eigen::Dynamic : s + 1;
}
template <typename Derived>
constexpr int minus_one() {
  constexpr int s = Derived::SizeAtCompileTime;
  return s == Eigen::Dynamic ? Eigen::Dynamic : s - 1;
}
}  // namespace detail

/// -a^0 b^0 + sum_i a^i b^i
template <typename DA, typename DB>
typename DA::Scalar minkowski_inner(const Eigen::MatrixBase<DA>& a,
                                    const Eigen::MatrixBase<DB>& b) {
  if (a.size() != b.size() || a.size() < 2)
    throw ContractViolation("minkowski_inner: dimension mismatch");
  const Eigen::Index m = a.size() - 1;
  return -a(0) * b(0) + a.tail(m).dot(b.tail(m));
}

/// Inverse stereographic projection x -> z.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, detail::plus_one<Derived>(), 1>
ball_to_hyperboloid(const Eigen::MatrixBase<Derived>& x) {
  using S = typename Derived::Scalar;
  using std::abs;
  const S r2 = x.squaredNorm();
  if (!(r2 < S(1))) throw DomainError("ball_to_hyperboloid: |x| >= 1");
  const S denom = S(1) - r2;
  Eigen::Matrix<S, detail::plus_one<Derived>(), 1> z(x.size() + 1);
  z(0) = (S(1) + r2) / denom;
  z.tail(x.size()) = (S(2) / denom) * x;
  return z;
}

/// x^i = z^i / (1 + z^0). Rejects points off the upper sheet.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, detail::minus_one<Derived>(), 1>
hyperboloid_to_ball(const Eigen::MatrixBase<Derived>& z, double tol = 1e-9) {
  using S = typename Derived::Scalar;
  using std::abs;
  const S q = minkowski_inner(z, z);
  // relative to z0^2: large points lose absolute precision in <z,z>
  const S scale = S(1) + z(0) * z(0);
  if (!(z(0) > S(0)) || abs(q + S(1)) > tol * scale)
    throw DomainError("hyperboloid_to_ball: point not on the upper sheet");
  return z.tail(z.size() - 1) / (S(1) + z(0));
}

/// arccosh(-<z,w>), evaluated as 2 asinh(|z-w|_M / 2) so nearby points keep
/// full relative precision.
template <typename DA, typename DB>
typename DA::Scalar geodesic_distance(const Eigen::MatrixBase<DA>& z,
                                      const Eigen::MatrixBase<DB>& w,
                                      double tol = 1e-12) {
  using S = typename DA::Scalar;
  using std::asinh;
  using std::sqrt;
  const S c = -minkowski_inner(z, w);
  if (c < S(1) - tol * (S(1) + c))
    throw DomainError("geodesic_distance: -<z,w> < 1");
  auto d = (z - w).eval();
  S q = minkowski_inner(d, d);
  if (q < S(0)) q = S(0);
  return S(2) * asinh(sqrt(q) / S(2));
}

/// rho(z) = arccosh z^0, distance to e_0.
template <typename Derived>
typename Derived::Scalar distance_to_origin(const Eigen::MatrixBase<Derived>& z) {
  using std::asinh;
  // sinh rho = |spatial part|, avoids acosh near 1
  return asinh(z.tail(z.size() - 1).norm());
}

/// Euclidean ball-model radius of the geodesic ball B(rho0): tanh(rho0/2).
inline double ball_radius_of_geodesic_ball(double rho0) {
  if (!(rho0 > 0.0) || !std::isfinite(rho0))
    throw DomainError("ball_radius_of_geodesic_ball: rho0 must be positive");
  return std::tanh(0.5 * rho0);
}

/// Signed distance from z to the totally geodesic hyperplane {<.,y> = 0}.
template <typename DA, typename DB>
typename DA::Scalar signed_distance_to_subspace(const Eigen::MatrixBase<DA>& z,
                                                const Eigen::MatrixBase<DB>& y_tilde,
                                                double tol = 1e-10) {
  using S = typename DA::Scalar;
  using std::abs;
  using std::asinh;
  if (abs(minkowski_inner(y_tilde, y_tilde) - S(1)) > tol)
    throw ContractViolation("signed_distance_to_subspace: y_tilde is not unit spacelike");
  return asinh(minkowski_inner(z, y_tilde));
}

/// Outward unit normal of the geodesic sphere through z centered at e_0,
/// i.e. grad rho = (-e0 + z^0 z) / sinh rho.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Derived::SizeAtCompileTime, 1>
sphere_outward_normal(const Eigen::MatrixBase<Derived>& z) {
  using S = typename Derived::Scalar;
  const Eigen::Index m = z.size() - 1;
  const S sh = z.tail(m).norm();
  if (!(sh > S(1e-14))) throw SingularGeometryError("sphere_outward_normal: z = e0");
  Eigen::Matrix<S, Derived::SizeAtCompileTime, 1> eta(z.size());
  eta(0) = sh;
  eta.tail(m) = (z(0) / sh) * z.tail(m);
  return eta;
}

/// Christoffel symbols of b = 4|dx|^2/(1-|x|^2)^2. Stored as a d x d^2
/// matrix: G(k, i*d + j) = Gamma^k_ij.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
ball_christoffel(const Eigen::MatrixBase<Derived>& x) {
  using S = typename Derived::Scalar;
  const S r2 = x.squaredNorm();
  if (!(r2 < S(1))) throw DomainError("ball_christoffel: |x| >= 1");
  const Eigen::Index d = x.size();
  const auto zs = ((S(2) / (S(1) - r2)) * x).eval();
  Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> G =
      Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>::Zero(d, d * d);
  for (Eigen::Index k = 0; k < d; ++k)
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) {
        S g = S(0);
        if (k == i) g += zs(j);
        if (k == j) g += zs(i);
        if (i == j) g -= zs(k);
        G(k, i * d + j) = g;
      }
  return G;
}

/// pi_*(x): position field of the ball pushed to the hyperboloid,
/// ((z^0)^2 - 1) e0 + z^0 z^i e_i.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Derived::SizeAtCompileTime, 1>
conformal_killing_field(const Eigen::MatrixBase<Derived>& z) {
  Eigen::Matrix<typename Derived::Scalar, Derived::SizeAtCompileTime, 1> out = z(0) * z;
  out(0) -= typename Derived::Scalar(1);
  return out;
}

/// Differential of hyperboloid_to_ball at z applied to a tangent vector dz.
template <typename DA, typename DB>
Eigen::Matrix<typename DA::Scalar, detail::minus_one<DA>(), 1>
hyperboloid_to_ball_differential(const Eigen::MatrixBase<DA>& z,
                                 const Eigen::MatrixBase<DB>& dz) {
  using S = typename DA::Scalar;
  const Eigen::Index m = z.size() - 1;
  const S a = S(1) + z(0);
  return dz.tail(m) / a - (dz(0) / (a * a)) * z.tail(m);
}

struct BallConfig {
  int n = 2;
  double rho0 = 1.0;
  double r0 = 0.0;
};

inline BallConfig make_ball_config(int n, double rho0) {
  if (n < 2) throw DomainError("BallConfig: n must be >= 2");
  return BallConfig{n, rho0, ball_radius_of_geodesic_ball(rho0)};
}

}  // namespace hyperflow
