#include "hyperflow/monitors.hpp"

#include <cmath>
#include <limits>

#include "hyperflow/errors.hpp"

namespace hyperflow {

Constants constants(int n, double rho0) {
  if (n < 2) throw DomainError("constants: n must be >= 2");
  if (!(rho0 > 0.0)) throw DomainError("constants: rho0 must be positive");
  Constants c;
  c.n = n;
  c.rho0 = rho0;
  c.r0 = ball_radius_of_geodesic_ball(rho0);
  const double pi = 3.14159265358979323846;
  c.omega = 2.0 * std::pow(pi, 0.5 * n) / std::tgamma(0.5 * n);
  const double integral = adaptive_simpson(
      [n](double s) { return std::pow(std::sinh(s), n - 1); }, 0.0, rho0, 1e-12);
  c.lambda = c.omega * integral;
  c.Lambda = 2.0 / std::tanh(rho0) * std::pow(c.lambda, (2.0 - n) / n);
  c.willmore_rhs = -double(n * n) * std::pow(c.lambda, 2.0 / n) +
                   c.Lambda * c.omega * std::pow(std::sinh(rho0), n - 1);
  return c;
}

double predicted_T_star(double initial_area, const Constants& c) {
  if (!(initial_area > 0.0) || !(initial_area < c.lambda))
    throw DomainError("predicted_T_star: need 0 < |M0| < lambda");
  return std::log(c.lambda / initial_area);
}

double willmore_q(const SurfaceGeometry& s, const Constants& c) {
  const double n = c.n;
  const double A = area(s);
  const ScalarField integrand = (s.H.array().square() - n * n).matrix();
  return std::pow(A, (2.0 - n) / n) * integrate(s, integrand) + c.Lambda * boundary_length(s);
}

TimeSeriesRecord make_record(const SurfaceGeometry& s, const Constants& c, double t) {
  TimeSeriesRecord r;
  r.t = t;
  r.area = area(s);
  r.boundary_length = boundary_length(s);
  r.q = willmore_q(s, c);
  r.min_H = s.H.minCoeff();
  r.max_H = s.H.maxCoeff();
  r.max_A = std::sqrt(s.A2.maxCoeff());
  r.int_H2 = integral_Hp(s, 2.0);
  double zeta = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < s.H.size(); ++i)
    if (s.H(i) > 0.0) zeta = std::max(zeta, std::log(s.H(i)) + std::log(s.z(0, i)));
  r.zeta_max = zeta;
  if (r.min_H > 0.0) {
    const ScalarField logH = s.H.array().log().matrix();
    const Eigen::RowVectorXd dn = boundary_normal_derivative(s, logH);
    r.stahl_res = (dn.array() + 1.0 / std::tanh(c.rho0)).abs().maxCoeff();
  } else {
    r.stahl_res = std::numeric_limits<double>::quiet_NaN();
  }
  r.fb_res = free_boundary_residual(s);
  r.min_z1 = s.z.row(1).minCoeff();
  r.min_kappa = s.kmin.minCoeff();
  r.Htilde_max = s.Htilde.maxCoeff();
  return r;
}

Eigen::Matrix3Xd ball_positions(const SurfaceGeometry& s) {
  Eigen::Matrix3Xd x(3, s.z.cols());
  for (Eigen::Index i = 0; i < s.z.cols(); ++i) x.col(i) = s.z.col(i).tail<3>() / (1.0 + s.z(0, i));
  return x;
}

PlaneFit fit_totally_geodesic(const SurfaceGeometry& s) {
  const Eigen::Matrix3Xd x = ball_positions(s);
  const Eigen::Matrix3d S = x * x.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(S);
  if (es.info() != Eigen::Success || !(es.eigenvalues()(1) > 0.0))
    throw SingularGeometryError("fit_totally_geodesic: degenerate point cloud");
  Eigen::Vector3d w = es.eigenvectors().col(0);
  // sign convention: w points toward +e1 when possible
  if (w(0) < 0.0 || (w(0) == 0.0 && w.sum() < 0.0)) w = -w;
  return PlaneFit{w, (w.transpose() * x).cwiseAbs().maxCoeff()};
}

}  // namespace hyperflow
