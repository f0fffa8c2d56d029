#include "hyperflow/shapes.hpp"

#include <cmath>

#include "hyperflow/errors.hpp"

namespace hyperflow {

Embedding geodesic_sphere_patch(double rho_c, const PolarGrid& grid, double alpha) {
  if (!(rho_c > 0.0)) throw DomainError("geodesic_sphere_patch: rho_c must be positive");
  Embedding e{grid, Field<4>(4, grid.nodes()), Field<4>(4, grid.nodes())};
  const double ch = std::cosh(rho_c), sh = std::sinh(rho_c);
  for (int j = 0; j < grid.rings(); ++j) {
    const double a = alpha * grid.s(j);
    for (int k = 0; k < grid.nt(); ++k) {
      const int i = grid.index(j, k);
      const double th = grid.theta(k);
      e.z.col(i) = Vec4(ch, sh * std::cos(a), sh * std::sin(a) * std::cos(th),
                        sh * std::sin(a) * std::sin(th));
      e.ref.col(i) = Vec4(-1.0, 0.0, 0.0, 0.0);
    }
  }
  return e;
}

ScalarField cap_graph(const PolarGrid& grid, double lambda_c) {
  if (!(lambda_c > 1.0)) throw DomainError("cap_graph: lambda_c must exceed 1");
  return ScalarField::Constant(grid.nodes(), lambda_c);
}

ScalarField perturbed_cap(const PolarGrid& grid, double lambda_c, double eps, Perturbation mode) {
  ScalarField u(grid.nodes());
  for (int j = 0; j < grid.rings(); ++j) {
    const double s = grid.s(j);
    const double b = (1.0 - s * s) * (1.0 - s * s);
    for (int k = 0; k < grid.nt(); ++k) {
      const double p = mode == Perturbation::radial ? b : s * b * std::cos(grid.theta(k));
      u(grid.index(j, k)) = lambda_c + eps * p;
    }
  }
  return u;
}

ScalarField totally_geodesic_disk(const PolarGrid& grid) {
  return ScalarField::Ones(grid.nodes());
}

double cap_principal_curvature(double lambda_c, double r0) {
  const double p = r0 * (lambda_c - 1.0) / (lambda_c + 1.0);
  const double c = (r0 * r0 + p * p) / (2.0 * p);
  const double R = c - p;
  return (1.0 - r0 * r0) / (2.0 * R);
}

CapSpec make_cap_spec(double lambda_c, const PolarGrid& grid, const BallConfig& cfg) {
  const SurfaceGeometry s = fundamental_forms(embed(grid, cap_graph(grid, lambda_c), cfg));
  CapSpec c;
  c.lambda_c = lambda_c;
  c.H_cap = s.H.mean();
  c.H_closed_form = cfg.n * cap_principal_curvature(lambda_c, cfg.r0);
  c.area = area(s);
  c.boundary_length = boundary_length(s);
  return c;
}

double min_principal_curvature(const PolarGrid& grid, const ScalarField& u, const BallConfig& cfg) {
  return fundamental_forms(embed(grid, u, cfg)).kmin.minCoeff();
}

double weak_convexity_eps(const PolarGrid& grid, const BallConfig& cfg, double lambda_c,
                          Perturbation mode, double eps_lo, double eps_hi, double tol) {
  auto kmin = [&](double eps) {
    return min_principal_curvature(grid, perturbed_cap(grid, lambda_c, eps, mode), cfg);
  };
  double klo = kmin(eps_lo);
  if (!(klo > 0.0) || !(kmin(eps_hi) < 0.0))
    throw DomainError("weak_convexity_eps: bracket does not straddle min kappa = 0");
  if (klo <= tol) return eps_lo;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (eps_lo + eps_hi);
    const double km = kmin(mid);
    if (km >= 0.0 && km <= tol) return mid;
    if (km > 0.0)
      eps_lo = mid;
    else
      eps_hi = mid;
  }
  throw DomainError("weak_convexity_eps: bisection did not converge");
}

}  // namespace hyperflow
