#pragma once
// Fixture surfaces with known geometry.

#include "hyperflow/hyperbolic.hpp"
#include "hyperflow/polar_grid.hpp"
#include "hyperflow/surface.hpp"

namespace hyperflow {

/// Polar cap of angular radius alpha on the geodesic sphere of radius rho_c
/// about e0: z = e0 cosh rho_c + omega sinh rho_c. Exact kappa = coth rho_c.
Embedding geodesic_sphere_patch(double rho_c, const PolarGrid& grid,
                                double alpha = 3.14159265358979323846 / 3.0);

/// u = lambda_c everywhere: an umbilic free-boundary cap.
ScalarField cap_graph(const PolarGrid& grid, double lambda_c);

enum class Perturbation { radial, angular };

/// u = lambda_c + eps p(s) (cos theta), p = (1-s^2)^2 or s(1-s^2)^2.
/// Both profiles have zero slope at s = 1 and are smooth through the axis.
ScalarField perturbed_cap(const PolarGrid& grid, double lambda_c, double eps, Perturbation mode);

/// u = 1: the flat equatorial disk.
ScalarField totally_geodesic_disk(const PolarGrid& grid);

struct CapSpec {
  double lambda_c = 2.0;
  double H_cap = 0.0;            // from the discrete kernel (mean over nodes)
  double H_closed_form = 0.0;    // Euclidean-sphere construction
  double area = 0.0;
  double boundary_length = 0.0;
};

/// Principal curvature of the constant-lambda cap: the cap is the Euclidean
/// sphere through p = r0 (lambda-1)/(lambda+1) e1 meeting |x| = r0 orthogonally.
double cap_principal_curvature(double lambda_c, double r0);

CapSpec make_cap_spec(double lambda_c, const PolarGrid& grid, const BallConfig& cfg);

/// Bisects eps in [eps_lo, eps_hi] until min kappa of perturbed_cap lands in
/// [0, tol]. min kappa must be positive at eps_lo and negative at eps_hi.
double weak_convexity_eps(const PolarGrid& grid, const BallConfig& cfg, double lambda_c,
                          Perturbation mode, double eps_lo, double eps_hi, double tol = 1e-4);

double min_principal_curvature(const PolarGrid& grid, const ScalarField& u, const BallConfig& cfg);

}  // namespace hyperflow
