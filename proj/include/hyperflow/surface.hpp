#pragma once
// Discrete hypersurfaces (n = 2) parametrized over the polar grid and
// embedded in the hyperboloid. Curvature comes from the Weingarten relation
// h_ij = -<z_ij, nu> in parameter coordinates (s, theta).

#include <Eigen/Dense>

#include "hyperflow/hyperbolic.hpp"
#include "hyperflow/polar_grid.hpp"

namespace hyperflow {

struct Embedding {
  PolarGrid grid;
  Field<4> z;    // hyperboloid positions
  Field<4> ref;  // nu is oriented so that <nu, ref> > 0
};

struct SurfaceGeometry {
  PolarGrid grid;
  Field<4> z, zs, zt, zss, zst, ztt, nu;
  ScalarField gss, gst, gtt, det_g;   // induced metric
  ScalarField iss, ist, itt;          // its inverse
  ScalarField hss, hst, htt;          // second fundamental form
  ScalarField H, kmin, kmax, Htilde, A2;
};

/// z(node) = chart_to_hyperboloid(xi(node), u(node)); u holds every node,
/// boundary ring included.
Embedding embed(const PolarGrid& grid, const ScalarField& u, const BallConfig& cfg);

SurfaceGeometry fundamental_forms(const Embedding& e);

inline const ScalarField& mean_curvature(const SurfaceGeometry& s) { return s.H; }

struct PrincipalCurvatures {
  ScalarField kmin, kmax, Htilde, A2;
};
PrincipalCurvatures principal_curvatures(const SurfaceGeometry& s);

/// Midpoint quadrature of field * sqrt(det g) over the staggered rings.
double integrate(const SurfaceGeometry& s, const ScalarField& field);
double area(const SurfaceGeometry& s);
double boundary_length(const SurfaceGeometry& s);
double integral_Hp(const SurfaceGeometry& s, double p);

/// Covariant Hessian components (ss, st, tt) of a scalar field.
struct Hessian2 {
  ScalarField ss, st, tt;
};
Hessian2 covariant_hessian(const SurfaceGeometry& s, const ScalarField& f);

/// g^{ij}(f_ij - Gamma^k_ij f_k).
ScalarField laplace_beltrami(const SurfaceGeometry& s, const ScalarField& f);

/// |grad f|^2 = g^{ij} f_i f_j
ScalarField gradient_norm2(const SurfaceGeometry& s, const ScalarField& f);

/// Derivative along the outward unit conormal of the boundary ring; returns
/// one value per angle.
Eigen::RowVectorXd boundary_normal_derivative(const SurfaceGeometry& s, const ScalarField& f);

/// Outward unit conormal eta and unit tangent tau on the boundary ring.
Field<4> boundary_conormal(const SurfaceGeometry& s);
Field<4> boundary_tangent(const SurfaceGeometry& s);

/// Second fundamental form A(X, Y) of ambient tangent vectors at node idx.
double second_fundamental_form(const SurfaceGeometry& s, int idx, const Vec4& X, const Vec4& Y);

/// max over the boundary ring of |<nu, outward normal of the supporting sphere>|.
double free_boundary_residual(const SurfaceGeometry& s);

/// Mean curvature of the graph from the chart metric in divergence form,
/// sharing no code with the embedding route beyond the grid stencils.
ScalarField mean_curvature_chart(const PolarGrid& grid, const ScalarField& u, const BallConfig& cfg);

}  // namespace hyperflow
