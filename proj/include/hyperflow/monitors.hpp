#pragma once
// Constants of the geodesic ball, the Willmore-type functional q, per-step
// diagnostics and the limit-disk fit.

#include <Eigen/Dense>
#include <string>

#include "hyperflow/hyperbolic.hpp"
#include "hyperflow/surface.hpp"

namespace hyperflow {

struct Constants {
  int n = 2;
  double rho0 = 1.0;
  double r0 = 0.0;
  double omega = 0.0;   // |S^{n-1}|
  double lambda = 0.0;  // |B^n(rho0)| in H^n
  double Lambda = 0.0;
  double willmore_rhs = 0.0;
};

/// Adaptive Simpson on [a, b] to absolute tolerance tol.
template <typename F>
double adaptive_simpson(F&& f, double a, double b, double tol, int max_depth = 50);

Constants constants(int n, double rho0);

/// log(lambda / |M0|); requires |M0| < lambda.
double predicted_T_star(double initial_area, const Constants& c);

/// |M|^{(2-n)/n} int (H^2 - n^2) + Lambda |dM|
double willmore_q(const SurfaceGeometry& s, const Constants& c);

struct TimeSeriesRecord {
  double t = 0.0;
  double area = 0.0;
  double boundary_length = 0.0;
  double q = 0.0;
  double min_H = 0.0;
  double max_H = 0.0;
  double max_A = 0.0;
  double int_H2 = 0.0;
  double zeta_max = 0.0;   // max(log H + log z0)
  double stahl_res = 0.0;  // max over the boundary of |d_eta log H + coth rho0|
  double fb_res = 0.0;     // max over the boundary of |<nu, eta_sphere>|
  double min_z1 = 0.0;
  double min_kappa = 0.0;
  double Htilde_max = 0.0;
};

TimeSeriesRecord make_record(const SurfaceGeometry& s, const Constants& c, double t);

/// Ball-model positions (3 x nodes) of the surface nodes.
Eigen::Matrix3Xd ball_positions(const SurfaceGeometry& s);

struct PlaneFit {
  Eigen::Vector3d w;      // unit normal of the best plane through the origin
  double hausdorff_proxy; // max |x . w|
};

/// Least-squares plane through the ball center (totally geodesic disks
/// with free boundary pass through it).
PlaneFit fit_totally_geodesic(const SurfaceGeometry& s);

// ---------------------------------------------------------------------------

template <typename F>
double adaptive_simpson(F&& f, double a, double b, double tol, int max_depth) {
  auto simpson = [&](double fa, double fm, double fb, double h) { return h / 6.0 * (fa + 4.0 * fm + fb); };
  struct Rec {
    F& f;
    decltype(simpson)& simp;
    double go(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
      const double m = 0.5 * (a + b);
      const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      const double flm = f(lm), frm = f(rm);
      const double left = simp(fa, flm, fm, m - a);
      const double right = simp(fm, frm, fb, b - m);
      const double delta = left + right - whole;
      if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
      return go(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
             go(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }
  } rec{f, simpson};
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return rec.go(a, b, fa, fm, fb, simpson(fa, fm, fb, b - a), tol, max_depth);
}

}  // namespace hyperflow
