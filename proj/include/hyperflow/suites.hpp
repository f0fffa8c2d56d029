#pragma once
// Verification suites: kernel accuracy, static identities on fixtures, and
// identities / monotonicity along computed flows. Each check is reported
// with a residual, the grid(s) it was measured on and a verdict.

#include <functional>
#include <string>
#include <vector>

#include "hyperflow/flow.hpp"

namespace hyperflow {

struct Check {
  std::string name;
  std::string paper_ref;  // the identity or property being checked, in words
  double residual = 0.0;
  std::string grid;
  bool pass = false;
};

struct Report {
  std::string suite;
  std::vector<Check> checks;
  bool passed() const;
};

/// Refinement policy: the residual on the doubled grid must shrink by at
/// least `min_ratio`, unless it is already below `floor`.
struct RefinementPolicy {
  double min_ratio = 3.0;
  double floor = 1e-10;
  bool accepts(double coarse, double fine) const;
};

inline constexpr RefinementPolicy kSecondOrder{3.0, 1e-10};
inline constexpr RefinementPolicy kFirstOrder{1.5, 1e-10};
inline constexpr double kMonotoneSlack = 1e-3;  // relative, per record

// --- static identities ------------------------------------------------------

struct NamedResidual {
  std::string name;
  std::string paper_ref;
  double value = 0.0;
};

/// Identity residuals of one discrete surface (convergence quantities).
std::vector<NamedResidual> static_residuals(const SurfaceGeometry& s, const BallConfig& cfg);

/// Residual of the Simons identity, both sides evaluated on the grid
/// (meaningful on umbilic fixtures, where both vanish); nodes with s <= 0.85.
double simons_residual(const SurfaceGeometry& s);

/// (grad_eta A)(tau, tau) and (grad_eta A)(tau, eta) against the boundary
/// formula, max over the boundary.
double boundary_codazzi_residual(const SurfaceGeometry& s, const BallConfig& cfg);

struct SignDiagnostics {
  double max_nu0 = 0.0;            // interior rings
  double max_nu1 = 0.0;            // interior rings
  double max_position_normal = 0.0;  // max <z_a, nu_b> over sampled pairs a != b
  double min_z1 = 0.0;
};

SignDiagnostics sign_diagnostics(const SurfaceGeometry& s, int pair_stride = 7);

using Fixture = std::function<ScalarField(const PolarGrid&)>;

/// Static suite on one fixture: residuals at (radial, angular) and at the
/// doubled grid; sign checks when `strictly_convex`.
Report static_identity_suite(const std::string& fixture, const Fixture& make, const BallConfig& cfg,
                             bool strictly_convex, bool umbilic, int radial = 24,
                             int angular = 48);

/// Cap and disk fixtures (plus a perturbed cap for the sign checks).
Report static_suite_default(const BallConfig& cfg);

// --- kernel -----------------------------------------------------------------

Report kernel_suite();

// --- along the flow ---------------------------------------------------------

struct EvolutionResiduals {
  double z0 = 0.0;
  double z1 = 0.0;
  double logH = 0.0;
  int samples = 0;
};

/// Max residuals of the evolution equations for z0, z1 (all nodes) and
/// log H (0.15 <= s <= 0.85) over records with t in [t_lo, t_hi]. Needs frames.
EvolutionResiduals evolution_residuals(const Trajectory& tr, double t_lo, double t_hi);

/// Record nearest to time t.
const TimeSeriesRecord& record_near(const Trajectory& tr, double t);

/// Max over t <= t_end of |area e^{-t} / area(0) - 1|.
double area_growth_deviation(const Trajectory& tr, double t_end);

/// Largest increase q(k+1) - q(k) relative to |q(k)| (negative when strictly decreasing).
double worst_q_increase(const Trajectory& tr);

/// Largest zeta_max(k) - zeta_max(0).
double worst_zeta_rise(const Trajectory& tr);

double final_plane_proxy(const Trajectory& tr);

/// Checks along the reference trajectory; refinement checks need `coarse`
/// (same config at half resolution) and are skipped when it is null.
Report flow_identity_suite(const Trajectory& fine, const Trajectory* coarse);

/// Reference IMCF configuration used by the flow acceptance.
FlowConfig reference_config();

/// Mean curvature flow checks: area decreases, d(area)/dt against -int H^2
/// (centered differences of the records), final min kappa.
Report mcf_suite(const Trajectory& tr);

/// Radially perturbed cap bisected to min kappa in [0, 1e-4], run by MCF to t = 0.01.
FlowConfig mcf_strictification_config(int radial = 48, int angular = 96);

/// Checks attached to a single run (report.json).
Report run_report(const Trajectory& tr);

}  // namespace hyperflow
