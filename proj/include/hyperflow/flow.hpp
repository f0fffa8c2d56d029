#pragma once
// Graph flows u_t = -v/H (inverse mean curvature) and u_t = v H (mean
// curvature) on the polar grid, Neumann condition u_s = 0 at s = 1.

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "hyperflow/hyperbolic.hpp"
#include "hyperflow/monitors.hpp"
#include "hyperflow/polar_grid.hpp"
#include "hyperflow/shapes.hpp"
#include "hyperflow/surface.hpp"

namespace hyperflow {

enum class FlowMode { imcf, mcf };
enum class ConvexityPolicy { strict, monitor };
enum class InitialKind { cap, perturbed_cap, disk, file };

struct FlowConfig {
  int n = 2;
  double rho0 = 1.0;
  int grid_radial = 48;
  int grid_angular = 96;
  InitialKind initial = InitialKind::cap;
  double lambda_c = 2.0;
  double eps = 0.0;
  Perturbation perturbation = Perturbation::radial;
  std::string file;  // snapshot path when initial = file
  FlowMode mode = FlowMode::imcf;
  double cfl_sigma = 0.25;  // max graph displacement per step, in radial cells
  double h_min_stop = 0.05;
  double t_max = 10.0;
  long max_steps = 200000;
  int snapshot_every = 0;  // 0: initial and final only
  std::string out_dir = "out";
  ConvexityPolicy convexity = ConvexityPolicy::strict;
  double dt_max = 0.01;
  double area_tol = 1e-4;       // stop when area >= (1 - area_tol) lambda
  double lambda_slack = 1e-6;   // u may dip this far below 1
  unsigned long seed = 0;
};

struct FlowState {
  PolarGrid grid;
  ScalarField u;  // every node; the boundary ring is the Neumann ghost
  double t = 0.0;
  long step = 0;
  SurfaceGeometry geom;
};

/// Overwrites the boundary ring so that the one-sided d/ds vanishes there.
void apply_neumann(const PolarGrid& grid, ScalarField& u);

FlowState make_state(const PolarGrid& grid, ScalarField u, const BallConfig& cfg, double t = 0.0);

/// Graph speed factor v at every node of u.
ScalarField speed_factor_field(const PolarGrid& grid, const ScalarField& u, const BallConfig& cfg);

/// -v/H; throws FlowDegenerateError when min H <= 0.
ScalarField imcf_rhs(const FlowState& state, const BallConfig& cfg);
/// v H
ScalarField mcf_rhs(const FlowState& state, const BallConfig& cfg);

/// Linearly implicit two-stage Rosenbrock-W stepper (L-stable, second
/// order for any Jacobian approximation). The Jacobian of the interior
/// unknowns is exact: forward-mode AutoDiff through the same rhs code,
/// seeding one direction per color of a distance-2 coloring.
class Ros2Stepper {
 public:
  Ros2Stepper(const PolarGrid& grid, const BallConfig& cfg, FlowMode mode);

  /// rhs restricted to interior unknowns.
  Eigen::VectorXd rhs(const Eigen::VectorXd& interior) const;
  void refresh_jacobian(const Eigen::VectorXd& interior, const Eigen::VectorXd& f0);
  /// One step of size dt from `interior`, f0 = rhs(interior). Returns false
  /// if a stage left the admissible set (dt must shrink).
  bool step(const Eigen::VectorXd& interior, const Eigen::VectorXd& f0, double dt,
            Eigen::VectorXd& out, double& err_est);
  int colors() const { return n_colors_; }
  const Eigen::SparseMatrix<double>& jacobian() const { return J_; }

  Eigen::VectorXd interior_of(const ScalarField& u) const;
  ScalarField full_of(const Eigen::VectorXd& interior) const;

 private:
  PolarGrid grid_;
  BallConfig cfg_;
  FlowMode mode_;
  std::vector<std::vector<int>> rows_of_;  // rows touched by each column
  std::vector<int> color_;
  int n_colors_ = 0;
  Eigen::SparseMatrix<double> J_;
  double factored_dt_ = -1.0;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
  void factor(double dt);
};

/// One ROS2 step with a freshly built Jacobian.
FlowState step(const FlowState& state, double dt, const BallConfig& cfg, FlowMode mode);

struct Frame {
  double t = 0.0;
  ScalarField u;
};

struct Trajectory {
  FlowConfig config;
  Constants consts;
  PolarGrid grid;
  std::vector<TimeSeriesRecord> records;
  std::vector<Frame> frames;      // every accepted state (when kept)
  std::vector<Frame> snapshots;   // cadence-selected states
  double initial_area = 0.0;
  double T_star = std::numeric_limits<double>::quiet_NaN();
  std::string stop_reason;
  bool aborted = false;
  long steps = 0;
};

struct RunOptions {
  bool keep_frames = true;
  const ScalarField* initial_u = nullptr;  // overrides config.initial
};

/// Initial graph described by the config (not file).
ScalarField initial_graph(const FlowConfig& cfg, const PolarGrid& grid, const BallConfig& ball);

Trajectory run(const FlowConfig& cfg, const RunOptions& opts = {});

}  // namespace hyperflow
