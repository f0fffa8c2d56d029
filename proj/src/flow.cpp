#include "hyperflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include <unsupported/Eigen/AutoDiff>

#include "hyperflow/detail/forms.hpp"
#include "hyperflow/errors.hpp"
#include "hyperflow/moebius.hpp"

namespace hyperflow {

namespace {

constexpr double kGamma = 1.0 + 0.70710678118654752440;  // 1 + 1/sqrt(2)

ScalarField rhs_from(const PolarGrid& grid, const ScalarField& u, const SurfaceGeometry& geom,
                     const BallConfig& cfg, FlowMode mode) {
  const ScalarField v = speed_factor_field(grid, u, cfg);
  if (mode == FlowMode::imcf) {
    const double hmin = geom.H.minCoeff();
    if (!(hmin > 0.0))
      throw FlowDegenerateError("imcf_rhs: mean curvature not positive (min H = " +
                                std::to_string(hmin) + ")");
    return (-v.array() / geom.H.array()).matrix();
  }
  return (v.array() * geom.H.array()).matrix();
}

template <typename S>
using Row = Eigen::Matrix<S, 1, Eigen::Dynamic>;

template <typename S>
void neumann_fill(const PolarGrid& g, Row<S>& u) {
  // the ghost is linear in the last two rings
  const double a = g.neumann_ghost(1.0, 0.0), b = g.neumann_ghost(0.0, 1.0);
  for (int k = 0; k < g.nt(); ++k)
    u(g.index(g.nr(), k)) = a * u(g.index(g.nr() - 1, k)) + b * u(g.index(g.nr() - 2, k));
}

Field<4> orientation_refs(const PolarGrid& g, const ScalarField& u, double r0) {
  Field<4> ref(4, g.nodes());
  for (int j = 0; j < g.rings(); ++j)
    for (int k = 0; k < g.nt(); ++k) {
      const int i = g.index(j, k);
      const double s = g.s(j), th = g.theta(k);
      ChartPoint<double, 2> p{Eigen::Vector2d(s * std::cos(th), s * std::sin(th)), u(i)};
      ref.col(i) = -chart_lambda_tangent(p, r0);
    }
  return ref;
}

// Graph speed at every node, written once for doubles and AutoDiff scalars
// so that the Jacobian is the exact derivative of what the stepper integrates.
template <typename S>
Row<S> graph_rhs(const PolarGrid& g, const Row<S>& u, const Field<4>& ref, const BallConfig& cfg,
                 FlowMode mode) {
  using std::sqrt;
  const int N = g.nodes();
  Eigen::Matrix<S, 4, Eigen::Dynamic> z(4, N);
  for (int j = 0; j < g.rings(); ++j)
    for (int k = 0; k < g.nt(); ++k) {
      const int i = g.index(j, k);
      const double s = g.s(j), th = g.theta(k);
      ChartPoint<S, 2> p{Eigen::Matrix<S, 2, 1>(S(s * std::cos(th)), S(s * std::sin(th))), u(i)};
      z.col(i) = chart_to_hyperboloid(p, cfg.r0);
    }
  const auto zs = d_s(g, z);
  const auto zt = d_t(g, z);
  const auto zss = d_ss(g, z);
  const auto zst = d_t(g, zs);
  const auto ztt = d_tt(g, z);
  const Row<S> us = d_s(g, u), ut = d_t(g, u);
  Row<S> out(N);
  for (int j = 0; j < g.rings(); ++j) {
    const double s = g.s(j);
    for (int k = 0; k < g.nt(); ++k) {
      const int i = g.index(j, k);
      const detail::NodeForms<S> f = detail::node_forms<S>(
          z.col(i), zs.col(i), zt.col(i), zss.col(i), zst.col(i), ztt.col(i), ref.col(i), i);
      const ChartMetric<S> m = chart_factors<S>(S(s * s), u(i), cfg.r0);
      const S du2 = us(i) * us(i) + ut(i) * ut(i) / (s * s);
      const S v = sqrt(du2 / (m.phi2 * m.phi2) + S(1) / (m.phi1 * m.phi1));
      out(i) = mode == FlowMode::imcf ? S(-v / f.H) : S(v * f.H);
    }
  }
  return out;
}

}  // namespace

void apply_neumann(const PolarGrid& grid, ScalarField& u) { neumann_fill<double>(grid, u); }

FlowState make_state(const PolarGrid& grid, ScalarField u, const BallConfig& cfg, double t) {
  apply_neumann(grid, u);
  FlowState st;
  st.grid = grid;
  st.geom = fundamental_forms(embed(grid, u, cfg));
  st.u = std::move(u);
  st.t = t;
  return st;
}

ScalarField speed_factor_field(const PolarGrid& grid, const ScalarField& u, const BallConfig& cfg) {
  const ScalarField us = d_s(grid, u), ut = d_t(grid, u);
  ScalarField v(grid.nodes());
  for (int j = 0; j < grid.rings(); ++j) {
    const double s = grid.s(j);
    for (int k = 0; k < grid.nt(); ++k) {
      const int i = grid.index(j, k);
      const ChartMetric<double> m = chart_factors(s * s, u(i), cfg.r0);
      const double du2 = us(i) * us(i) + ut(i) * ut(i) / (s * s);
      v(i) = std::sqrt(du2 / (m.phi2 * m.phi2) + 1.0 / (m.phi1 * m.phi1));
    }
  }
  return v;
}

ScalarField imcf_rhs(const FlowState& state, const BallConfig& cfg) {
  return rhs_from(state.grid, state.u, state.geom, cfg, FlowMode::imcf);
}

ScalarField mcf_rhs(const FlowState& state, const BallConfig& cfg) {
  return rhs_from(state.grid, state.u, state.geom, cfg, FlowMode::mcf);
}

// ---------------------------------------------------------------------------

Ros2Stepper::Ros2Stepper(const PolarGrid& grid, const BallConfig& cfg, FlowMode mode)
    : grid_(grid), cfg_(cfg), mode_(mode) {
  const int M = grid.interior_nodes(), nr = grid.nr(), nt = grid.nt();
  // Conservative dependency footprint: stencils reach two rings, the ghost
  // ring couples the last two rings, and ring 0 sees its mirror image.
  rows_of_.assign(M, {});
  for (int c = 0; c < M; ++c) {
    const int jc = grid.ring_of(c), kc = grid.angle_of(c);
    std::set<int> rows;
    for (int j = std::max(0, jc - 3); j <= std::min(nr - 1, jc + 3); ++j)
      for (int dk = -1; dk <= 1; ++dk) rows.insert(grid.index(j, kc + dk));
    if (jc <= 1)
      for (int j = 0; j <= 1; ++j)
        for (int dk = -1; dk <= 1; ++dk) rows.insert(grid.index(j, kc + nt / 2 + dk));
    rows_of_[c].assign(rows.begin(), rows.end());
  }
  std::vector<std::vector<int>> cols_of(M);
  for (int c = 0; c < M; ++c)
    for (int r : rows_of_[c]) cols_of[r].push_back(c);
  color_.assign(M, -1);
  std::vector<int> mark;
  for (int c = 0; c < M; ++c) {
    mark.assign(n_colors_ + 1, 0);
    for (int r : rows_of_[c])
      for (int c2 : cols_of[r])
        if (color_[c2] >= 0) mark[color_[c2]] = 1;
    int col = 0;
    while (mark[col]) ++col;
    color_[c] = col;
    n_colors_ = std::max(n_colors_, col + 1);
  }
}

Eigen::VectorXd Ros2Stepper::interior_of(const ScalarField& u) const {
  return u.head(grid_.interior_nodes()).transpose();
}

ScalarField Ros2Stepper::full_of(const Eigen::VectorXd& interior) const {
  ScalarField u(grid_.nodes());
  u.head(grid_.interior_nodes()) = interior.transpose();
  apply_neumann(grid_, u);
  return u;
}

Eigen::VectorXd Ros2Stepper::rhs(const Eigen::VectorXd& interior) const {
  const ScalarField u = full_of(interior);
  const ScalarField f = graph_rhs<double>(grid_, u, orientation_refs(grid_, u, cfg_.r0), cfg_, mode_);
  if (mode_ == FlowMode::imcf) {
    // -v/H < 0 exactly when H > 0
    const double fmax = f.head(grid_.interior_nodes()).maxCoeff();
    if (!(fmax < 0.0) || !f.allFinite())
      throw FlowDegenerateError("imcf_rhs: mean curvature not positive");
  }
  return f.head(grid_.interior_nodes()).transpose();
}

void Ros2Stepper::refresh_jacobian(const Eigen::VectorXd& interior, const Eigen::VectorXd& f0) {
  (void)f0;
  constexpr int K = 8;  // colors seeded per pass
  using AD = Eigen::AutoDiffScalar<Eigen::Matrix<double, K, 1>>;
  const int M = grid_.interior_nodes();
  const ScalarField base = full_of(interior);
  const Field<4> ref = orientation_refs(grid_, base, cfg_.r0);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<size_t>(M) * 40);
  for (int first = 0; first < n_colors_; first += K) {
    Row<AD> u(grid_.nodes());
    for (int c = 0; c < M; ++c) {
      u(c).value() = interior(c);
      u(c).derivatives().setZero();
      const int slot = color_[c] - first;
      if (slot >= 0 && slot < K) u(c).derivatives()(slot) = 1.0;
    }
    neumann_fill(grid_, u);
    const Row<AD> f = graph_rhs<AD>(grid_, u, ref, cfg_, mode_);
    for (int c = 0; c < M; ++c) {
      const int slot = color_[c] - first;
      if (slot < 0 || slot >= K) continue;
      for (int r : rows_of_[c]) {
        const double d = f(r).derivatives()(slot);
        if (d != 0.0) trip.emplace_back(r, c, d);
      }
    }
  }
  J_.resize(M, M);
  J_.setFromTriplets(trip.begin(), trip.end());
  factored_dt_ = -1.0;
}

void Ros2Stepper::factor(double dt) {
  if (dt == factored_dt_) return;
  const int M = grid_.interior_nodes();
  Eigen::SparseMatrix<double> I(M, M);
  I.setIdentity();
  Eigen::SparseMatrix<double> A = I - (kGamma * dt) * J_;
  A.makeCompressed();
  lu_.compute(A);
  if (lu_.info() != Eigen::Success) throw FlowDegenerateError("Ros2Stepper: singular stage matrix");
  factored_dt_ = dt;
}

bool Ros2Stepper::step(const Eigen::VectorXd& interior, const Eigen::VectorXd& f0, double dt,
                       Eigen::VectorXd& out, double& err_est) {
  factor(dt);
  const Eigen::VectorXd k1 = lu_.solve(f0);
  Eigen::VectorXd f1;
  try {
    f1 = rhs(interior + dt * k1);
  } catch (const FlowDegenerateError&) {
    return false;
  } catch (const DomainError&) {
    return false;
  } catch (const SingularGeometryError&) {
    return false;
  }
  const Eigen::VectorXd k2 = lu_.solve(f1 - 2.0 * k1);
  out = interior + (1.5 * dt) * k1 + (0.5 * dt) * k2;
  err_est = 0.5 * dt * (k1 + k2).cwiseAbs().maxCoeff();
  return out.allFinite();
}

FlowState step(const FlowState& state, double dt, const BallConfig& cfg, FlowMode mode) {
  if (dt == 0.0) return state;
  Ros2Stepper st(state.grid, cfg, mode);
  const Eigen::VectorXd x = st.interior_of(state.u);
  const Eigen::VectorXd f0 = st.rhs(x);
  st.refresh_jacobian(x, f0);
  Eigen::VectorXd y;
  double err = 0.0;
  if (!st.step(x, f0, dt, y, err))
    throw FlowDegenerateError("step: stage left the admissible set at dt = " + std::to_string(dt));
  FlowState next = make_state(state.grid, st.full_of(y), cfg, state.t + dt);
  next.step = state.step + 1;
  return next;
}

// ---------------------------------------------------------------------------

ScalarField initial_graph(const FlowConfig& cfg, const PolarGrid& grid, const BallConfig& ball) {
  (void)ball;
  switch (cfg.initial) {
    case InitialKind::cap:
      return cap_graph(grid, cfg.lambda_c);
    case InitialKind::perturbed_cap:
      return perturbed_cap(grid, cfg.lambda_c, cfg.eps, cfg.perturbation);
    case InitialKind::disk:
      return totally_geodesic_disk(grid);
    case InitialKind::file:
      break;
  }
  throw ConfigError("initial = file needs the snapshot graph to be supplied by the caller");
}

namespace {

std::string fmt_num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

Trajectory run(const FlowConfig& cfg, const RunOptions& opts) {
  if (cfg.n != 2) throw ConfigError("run: the grid solver supports n = 2 only");
  const BallConfig ball = make_ball_config(cfg.n, cfg.rho0);
  const PolarGrid grid(cfg.grid_radial, cfg.grid_angular);
  Trajectory tr;
  tr.config = cfg;
  tr.consts = constants(cfg.n, cfg.rho0);
  tr.grid = grid;

  ScalarField u0 = opts.initial_u ? *opts.initial_u : initial_graph(cfg, grid, ball);
  if (u0.size() != grid.nodes()) throw ConfigError("run: initial graph does not match the grid");
  FlowState state = make_state(grid, u0, ball);
  tr.initial_area = area(state.geom);
  if (tr.initial_area < tr.consts.lambda) tr.T_star = predicted_T_star(tr.initial_area, tr.consts);

  auto record = [&](const FlowState& s) {
    tr.records.push_back(make_record(s.geom, tr.consts, s.t));
    if (opts.keep_frames) tr.frames.push_back(Frame{s.t, s.u});
  };
  record(state);
  tr.snapshots.push_back(Frame{state.t, state.u});

  Ros2Stepper stepper(grid, ball, cfg.mode);
  Eigen::VectorXd x = stepper.interior_of(state.u);
  const double ds = grid.ds();
  double dt_prev = cfg.dt_max;

  auto finish = [&](const std::string& reason, bool aborted) {
    tr.stop_reason = reason;
    tr.aborted = aborted;
    tr.steps = state.step;
    if (tr.snapshots.empty() || tr.snapshots.back().t != state.t)
      tr.snapshots.push_back(Frame{state.t, state.u});
    return tr;
  };

  while (true) {
    const TimeSeriesRecord& rec = tr.records.back();
    if (cfg.mode == FlowMode::imcf && cfg.convexity == ConvexityPolicy::strict && !(rec.min_kappa > 0.0))
      return finish("abort: strict convexity lost at t = " + fmt_num(state.t) +
                        " (min kappa = " + fmt_num(rec.min_kappa) + ")",
                    true);
    if (state.t >= cfg.t_max) return finish("t_max", false);
    if (cfg.mode == FlowMode::imcf && rec.min_H < cfg.h_min_stop) return finish("min_H", false);
    if (cfg.mode == FlowMode::imcf && rec.area >= (1.0 - cfg.area_tol) * tr.consts.lambda)
      return finish("area", false);
    if (state.step >= cfg.max_steps) return finish("max_steps", false);

    Eigen::VectorXd f0;
    try {
      f0 = stepper.rhs(x);
    } catch (const FlowDegenerateError& e) {
      return finish(std::string("abort: ") + e.what(), true);
    }
    stepper.refresh_jacobian(x, f0);

    // displacement limit: the graph moves at most cfl_sigma radial cells
    const double speed = f0.cwiseAbs().maxCoeff();
    double dt = cfg.dt_max;
    if (speed > 0.0) dt = std::min(dt, cfg.cfl_sigma * ds / speed);
    dt = std::min(dt, 2.0 * dt_prev);
    if (state.t + dt > cfg.t_max) dt = cfg.t_max - state.t;

    Eigen::VectorXd y;
    double err = 0.0;
    bool ok = false;
    for (int attempt = 0; attempt < 30 && !ok; ++attempt) {
      ok = stepper.step(x, f0, dt, y, err);
      if (ok && y.minCoeff() < 1.0 - cfg.lambda_slack) ok = false;
      if (!ok) dt *= 0.5;
    }
    if (!ok) return finish("abort: step failure at t = " + fmt_num(state.t), true);

    FlowState next;
    try {
      next = make_state(grid, stepper.full_of(y), ball, state.t + dt);
    } catch (const std::exception& e) {
      return finish(std::string("abort: ") + e.what(), true);
    }
    next.step = state.step + 1;
    state = std::move(next);
    x = std::move(y);
    dt_prev = dt;
    record(state);
    if (cfg.snapshot_every > 0 && state.step % cfg.snapshot_every == 0)
      tr.snapshots.push_back(Frame{state.t, state.u});

    const TimeSeriesRecord& now = tr.records.back();
    if (!std::isfinite(now.area) || !std::isfinite(now.min_H))
      return finish("abort: non-finite geometry at t = " + fmt_num(state.t), true);
  }
}

}  // namespace hyperflow
