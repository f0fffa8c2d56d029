#include "hyperflow/suites.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <unsupported/Eigen/AutoDiff>

#include "hyperflow/errors.hpp"
#include "hyperflow/moebius.hpp"

namespace hyperflow {

namespace {

double mink(const Vec4& a, const Vec4& b) { return -a(0) * b(0) + a.tail<3>().dot(b.tail<3>()); }

std::string grid_name(int r, int a) { return std::to_string(r) + "x" + std::to_string(a); }

std::string grid_pair(int r, int a) { return grid_name(r, a) + "->" + grid_name(2 * r, 2 * a); }

// Gamma^l_{ki} = g^{lm} <z_ki, z_m>, coordinates 0 = s, 1 = theta
using Christoffel = std::array<std::array<std::array<double, 2>, 2>, 2>;

Christoffel christoffel(const SurfaceGeometry& s, int i) {
  const Vec4 zk[2] = {s.zs.col(i), s.zt.col(i)};
  const Vec4 zz[2][2] = {{s.zss.col(i), s.zst.col(i)}, {s.zst.col(i), s.ztt.col(i)}};
  const double gi[2][2] = {{s.iss(i), s.ist(i)}, {s.ist(i), s.itt(i)}};
  Christoffel G{};
  for (int k = 0; k < 2; ++k)
    for (int a = 0; a < 2; ++a) {
      const double low[2] = {mink(zz[k][a], zk[0]), mink(zz[k][a], zk[1])};
      for (int l = 0; l < 2; ++l) G[l][k][a] = gi[l][0] * low[0] + gi[l][1] * low[1];
    }
  return G;
}

Vec4 pushforward_position(const Vec4& z) {
  // d/dt of the ball-to-hyperboloid map along x -> (1 + t) x
  using AD = Eigen::AutoDiffScalar<Eigen::Matrix<double, 1, 1>>;
  const Eigen::Vector3d x = hyperboloid_to_ball(z);
  AD t(0.0, 1, 0);
  Eigen::Matrix<AD, 3, 1> xt;
  for (int a = 0; a < 3; ++a) xt(a) = (AD(1.0) + t) * x(a);
  const auto zt = ball_to_hyperboloid(xt);
  Vec4 out;
  for (int a = 0; a < 4; ++a) out(a) = zt(a).derivatives()(0);
  return out;
}

}  // namespace

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

bool RefinementPolicy::accepts(double coarse, double fine) const {
  if (!std::isfinite(coarse) || !std::isfinite(fine)) return false;
  if (fine <= floor) return true;
  return coarse >= min_ratio * fine;
}

// ---------------------------------------------------------------------------

std::vector<NamedResidual> static_residuals(const SurfaceGeometry& s, const BallConfig& cfg) {
  const PolarGrid& g = s.grid;
  const int n = cfg.n;
  std::vector<NamedResidual> out;

  double lap = 0.0;
  for (int a = 0; a < 4; ++a) {
    const ScalarField za = s.z.row(a);
    const ScalarField L = laplace_beltrami(s, za);
    for (int i = 0; i < g.nodes(); ++i)
      lap = std::max(lap, std::abs(L(i) - (n * s.z(a, i) - s.H(i) * s.nu(a, i))));
  }
  out.push_back({"laplacian_z", "Laplacian of the static potentials: Lz = n z - H nu", lap});

  const Field<4> eta = boundary_conormal(s);
  const Field<4> tau = boundary_tangent(s);
  double cross = 0.0;
  for (int k = 0; k < g.nt(); ++k)
    cross = std::max(cross, std::abs(second_fundamental_form(s, g.index(g.nr(), k), tau.col(k),
                                                             eta.col(k))));
  out.push_back({"A_tau_eta", "second fundamental form cross term A(X, eta) = 0 on the boundary",
                 cross});

  const double th = std::tanh(cfg.rho0), cth = 1.0 / th;
  const ScalarField logz0 = s.z.row(0).array().log().matrix();
  const Eigen::RowVectorXd d0 = boundary_normal_derivative(s, logz0);
  out.push_back({"normal_derivative_log_z0",
                 "boundary normal derivative of log z0 equals tanh rho0",
                 (d0.array() - th).abs().maxCoeff()});
  double dzi = 0.0;
  for (int a = 1; a < 4; ++a) {
    const Eigen::RowVectorXd d = boundary_normal_derivative(s, ScalarField(s.z.row(a)));
    for (int k = 0; k < g.nt(); ++k)
      dzi = std::max(dzi, std::abs(d(k) - cth * s.z(a, g.index(g.nr(), k))));
  }
  out.push_back({"normal_derivative_zi",
                 "boundary normal derivative of z^i equals coth rho0 z^i", dzi});

  double pis = 0.0;
  for (int i = 0; i < g.nodes(); ++i) {
    const Vec4 z = s.z.col(i), nu = s.nu.col(i);
    pis = std::max(pis, std::abs(mink(pushforward_position(z), nu) - nu(0)));
  }
  out.push_back({"position_field_normal_component",
                 "normal component of the pushed-forward position field equals nu^0", pis});

  out.push_back({"boundary_codazzi",
                 "boundary normal derivative of A: coth rho0 (A(eta,eta)<X,Y> - A(X,Y))",
                 boundary_codazzi_residual(s, cfg)});
  return out;
}

double simons_residual(const SurfaceGeometry& s) {
  const PolarGrid& g = s.grid;
  const int N = g.nodes();
  const double n = 2.0;
  // mixed Weingarten map W^i_j = g^{ik} h_kj
  std::array<ScalarField, 4> W;  // ss, st, ts, tt
  for (auto& w : W) w.resize(N);
  for (int i = 0; i < N; ++i) {
    W[0](i) = s.iss(i) * s.hss(i) + s.ist(i) * s.hst(i);
    W[1](i) = s.iss(i) * s.hst(i) + s.ist(i) * s.htt(i);
    W[2](i) = s.ist(i) * s.hss(i) + s.itt(i) * s.hst(i);
    W[3](i) = s.ist(i) * s.hst(i) + s.itt(i) * s.htt(i);
  }
  std::array<ScalarField, 4> LW;
  for (int c = 0; c < 4; ++c) LW[c] = laplace_beltrami(s, W[c]);
  const Hessian2 hh = covariant_hessian(s, s.H);
  double worst = 0.0;
  for (int i = 0; i < N; ++i) {
    // second differences of the boundary-stencil error do not converge
    if (g.s(g.ring_of(i)) > 0.85) continue;
    Eigen::Matrix2d w, gi, hess;
    w << W[0](i), W[1](i), W[2](i), W[3](i);
    gi << s.iss(i), s.ist(i), s.ist(i), s.itt(i);
    hess << hh.ss(i), hh.st(i), hh.st(i), hh.tt(i);
    const double H = s.H(i), A2 = s.A2(i);
    const Eigen::Matrix2d rhs =
        gi * hess - n * w + H * w * w + H * Eigen::Matrix2d::Identity() - A2 * w;
    Eigen::Matrix2d lhs;
    lhs << LW[0](i), LW[1](i), LW[2](i), LW[3](i);
    worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  return worst;
}

double boundary_codazzi_residual(const SurfaceGeometry& s, const BallConfig& cfg) {
  const PolarGrid& g = s.grid;
  const double cth = 1.0 / std::tanh(cfg.rho0);
  const ScalarField* h[2][2] = {{&s.hss, &s.hst}, {&s.hst, &s.htt}};
  ScalarField dh[2][2][2];  // dh[k][i][j] = d_k h_ij
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      dh[0][i][j] = d_s(g, *h[i][j]);
      dh[1][i][j] = d_t(g, *h[i][j]);
    }
  double worst = 0.0;
  for (int k = 0; k < g.nt(); ++k) {
    const int i = g.index(g.nr(), k);
    const Christoffel G = christoffel(s, i);
    const double hv[2][2] = {{s.hss(i), s.hst(i)}, {s.hst(i), s.htt(i)}};
    auto nabla = [&](int c, int a, int b) {
      double v = dh[c][a][b](i);
      for (int l = 0; l < 2; ++l) v -= G[l][c][a] * hv[l][b] + G[l][c][b] * hv[a][l];
      return v;
    };
    const double e[2] = {s.iss(i) / std::sqrt(s.iss(i)), s.ist(i) / std::sqrt(s.iss(i))};
    const double t[2] = {0.0, 1.0 / std::sqrt(s.gtt(i))};
    auto form = [&](const double* X, const double* Y) {
      double v = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) v += hv[a][b] * X[a] * Y[b];
      return v;
    };
    auto dform = [&](const double* X, const double* Y) {
      double v = 0.0;
      for (int c = 0; c < 2; ++c)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) v += e[c] * X[a] * Y[b] * nabla(c, a, b);
      return v;
    };
    const double r_tt = dform(t, t) - cth * (form(e, e) - form(t, t));
    const double r_te = dform(t, e);  // <tau, eta> = 0 and A(tau, eta) = 0
    worst = std::max({worst, std::abs(r_tt), std::abs(r_te)});
  }
  return worst;
}

SignDiagnostics sign_diagnostics(const SurfaceGeometry& s, int pair_stride) {
  const PolarGrid& g = s.grid;
  SignDiagnostics d;
  d.max_nu0 = -std::numeric_limits<double>::infinity();
  d.max_nu1 = -std::numeric_limits<double>::infinity();
  d.max_position_normal = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < g.interior_nodes(); ++i) {
    d.max_nu0 = std::max(d.max_nu0, s.nu(0, i));
    d.max_nu1 = std::max(d.max_nu1, s.nu(1, i));
  }
  d.min_z1 = s.z.row(1).minCoeff();
  for (int a = 0; a < g.nodes(); a += pair_stride)
    for (int b = 0; b < g.nodes(); b += pair_stride)
      if (a != b)
        d.max_position_normal =
            std::max(d.max_position_normal, mink(s.z.col(a), s.nu.col(b)));
  return d;
}

Report static_identity_suite(const std::string& fixture, const Fixture& make, const BallConfig& cfg,
                             bool strictly_convex, bool umbilic, int radial, int angular) {
  Report rep{"static", {}};
  const PolarGrid gc(radial, angular), gf(2 * radial, 2 * angular);
  const SurfaceGeometry sc = fundamental_forms(embed(gc, make(gc), cfg));
  const SurfaceGeometry sf = fundamental_forms(embed(gf, make(gf), cfg));
  const auto rc = static_residuals(sc, cfg), rf = static_residuals(sf, cfg);
  for (size_t m = 0; m < rc.size(); ++m) {
    // interior identities converge at second order; boundary derivative
    // identities lose one order to the one-sided stencils
    const bool interior = rc[m].name == "laplacian_z" || rc[m].name == "position_field_normal_component";
    const RefinementPolicy& pol = interior ? kSecondOrder : kFirstOrder;
    rep.checks.push_back({fixture + "/" + rc[m].name, rc[m].paper_ref, rf[m].value,
                          grid_pair(radial, angular), pol.accepts(rc[m].value, rf[m].value)});
  }
  if (umbilic) {
    const double c = simons_residual(sc), f = simons_residual(sf);
    rep.checks.push_back({fixture + "/simons",
                          "Simons identity on an umbilic fixture (both sides vanish)", f,
                          grid_pair(radial, angular), kSecondOrder.accepts(c, f)});
  }
  if (strictly_convex) {
    const SignDiagnostics d = sign_diagnostics(sf);
    const std::string gn = grid_name(2 * radial, 2 * angular);
    rep.checks.push_back({fixture + "/nu0_negative", "nu^0 < 0 in the interior", d.max_nu0, gn,
                          d.max_nu0 < 0.0});
    rep.checks.push_back({fixture + "/nu1_negative", "<e_1, nu> < 0 in the interior", d.max_nu1, gn,
                          d.max_nu1 < 0.0});
    rep.checks.push_back({fixture + "/position_normal",
                          "<z, nu(y)> <= 0 for sampled pairs of surface points",
                          d.max_position_normal, gn, d.max_position_normal <= 0.0});
    rep.checks.push_back({fixture + "/z1_positive", "the surface lies in the half ball z^1 > 0",
                          d.min_z1, gn, d.min_z1 > 0.0});
  }
  return rep;
}

Report static_suite_default(const BallConfig& cfg) {
  Report rep{"static", {}};
  auto add = [&](const Report& r) { rep.checks.insert(rep.checks.end(), r.checks.begin(), r.checks.end()); };
  add(static_identity_suite("cap", [](const PolarGrid& g) { return cap_graph(g, 2.0); }, cfg, true, true));
  add(static_identity_suite("disk", [](const PolarGrid& g) { return totally_geodesic_disk(g); }, cfg,
                            false, true));
  add(static_identity_suite(
      "perturbed_cap",
      [](const PolarGrid& g) { return perturbed_cap(g, 2.0, 0.3, Perturbation::radial); }, cfg, true,
      false));
  return rep;
}

// ---------------------------------------------------------------------------

Report kernel_suite() {
  Report rep{"kernel", {}};
  const BallConfig cfg = make_ball_config(2, 1.0);

  {  // geodesic sphere patch against 2 coth(rho_c)
    const double exact = 2.0 / std::tanh(0.5);
    const std::array<std::pair<int, int>, 4> grids{{{16, 24}, {32, 48}, {64, 96}, {128, 192}}};
    std::array<double, 4> err{};
    for (size_t m = 0; m < grids.size(); ++m) {
      const PolarGrid g(grids[m].first, grids[m].second);
      const SurfaceGeometry s = fundamental_forms(geodesic_sphere_patch(0.5, g));
      err[m] = ((s.H.array() - exact).abs() / exact).maxCoeff();
    }
    double order = std::numeric_limits<double>::infinity();
    for (size_t m = 1; m < err.size(); ++m) order = std::min(order, std::log2(err[m - 1] / err[m]));
    rep.checks.push_back({"sphere_patch_H_error", "mean curvature of a geodesic sphere is 2 coth rho",
                          err[2], "64x96", err[2] < 1e-3});
    rep.checks.push_back({"sphere_patch_H_order", "observed order over three refinements", order,
                          "16x24..128x192", order >= 1.8});
  }

  {  // embedding route against chart route on the cap; umbilicity
    const std::array<std::pair<int, int>, 3> grids{{{24, 48}, {48, 96}, {96, 192}}};
    std::array<double, 3> diff{}, umb{};
    for (size_t m = 0; m < grids.size(); ++m) {
      const PolarGrid g(grids[m].first, grids[m].second);
      const ScalarField u = cap_graph(g, 2.0);
      const SurfaceGeometry s = fundamental_forms(embed(g, u, cfg));
      const ScalarField Hc = mean_curvature_chart(g, u, cfg);
      diff[m] = ((s.H - Hc).array().abs() / Hc.array().abs()).maxCoeff();
      umb[m] = ((s.kmax - s.kmin).array() / s.H.array()).maxCoeff();
    }
    const double order = std::min(std::log2(diff[0] / diff[1]), std::log2(diff[1] / diff[2]));
    rep.checks.push_back({"cap_cross_implementation",
                          "embedding-route and chart-route mean curvature agree", diff[1], "48x96",
                          diff[1] < 1e-3});
    rep.checks.push_back({"cap_cross_implementation_order", "observed order of the disagreement",
                          order, "24x48..96x192", order >= 1.8});
    rep.checks.push_back({"cap_umbilicity", "constant-height graphs are umbilic", umb[1], "48x96",
                          umb[1] < 1e-2});
    rep.checks.push_back({"cap_umbilicity_refinement", "umbilicity spread halves under refinement",
                          umb[2], "48x96->96x192", umb[2] <= 0.5 * umb[1]});
  }

  {  // closed-form cap curvature through the chart route
    const PolarGrid g(24, 48);
    const ScalarField Hc = mean_curvature_chart(g, cap_graph(g, 2.0), cfg);
    const double exact = 2.0 * cap_principal_curvature(2.0, cfg.r0);
    const double e = ((Hc.array() - exact).abs() / exact).maxCoeff();
    rep.checks.push_back({"cap_chart_closed_form", "chart-route H of a cap equals 2 kappa", e, "24x48",
                          e < 1e-10});
  }

  {  // Willmore inequality and its equality case
    const Constants c = constants(2, 1.0);
    const PolarGrid g(48, 96);
    const double qd = willmore_q(fundamental_forms(embed(g, totally_geodesic_disk(g), cfg)), c);
    const double rel = std::abs(qd - c.willmore_rhs) / c.willmore_rhs;
    rep.checks.push_back({"willmore_equality_disk", "q of the totally geodesic disk equals the bound",
                          rel, "48x96", rel < 1e-2});
    struct Fx {
      const char* name;
      double eps;
      Perturbation p;
    };
    const Fx fx[] = {{"cap", 0.0, Perturbation::radial},
                     {"radial_0.1", 0.1, Perturbation::radial},
                     {"radial_0.3", 0.3, Perturbation::radial},
                     {"radial_0.5", 0.5, Perturbation::radial},
                     {"angular_0.02", 0.02, Perturbation::angular},
                     {"angular_0.05", 0.05, Perturbation::angular}};
    for (const Fx& f : fx) {
      const double q =
          willmore_q(fundamental_forms(embed(g, perturbed_cap(g, 2.0, f.eps, f.p), cfg)), c);
      rep.checks.push_back({std::string("willmore_strict_") + f.name,
                            "q exceeds the bound on strictly convex fixtures", q - c.willmore_rhs,
                            "48x96", q > c.willmore_rhs});
    }
  }

  {  // minimal disk is stationary for the mean curvature flow
    const PolarGrid g(24, 48);
    const FlowState st = make_state(g, totally_geodesic_disk(g), cfg);
    const double r = mcf_rhs(st, cfg).cwiseAbs().maxCoeff();
    rep.checks.push_back({"mcf_disk_stationary", "the totally geodesic disk is a fixed point", r,
                          "24x48", r < 1e-12});
  }
  return rep;
}

// ---------------------------------------------------------------------------

const TimeSeriesRecord& record_near(const Trajectory& tr, double t) {
  if (tr.records.empty()) throw ContractViolation("record_near: empty trajectory");
  size_t best = 0;
  for (size_t k = 1; k < tr.records.size(); ++k)
    if (std::abs(tr.records[k].t - t) < std::abs(tr.records[best].t - t)) best = k;
  return tr.records[best];
}

double area_growth_deviation(const Trajectory& tr, double t_end) {
  double worst = 0.0;
  for (const TimeSeriesRecord& r : tr.records)
    if (r.t <= t_end) worst = std::max(worst, std::abs(r.area * std::exp(-r.t) / tr.initial_area - 1.0));
  return worst;
}

double worst_q_increase(const Trajectory& tr) {
  double worst = -std::numeric_limits<double>::infinity();
  for (size_t k = 0; k + 1 < tr.records.size(); ++k)
    worst = std::max(worst, (tr.records[k + 1].q - tr.records[k].q) / std::abs(tr.records[k].q));
  return worst;
}

double worst_zeta_rise(const Trajectory& tr) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const TimeSeriesRecord& r : tr.records)
    worst = std::max(worst, r.zeta_max - tr.records.front().zeta_max);
  return worst;
}

double final_plane_proxy(const Trajectory& tr) {
  const BallConfig b = make_ball_config(tr.config.n, tr.config.rho0);
  const ScalarField& u = tr.snapshots.back().u;
  return fit_totally_geodesic(fundamental_forms(embed(tr.grid, u, b))).hausdorff_proxy;
}

EvolutionResiduals evolution_residuals(const Trajectory& tr, double t_lo, double t_hi) {
  if (tr.frames.size() < 3) throw ContractViolation("evolution_residuals: need at least 3 frames");
  const BallConfig b = make_ball_config(tr.config.n, tr.config.rho0);
  const PolarGrid& g = tr.grid;
  const double n = tr.config.n;
  const bool imcf = tr.config.mode == FlowMode::imcf;
  EvolutionResiduals res;
  auto geom = [&](size_t k) { return fundamental_forms(embed(g, tr.frames[k].u, b)); };
  SurfaceGeometry prev = geom(0), cur = geom(1);
  for (size_t k = 1; k + 1 < tr.frames.size(); ++k) {
    SurfaceGeometry next = geom(k + 1);
    const double t = tr.frames[k].t;
    if (t >= t_lo && t <= t_hi) {
      const double h1 = t - tr.frames[k - 1].t, h2 = tr.frames[k + 1].t - t;
      const double a = -h2 / (h1 * (h1 + h2)), c0 = (h2 - h1) / (h1 * h2), c = h1 / (h2 * (h1 + h2));
      const Field<4> V = a * prev.z + c0 * cur.z + c * next.z;  // dz/dt at fixed xi
      const ScalarField lp = prev.H.array().log().matrix(), lc = cur.H.array().log().matrix(),
                        ln = next.H.array().log().matrix();
      const ScalarField dlogH = a * lp + c0 * lc + c * ln;
      const ScalarField lH_s = d_s(g, lc), lH_t = d_t(g, lc);
      const ScalarField lapLogH = laplace_beltrami(cur, lc);
      const ScalarField gradH2 = gradient_norm2(cur, cur.H);
      const ScalarField L0 = laplace_beltrami(cur, ScalarField(cur.z.row(0)));
      const ScalarField L1 = laplace_beltrami(cur, ScalarField(cur.z.row(1)));
      for (int i = 0; i < g.nodes(); ++i) {
        const double H = cur.H(i);
        const Vec4 nu = cur.nu.col(i), v = V.col(i);
        const double vn = mink(v, nu);
        // tangential velocity in coordinates: g^{ij} <V, z_j>
        const double ps = mink(v, cur.zs.col(i)), pt = mink(v, cur.zt.col(i));
        const double ws = cur.iss(i) * ps + cur.ist(i) * pt, wt = cur.ist(i) * ps + cur.itt(i) * pt;
        if (imcf) {
          const double r0 = std::abs(vn * nu(0) - L0(i) / (H * H) + n * cur.z(0, i) / (H * H) - 2.0 * nu(0) / H);
          const double r1 = std::abs(vn * nu(1) - L1(i) / (H * H) + n * cur.z(1, i) / (H * H) - 2.0 * nu(1) / H);
          res.z0 = std::max(res.z0, r0);
          res.z1 = std::max(res.z1, r1);
          const double si = g.s(g.ring_of(i));
          if (si <= 0.85) {
            const double Dt = dlogH(i) - ws * lH_s(i) - wt * lH_t(i);
            const double rhs = -gradH2(i) / (H * H * H * H) - (cur.A2(i) - n) / (H * H);
            const double rr = std::abs(Dt - lapLogH(i) / (H * H) - rhs);
            // near the axis round-off in H is amplified like (s dtheta)^-4
            if (si >= 0.15) res.logH = std::max(res.logH, rr);
          }
        }
      }
      ++res.samples;
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return res;
}

FlowConfig reference_config() {
  FlowConfig c;
  c.h_min_stop = 0.02;
  return c;
}

Report flow_identity_suite(const Trajectory& fine, const Trajectory* coarse) {
  Report rep{"flow", {}};
  const FlowConfig& cfg = fine.config;
  const std::string gf = grid_name(cfg.grid_radial, cfg.grid_angular);
  const BallConfig b = make_ball_config(cfg.n, cfg.rho0);
  const double T = fine.T_star;
  const TimeSeriesRecord& last = fine.records.back();

  rep.checks.push_back({"run_completed", "the run stops without a numerical abort",
                        fine.aborted ? 1.0 : 0.0, gf, !fine.aborted});
  double kmin = std::numeric_limits<double>::infinity();
  for (const TimeSeriesRecord& r : fine.records) kmin = std::min(kmin, r.min_kappa);
  rep.checks.push_back({"strict_convexity_preserved", "min principal curvature stays positive", kmin,
                        gf, kmin > 0.0 && !fine.aborted});
  const double dev = area_growth_deviation(fine, 0.9 * T);
  rep.checks.push_back({"area_growth", "|M_t| = e^t |M_0| up to 0.9 T*", dev, gf,
                        std::isfinite(T) && dev <= 0.01});
  const double tstop = std::abs(last.t - T) / T;
  rep.checks.push_back({"stop_time", "stop time against T* = log(lambda / |M_0|)", tstop, gf,
                        std::isfinite(tstop) && tstop <= 0.1});
  const double proxy = final_plane_proxy(fine) / b.r0;
  rep.checks.push_back({"plane_fit", "final surface is close to a totally geodesic disk (units of r0)",
                        proxy, gf, proxy < 0.02});
  const double dq = worst_q_increase(fine);
  rep.checks.push_back({"q_decreasing", "the Willmore-type quantity q decreases", dq, gf,
                        dq < kMonotoneSlack});
  const double dz = worst_zeta_rise(fine);
  rep.checks.push_back({"zeta_nonincreasing", "max(log H + log z0) does not increase", dz, gf,
                        dz <= kMonotoneSlack});
  const double h2 = last.int_H2 / fine.records.front().int_H2;
  rep.checks.push_back({"int_H2_decay", "integral of H^2 decays (ratio stop / start)", h2, gf, h2 <= 0.05});
  const double stahl = record_near(fine, 0.5 * T).stahl_res;
  rep.checks.push_back({"stahl_mid_flow", "boundary condition d_eta log H = -coth rho0 at mid-flow",
                        stahl, gf, stahl <= 0.05});

  double neumann = 0.0;
  for (const Frame& f : fine.frames) {
    const ScalarField us = d_s(fine.grid, f.u);
    for (int k = 0; k < fine.grid.nt(); ++k)
      neumann = std::max(neumann, std::abs(us(fine.grid.index(fine.grid.nr(), k))));
  }
  rep.checks.push_back({"neumann_exact", "discrete d u / d s vanishes at s = 1 after every step",
                        neumann, gf, neumann < 1e-10});

  if (coarse) {
    const std::string gp = grid_pair(coarse->config.grid_radial, coarse->config.grid_angular);
    const double sc = record_near(*coarse, 0.5 * T).stahl_res;
    rep.checks.push_back({"stahl_refinement", "Stahl residual decreases under refinement", stahl, gp,
                          stahl < sc});
    double fbc = 0.0, fbf = 0.0;
    for (const TimeSeriesRecord& r : coarse->records) fbc = std::max(fbc, r.fb_res);
    for (const TimeSeriesRecord& r : fine.records) fbf = std::max(fbf, r.fb_res);
    rep.checks.push_back({"free_boundary_refinement", "max |<nu, eta>| on the boundary is O(h)", fbf,
                          gp, kFirstOrder.accepts(fbc, fbf)});
    // skip the initial layer: the cap does not satisfy the boundary condition on H at t = 0
    const double lo = 0.2 * T, hi = 0.7 * T;
    const EvolutionResiduals ec = evolution_residuals(*coarse, lo, hi);
    const EvolutionResiduals ef = evolution_residuals(fine, lo, hi);
    auto add = [&](const char* name, const char* what, double c, double f) {
      rep.checks.push_back({name, what, f, gp, ec.samples > 0 && ef.samples > 0 && c >= 3.0 * f});
    };
    add("evolution_z0", "(d_t - L/H^2) z0 = -n z0/H^2 + 2 nu0/H", ec.z0, ef.z0);
    add("evolution_z1", "(d_t - L/H^2) z1 = -n z1/H^2 + 2 nu1/H", ec.z1, ef.z1);
    add("evolution_log_H", "(d_t - L/H^2) log H = -|grad H|^2/H^4 - (|A|^2 - n)/H^2", ec.logH, ef.logH);
  }
  return rep;
}

Report mcf_suite(const Trajectory& tr) {
  Report rep{"mcf", {}};
  const std::string gn = grid_name(tr.config.grid_radial, tr.config.grid_angular);
  const auto& R = tr.records;
  double rise = -std::numeric_limits<double>::infinity();
  for (size_t k = 0; k + 1 < R.size(); ++k) rise = std::max(rise, R[k + 1].area - R[k].area);
  rep.checks.push_back({"area_decreasing", "area strictly decreases under mean curvature flow", rise,
                        gn, R.size() > 1 && rise < 0.0});
  double worst = 0.0;
  int samples = 0;
  for (size_t k = 1; k + 1 < R.size(); ++k) {
    const double h1 = R[k].t - R[k - 1].t, h2 = R[k + 1].t - R[k].t;
    const double rate = -h2 / (h1 * (h1 + h2)) * R[k - 1].area + (h2 - h1) / (h1 * h2) * R[k].area +
                        h1 / (h2 * (h1 + h2)) * R[k + 1].area;
    worst = std::max(worst, std::abs(rate / -R[k].int_H2 - 1.0));
    ++samples;
  }
  rep.checks.push_back({"first_variation", "d(area)/dt = -int H^2 (relative deviation)", worst, gn,
                        samples > 0 && worst <= 0.05});
  rep.checks.push_back({"strictification", "min kappa after the flow (weakly convex start)",
                        R.back().min_kappa, gn, R.back().min_kappa >= 1e-3});
  return rep;
}

FlowConfig mcf_strictification_config(int radial, int angular) {
  FlowConfig c;
  c.grid_radial = radial;
  c.grid_angular = angular;
  c.initial = InitialKind::perturbed_cap;
  c.perturbation = Perturbation::radial;
  const PolarGrid g(radial, angular);
  c.eps = weak_convexity_eps(g, make_ball_config(2, c.rho0), c.lambda_c, c.perturbation, 0.0, 1.0);
  c.mode = FlowMode::mcf;
  c.t_max = 0.01;
  c.convexity = ConvexityPolicy::monitor;
  return c;
}

Report run_report(const Trajectory& tr) {
  Report r = tr.config.mode == FlowMode::imcf ? flow_identity_suite(tr, nullptr) : mcf_suite(tr);
  r.suite = "run";
  return r;
}

}  // namespace hyperflow
