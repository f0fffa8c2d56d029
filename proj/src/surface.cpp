#include "hyperflow/surface.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <unsupported/Eigen/AutoDiff>

#include "hyperflow/detail/forms.hpp"
#include "hyperflow/errors.hpp"
#include "hyperflow/moebius.hpp"

namespace hyperflow {

namespace {

inline double mink(const Vec4& a, const Vec4& b) { return detail::mink4<double>(a, b); }

}  // namespace

Embedding embed(const PolarGrid& grid, const ScalarField& u, const BallConfig& cfg) {
  if (u.size() != grid.nodes())
    throw ContractViolation("embed: u has " + std::to_string(u.size()) + " values, grid has " +
                            std::to_string(grid.nodes()));
  Embedding e{grid, Field<4>(4, grid.nodes()), Field<4>(4, grid.nodes())};
  for (int j = 0; j < grid.rings(); ++j) {
    const double s = grid.s(j);
    for (int k = 0; k < grid.nt(); ++k) {
      const int idx = grid.index(j, k);
      const double th = grid.theta(k);
      ChartPoint<double, 2> p{Eigen::Vector2d(s * std::cos(th), s * std::sin(th)), u(idx)};
      e.z.col(idx) = chart_to_hyperboloid(p, cfg.r0);
      e.ref.col(idx) = -chart_lambda_tangent(p, cfg.r0);
    }
  }
  return e;
}

SurfaceGeometry fundamental_forms(const Embedding& e) {
  const PolarGrid& g = e.grid;
  SurfaceGeometry s;
  s.grid = g;
  s.z = e.z;
  s.zs = d_s(g, e.z);
  s.zt = d_t(g, e.z);
  s.zss = d_ss(g, e.z);
  s.zst = d_t(g, s.zs);
  s.ztt = d_tt(g, e.z);
  const int N = g.nodes();
  s.nu.resize(4, N);
  for (ScalarField* f : {&s.gss, &s.gst, &s.gtt, &s.det_g, &s.iss, &s.ist, &s.itt, &s.hss,
                         &s.hst, &s.htt, &s.H})
    f->resize(N);
  for (int i = 0; i < N; ++i) {
    const detail::NodeForms<double> f =
        detail::node_forms<double>(s.z.col(i), s.zs.col(i), s.zt.col(i), s.zss.col(i),
                                   s.zst.col(i), s.ztt.col(i), e.ref.col(i), i);
    s.nu.col(i) = f.nu;
    s.gss(i) = f.gss;
    s.gst(i) = f.gst;
    s.gtt(i) = f.gtt;
    s.det_g(i) = f.det;
    s.iss(i) = f.iss;
    s.ist(i) = f.ist;
    s.itt(i) = f.itt;
    s.hss(i) = f.hss;
    s.hst(i) = f.hst;
    s.htt(i) = f.htt;
    s.H(i) = f.H;
  }
  PrincipalCurvatures pc = principal_curvatures(s);
  s.kmin = std::move(pc.kmin);
  s.kmax = std::move(pc.kmax);
  s.Htilde = std::move(pc.Htilde);
  s.A2 = std::move(pc.A2);
  return s;
}

PrincipalCurvatures principal_curvatures(const SurfaceGeometry& s) {
  const Eigen::Index N = s.H.size();
  PrincipalCurvatures pc{ScalarField(N), ScalarField(N), ScalarField(N), ScalarField(N)};
  for (Eigen::Index i = 0; i < N; ++i) {
    const double H = s.H(i);
    const double K = (s.hss(i) * s.htt(i) - s.hst(i) * s.hst(i)) / s.det_g(i);
    const double disc = std::sqrt(std::max(0.0, 0.25 * H * H - K));
    pc.kmin(i) = 0.5 * H - disc;
    pc.kmax(i) = 0.5 * H + disc;
    pc.A2(i) = pc.kmin(i) * pc.kmin(i) + pc.kmax(i) * pc.kmax(i);
    pc.Htilde(i) = (pc.kmin(i) == 0.0 || pc.kmax(i) == 0.0)
                       ? std::numeric_limits<double>::infinity()
                       : 1.0 / pc.kmin(i) + 1.0 / pc.kmax(i);
  }
  return pc;
}

double integrate(const SurfaceGeometry& s, const ScalarField& field) {
  const PolarGrid& g = s.grid;
  double total = 0.0;
  for (int j = 0; j < g.nr(); ++j) {
    double ring = 0.0;
    for (int k = 0; k < g.nt(); ++k) {
      const int i = g.index(j, k);
      ring += field(i) * std::sqrt(s.det_g(i));
    }
    total += ring;
  }
  return total * g.ds() * g.dtheta();
}

double area(const SurfaceGeometry& s) {
  return integrate(s, ScalarField::Ones(s.grid.nodes()));
}

double boundary_length(const SurfaceGeometry& s) {
  const PolarGrid& g = s.grid;
  double total = 0.0;
  for (int k = 0; k < g.nt(); ++k) total += std::sqrt(s.gtt(g.index(g.nr(), k)));
  return total * g.dtheta();
}

double integral_Hp(const SurfaceGeometry& s, double p) {
  return integrate(s, s.H.array().pow(p).matrix());
}

Hessian2 covariant_hessian(const SurfaceGeometry& s, const ScalarField& f) {
  const PolarGrid& g = s.grid;
  const ScalarField fs = d_s(g, f), ft = d_t(g, f);
  const ScalarField fss = d_ss(g, f), fst = d_t(g, fs), ftt = d_tt(g, f);
  const int N = g.nodes();
  Hessian2 h{ScalarField(N), ScalarField(N), ScalarField(N)};
  for (int i = 0; i < N; ++i) {
    const Vec4 a = s.zs.col(i), b = s.zt.col(i);
    // Gamma_{ij,l} = <z_ij, z_l>; raise l with g^{kl}
    auto christ = [&](const Vec4& zij, double& gs, double& gt) {
      const double ls = mink(zij, a), lt = mink(zij, b);
      gs = s.iss(i) * ls + s.ist(i) * lt;
      gt = s.ist(i) * ls + s.itt(i) * lt;
    };
    double cs, ct;
    christ(s.zss.col(i), cs, ct);
    h.ss(i) = fss(i) - cs * fs(i) - ct * ft(i);
    christ(s.zst.col(i), cs, ct);
    h.st(i) = fst(i) - cs * fs(i) - ct * ft(i);
    christ(s.ztt.col(i), cs, ct);
    h.tt(i) = ftt(i) - cs * fs(i) - ct * ft(i);
  }
  return h;
}

ScalarField laplace_beltrami(const SurfaceGeometry& s, const ScalarField& f) {
  const Hessian2 h = covariant_hessian(s, f);
  return (s.iss.array() * h.ss.array() + 2.0 * s.ist.array() * h.st.array() +
          s.itt.array() * h.tt.array())
      .matrix();
}

ScalarField gradient_norm2(const SurfaceGeometry& s, const ScalarField& f) {
  const ScalarField fs = d_s(s.grid, f), ft = d_t(s.grid, f);
  return (s.iss.array() * fs.array().square() + 2.0 * s.ist.array() * fs.array() * ft.array() +
          s.itt.array() * ft.array().square())
      .matrix();
}

Eigen::RowVectorXd boundary_normal_derivative(const SurfaceGeometry& s, const ScalarField& f) {
  const PolarGrid& g = s.grid;
  const ScalarField fs = d_s(g, f), ft = d_t(g, f);
  Eigen::RowVectorXd out(g.nt());
  for (int k = 0; k < g.nt(); ++k) {
    const int i = g.index(g.nr(), k);
    out(k) = (s.iss(i) * fs(i) + s.ist(i) * ft(i)) / std::sqrt(s.iss(i));
  }
  return out;
}

Field<4> boundary_conormal(const SurfaceGeometry& s) {
  const PolarGrid& g = s.grid;
  Field<4> eta(4, g.nt());
  for (int k = 0; k < g.nt(); ++k) {
    const int i = g.index(g.nr(), k);
    eta.col(k) = (s.iss(i) * s.zs.col(i) + s.ist(i) * s.zt.col(i)) / std::sqrt(s.iss(i));
  }
  return eta;
}

Field<4> boundary_tangent(const SurfaceGeometry& s) {
  const PolarGrid& g = s.grid;
  Field<4> tau(4, g.nt());
  for (int k = 0; k < g.nt(); ++k) {
    const int i = g.index(g.nr(), k);
    tau.col(k) = s.zt.col(i) / std::sqrt(s.gtt(i));
  }
  return tau;
}

double second_fundamental_form(const SurfaceGeometry& s, int idx, const Vec4& X, const Vec4& Y) {
  // coordinates of X, Y in the (z_s, z_theta) frame
  const Vec4 a = s.zs.col(idx), b = s.zt.col(idx);
  const Eigen::Vector2d x(s.iss(idx) * mink(X, a) + s.ist(idx) * mink(X, b),
                          s.ist(idx) * mink(X, a) + s.itt(idx) * mink(X, b));
  const Eigen::Vector2d y(s.iss(idx) * mink(Y, a) + s.ist(idx) * mink(Y, b),
                          s.ist(idx) * mink(Y, a) + s.itt(idx) * mink(Y, b));
  return s.hss(idx) * x(0) * y(0) + s.hst(idx) * (x(0) * y(1) + x(1) * y(0)) +
         s.htt(idx) * x(1) * y(1);
}

double free_boundary_residual(const SurfaceGeometry& s) {
  const PolarGrid& g = s.grid;
  double worst = 0.0;
  for (int k = 0; k < g.nt(); ++k) {
    const int i = g.index(g.nr(), k);
    const Vec4 eta = sphere_outward_normal(Vec4(s.z.col(i)));
    worst = std::max(worst, std::abs(mink(s.nu.col(i), eta)));
  }
  return worst;
}

ScalarField mean_curvature_chart(const PolarGrid& grid, const ScalarField& u, const BallConfig& cfg) {
  if (u.size() != grid.nodes()) throw ContractViolation("mean_curvature_chart: size mismatch");
  using AD = Eigen::AutoDiffScalar<Eigen::Vector2d>;  // d/dw, d/dlambda
  const int n = 2;
  const ScalarField us = d_s(grid, u), ut = d_t(grid, u);
  const ScalarField uss = d_ss(grid, u), ust = d_t(grid, us), utt = d_tt(grid, u);
  ScalarField H(grid.nodes());
  for (int j = 0; j < grid.rings(); ++j) {
    const double s = grid.s(j);
    for (int k = 0; k < grid.nt(); ++k) {
      const int i = grid.index(j, k);
      const AD w(s * s, 2, 0), lam(u(i), 2, 1);
      const ChartMetric<AD> m = chart_factors<AD>(w, lam, cfg.r0);
      const AD A = m.phi1 * pow(m.phi2, n - 2);
      const AD B = pow(m.phi2, n) / m.phi1;
      const AD P1 = 1.0 / (m.phi1 * m.phi1);
      const AD P2 = 1.0 / (m.phi2 * m.phi2);

      const double a = us(i), b = ut(i) / s;  // gradient in (e_r, e_theta)
      const double du2 = a * a + b * b;
      const double lap = uss(i) + us(i) / s + utt(i) / (s * s);
      const double Hrr = uss(i);
      const double Hrt = ust(i) / s - ut(i) / (s * s);
      const double Htt = utt(i) / (s * s) + us(i) / s;
      const double Q = a * a * Hrr + 2.0 * a * b * Hrt + b * b * Htt;

      const double v2 = du2 * P2.value() + P1.value();
      const double v = std::sqrt(v2);
      const double v2_w = du2 * P2.derivatives()(0) + P1.derivatives()(0);
      const double v2_l = du2 * P2.derivatives()(1) + P1.derivatives()(1);
      const double xdu = s * us(i);  // xi . grad u

      const double T1 = A.value() / v * lap + 2.0 * xdu * A.derivatives()(0) / v -
                        A.value() / (2.0 * v2 * v) * (2.0 * P2.value() * Q + 2.0 * xdu * v2_w);
      const double T2 = -B.derivatives()(1) / v + B.value() * v2_l / (2.0 * v2 * v);
      H(i) = (T1 + T2) / (m.phi1.value() * std::pow(m.phi2.value(), n));
    }
  }
  return H;
}

}  // namespace hyperflow
