#pragma once
// Scaled Moebius chart psi(xi, lambda) of the pointed half ball.
// xi lives in the unit n-disk spanned by e_2..e_{n+1}; lambda >= 1 is the
// height along the e_1 axis. The chart metric is phi1^2 dlambda^2 + phi2^2 |dxi|^2.

#include <Eigen/Dense>
#include <unsupported/Eigen/AutoDiff>
#include <cmath>

#include "hyperflow/errors.hpp"
#include "hyperflow/hyperbolic.hpp"

namespace hyperflow {

template <typename Scalar, int N = Eigen::Dynamic>
struct ChartPoint {
  Eigen::Matrix<Scalar, N, 1> xi;
  Scalar lambda;
};

template <typename Scalar>
struct ChartMetric {
  Scalar phi;   // (1+lambda)^2 + (1-lambda)^2 |xi|^2
  Scalar f2;    // |f|^2, with psi = r0 f
  Scalar phi1;  // lambda-direction factor
  Scalar phi2;  // xi-direction factor
};

/// Chart factors as functions of w = |xi|^2 and lambda only. Templated so
/// that AutoDiff scalars can differentiate them.
template <typename Scalar>
ChartMetric<Scalar> chart_factors(const Scalar& w, const Scalar& lambda, double r0) {
  const Scalar one(1);
  const Scalar lm1 = lambda - one;
  const Scalar lp1 = lambda + one;
  const Scalar phi = lp1 * lp1 + lm1 * lm1 * w;
  const Scalar lm = lambda * lambda - one;
  const Scalar num = Scalar(16) * lambda * lambda * w + (one + w) * (one + w) * lm * lm;
  const Scalar f2 = num / (phi * phi);
  const Scalar conf = one - Scalar(r0 * r0) * f2;
  if (!(phi > Scalar(0)) || !(conf > Scalar(0)) || !(lambda > Scalar(0)))
    throw DomainError("chart_metric: outside the chart (degenerate factors)");
  const Scalar den = phi * conf;
  return ChartMetric<Scalar>{phi, f2, Scalar(4 * r0) * (one + w) / den,
                             Scalar(8 * r0) * lambda / den};
}

template <typename Scalar, int N>
ChartMetric<Scalar> chart_metric(const ChartPoint<Scalar, N>& p, double r0) {
  return chart_factors<Scalar>(p.xi.squaredNorm(), p.lambda, r0);
}

namespace detail {
template <int N>
constexpr int ball_dim() {
  return N == Eigen::Dynamic ? Eigen::Dynamic : N + 1;
}
}  // namespace detail

/// psi(xi, lambda) = r0 (4 lambda xi + (1+|xi|^2)(lambda^2-1) e1) / phi
template <typename Scalar, int N>
Eigen::Matrix<Scalar, detail::ball_dim<N>(), 1> chart_to_ball(const ChartPoint<Scalar, N>& p,
                                                              double r0) {
  const Scalar w = p.xi.squaredNorm();
  const Scalar one(1);
  const Scalar phi = (one + p.lambda) * (one + p.lambda) +
                     (one - p.lambda) * (one - p.lambda) * w;
  Eigen::Matrix<Scalar, detail::ball_dim<N>(), 1> x(p.xi.size() + 1);
  x(0) = Scalar(r0) * (one + w) * (p.lambda * p.lambda - one) / phi;
  x.tail(p.xi.size()) = (Scalar(4 * r0) * p.lambda / phi) * p.xi;
  return x;
}

template <typename Scalar, int N>
auto chart_to_hyperboloid(const ChartPoint<Scalar, N>& p, double r0) {
  return ball_to_hyperboloid(chart_to_ball(p, r0));
}

/// v = |grad(u - lambda)|_b = sqrt(|du|^2/phi2^2 + 1/phi1^2); the graph
/// normal satisfies <d/dlambda, nu> = -1/v.
template <typename Scalar, int N, typename DerivedDu>
Scalar speed_factor_v(const ChartPoint<Scalar, N>& p, const Eigen::MatrixBase<DerivedDu>& du,
                      double r0) {
  using std::sqrt;
  const ChartMetric<Scalar> m = chart_metric(p, r0);
  return sqrt(du.squaredNorm() / (m.phi2 * m.phi2) + Scalar(1) / (m.phi1 * m.phi1));
}

/// d z / d lambda at fixed xi, by forward-mode AutoDiff through the chart.
template <int N>
Eigen::Matrix<double, detail::plus_one<Eigen::Matrix<double, detail::ball_dim<N>(), 1>>(), 1>
chart_lambda_tangent(const ChartPoint<double, N>& p, double r0) {
  using AD = Eigen::AutoDiffScalar<Eigen::Matrix<double, 1, 1>>;
  ChartPoint<AD, N> q;
  q.xi = p.xi.template cast<AD>();
  q.lambda = AD(p.lambda, 1, 0);
  const auto z = chart_to_hyperboloid(q, r0);
  Eigen::Matrix<double, detail::plus_one<Eigen::Matrix<double, detail::ball_dim<N>(), 1>>(), 1>
      dz(z.size());
  for (Eigen::Index a = 0; a < z.size(); ++a) dz(a) = z(a).derivatives()(0);
  return dz;
}

}  // namespace hyperflow
