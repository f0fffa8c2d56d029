#include "hyperflow/polar_grid.hpp"

#include <string>

#include "hyperflow/errors.hpp"

namespace hyperflow {

Eigen::MatrixXd fornberg_weights(double x0, const std::vector<double>& xs, int m) {
  const int np = static_cast<int>(xs.size());
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(m + 1, np);
  double c1 = 1.0;
  double c4 = xs[0] - x0;
  c(0, 0) = 1.0;
  for (int i = 1; i < np; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = xs[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = xs[i] - xs[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c(k, i) = c1 * (k * c(k - 1, i - 1) - c5 * c(k, i - 1)) / c2;
        c(0, i) = -c1 * c5 * c(0, i - 1) / c2;
      }
      for (int k = mn; k >= 1; --k) c(k, j) = (c4 * c(k, j) - k * c(k - 1, j)) / c3;
      c(0, j) = c4 * c(0, j) / c3;
    }
    c1 = c2;
  }
  return c;
}

namespace {

RadialStencil make_stencil(const PolarGrid& g, int j, const std::vector<int>& rings, int order) {
  std::vector<double> xs;
  for (int r : rings) xs.push_back(r < 0 ? -g.s(0) : g.s(r));
  const Eigen::MatrixXd w = fornberg_weights(g.s(j), xs, order);
  RadialStencil st;
  st.count = static_cast<int>(rings.size());
  for (int m = 0; m < st.count; ++m) {
    st.ring[m] = rings[m];
    st.w[m] = w(order, m);
  }
  return st;
}

}  // namespace

PolarGrid::PolarGrid(int radial, int angular) : nr_(radial), nt_(angular) {
  if (radial < 8)
    throw ContractViolation("PolarGrid: radial_count must be >= 8, got " + std::to_string(radial));
  if (angular < 16 || angular % 2 != 0)
    throw ContractViolation("PolarGrid: angular_count must be even and >= 16, got " +
                            std::to_string(angular));
  ds_ = 1.0 / nr_;
  dth_ = 2.0 * 3.14159265358979323846 / nt_;
  d1_.resize(nr_ + 1);
  d2_.resize(nr_ + 1);
  const int N = nr_;
  for (int j = 0; j <= N; ++j) {
    if (j <= N - 2) {
      const int lo = j == 0 ? -1 : j - 1;
      d1_[j] = make_stencil(*this, j, {lo, j, j + 1}, 1);
      d2_[j] = make_stencil(*this, j, {lo, j, j + 1}, 2);
    } else if (j == N - 1) {
      // last staggered ring: the boundary node sits only h/2 away
      d1_[j] = make_stencil(*this, j, {N - 2, N - 1, N}, 1);
      d2_[j] = make_stencil(*this, j, {N - 3, N - 2, N - 1, N}, 2);
    } else {
      d1_[j] = make_stencil(*this, j, {N, N - 1, N - 2}, 1);
      d2_[j] = make_stencil(*this, j, {N, N - 1, N - 2, N - 3}, 2);
    }
  }
}

double PolarGrid::neumann_ghost(double u_nm1, double u_nm2) const {
  const RadialStencil& st = d1_[nr_];
  return -(st.w[1] * u_nm1 + st.w[2] * u_nm2) / st.w[0];
}

}  // namespace hyperflow
