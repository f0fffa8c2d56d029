#pragma once
// Polar grid over the closed unit disk: staggered rings s_j = (j+1/2)/nr,
// j < nr, plus one boundary ring at s = 1. Node index = j * nt + k.
// Fields are stored column-per-node (R x nodes), R = 1 for scalars.

#include <Eigen/Dense>
#include <array>
#include <vector>

namespace hyperflow {

/// Finite-difference weights at x0 for derivatives 0..m on nodes xs
/// (Fornberg's recursion). Returns (m+1) x xs.size().
Eigen::MatrixXd fornberg_weights(double x0, const std::vector<double>& xs, int m);

struct RadialStencil {
  int count = 0;
  std::array<int, 4> ring{};  // -1 = ring 0 reflected through the axis
  std::array<double, 4> w{};
};

class PolarGrid {
 public:
  PolarGrid() = default;
  PolarGrid(int radial, int angular);

  int nr() const { return nr_; }
  int nt() const { return nt_; }
  int rings() const { return nr_ + 1; }
  int nodes() const { return (nr_ + 1) * nt_; }
  int interior_nodes() const { return nr_ * nt_; }
  double ds() const { return ds_; }
  double dtheta() const { return dth_; }
  double s(int j) const { return j < nr_ ? (j + 0.5) * ds_ : 1.0; }
  double theta(int k) const { return k * dth_; }
  int index(int j, int k) const { return j * nt_ + wrap(k); }
  int wrap(int k) const { return ((k % nt_) + nt_) % nt_; }
  int ring_of(int idx) const { return idx / nt_; }
  int angle_of(int idx) const { return idx % nt_; }

  const RadialStencil& d1(int j) const { return d1_[j]; }
  const RadialStencil& d2(int j) const { return d2_[j]; }

  /// Node index feeding stencil entry `ring` at angle k (handles reflection).
  int source(int ring, int k) const {
    return ring < 0 ? index(0, k + nt_ / 2) : index(ring, k);
  }

  /// Boundary value making the one-sided d/ds vanish at s = 1.
  double neumann_ghost(double u_nm1, double u_nm2) const;

 private:
  int nr_ = 0, nt_ = 0;
  double ds_ = 0.0, dth_ = 0.0;
  std::vector<RadialStencil> d1_, d2_;
};

template <int R>
using Field = Eigen::Matrix<double, R, Eigen::Dynamic>;
using ScalarField = Eigen::RowVectorXd;

/// Field type matching an input expression (any scalar, AutoDiff included).
template <typename Derived>
using FieldOf = Eigen::Matrix<typename Derived::Scalar, Derived::RowsAtCompileTime, Eigen::Dynamic>;

namespace detail {
template <typename Derived>
FieldOf<Derived> radial_apply(const PolarGrid& g,
                                               const Eigen::MatrixBase<Derived>& f,
                                               bool second) {
  FieldOf<Derived> out(f.rows(), f.cols());
  for (int j = 0; j < g.rings(); ++j) {
    const RadialStencil& st = second ? g.d2(j) : g.d1(j);
    for (int k = 0; k < g.nt(); ++k) {
      auto col = out.col(g.index(j, k));
      col = st.w[0] * f.col(g.source(st.ring[0], k));
      for (int m = 1; m < st.count; ++m) col += st.w[m] * f.col(g.source(st.ring[m], k));
    }
  }
  return out;
}
}  // namespace detail

template <typename Derived>
FieldOf<Derived> d_s(const PolarGrid& g, const Eigen::MatrixBase<Derived>& f) {
  return detail::radial_apply(g, f, false);
}

template <typename Derived>
FieldOf<Derived> d_ss(const PolarGrid& g, const Eigen::MatrixBase<Derived>& f) {
  return detail::radial_apply(g, f, true);
}

template <typename Derived>
FieldOf<Derived> d_t(const PolarGrid& g, const Eigen::MatrixBase<Derived>& f) {
  FieldOf<Derived> out(f.rows(), f.cols());
  const double c = 0.5 / g.dtheta();
  for (int j = 0; j < g.rings(); ++j)
    for (int k = 0; k < g.nt(); ++k)
      out.col(g.index(j, k)) = c * (f.col(g.index(j, k + 1)) - f.col(g.index(j, k - 1)));
  return out;
}

template <typename Derived>
FieldOf<Derived> d_tt(const PolarGrid& g, const Eigen::MatrixBase<Derived>& f) {
  FieldOf<Derived> out(f.rows(), f.cols());
  const double c = 1.0 / (g.dtheta() * g.dtheta());
  for (int j = 0; j < g.rings(); ++j)
    for (int k = 0; k < g.nt(); ++k)
      out.col(g.index(j, k)) = c * (f.col(g.index(j, k + 1)) - 2.0 * f.col(g.index(j, k)) +
                                    f.col(g.index(j, k - 1)));
  return out;
}

/// Mixed derivative: angular difference of the radial derivative.
template <typename Derived>
FieldOf<Derived> d_st(const PolarGrid& g, const Eigen::MatrixBase<Derived>& f) {
  return d_t(g, d_s(g, f).eval());
}

}  // namespace hyperflow
