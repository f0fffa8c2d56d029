#pragma once
// Per-node fundamental forms, templated on the scalar so the flow can push
// AutoDiff numbers through exactly the code that computes the geometry.

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "hyperflow/errors.hpp"

namespace hyperflow::detail {

template <typename S>
using V4 = Eigen::Matrix<S, 4, 1>;

template <typename S>
S mink4(const V4<S>& a, const V4<S>& b) {
  return -a(0) * b(0) + a(1) * b(1) + a(2) * b(2) + a(3) * b(3);
}

template <typename S>
S det3(const S& a0, const S& a1, const S& a2, const S& b0, const S& b1, const S& b2, const S& c0,
       const S& c1, const S& c2) {
  return a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) + a2 * (b0 * c1 - b1 * c0);
}

/// Euclidean generalized cross product in R^4: r . x = det[x; a; b; c].
template <typename S>
V4<S> cross4(const V4<S>& a, const V4<S>& b, const V4<S>& c) {
  V4<S> r;
  r(0) = det3(a(1), a(2), a(3), b(1), b(2), b(3), c(1), c(2), c(3));
  r(1) = -det3(a(0), a(2), a(3), b(0), b(2), b(3), c(0), c(2), c(3));
  r(2) = det3(a(0), a(1), a(3), b(0), b(1), b(3), c(0), c(1), c(3));
  r(3) = -det3(a(0), a(1), a(2), b(0), b(1), b(2), c(0), c(1), c(2));
  return r;
}

template <typename S>
struct NodeForms {
  V4<S> nu;
  S gss, gst, gtt, det;
  S iss, ist, itt;
  S hss, hst, htt;
  S H;
};

/// Unit normal from (z, z_s, z_theta), oriented so <nu, ref> > 0, then
/// g_ij = <z_i, z_j>, h_ij = -<z_ij, nu>, H = g^ij h_ij.
template <typename S, typename Ref>
NodeForms<S> node_forms(const V4<S>& z, const V4<S>& zs, const V4<S>& zt, const V4<S>& zss,
                        const V4<S>& zst, const V4<S>& ztt, const Ref& ref, int idx) {
  using std::sqrt;
  NodeForms<S> f;
  f.gss = mink4(zs, zs);
  f.gst = mink4(zs, zt);
  f.gtt = mink4(zt, zt);
  f.det = f.gss * f.gtt - f.gst * f.gst;
  if (!(f.det > S(0)))
    throw SingularGeometryError("fundamental_forms: degenerate tangents at node " +
                                std::to_string(idx));
  V4<S> c = cross4(z, zs, zt);
  c(0) = -c(0);  // lower the index: <nu, x> = c . x
  const S nn = mink4(c, c);
  if (!(nn > S(0)))
    throw SingularGeometryError("fundamental_forms: no spacelike normal at node " +
                                std::to_string(idx));
  f.nu = c / sqrt(nn);
  const S side = -f.nu(0) * ref(0) + f.nu(1) * ref(1) + f.nu(2) * ref(2) + f.nu(3) * ref(3);
  if (side < S(0)) f.nu = -f.nu;
  f.iss = f.gtt / f.det;
  f.ist = -f.gst / f.det;
  f.itt = f.gss / f.det;
  f.hss = -mink4(zss, f.nu);
  f.hst = -mink4(zst, f.nu);
  f.htt = -mink4(ztt, f.nu);
  f.H = f.iss * f.hss + S(2) * f.ist * f.hst + f.itt * f.htt;
  return f;
}

}  // namespace hyperflow::detail
