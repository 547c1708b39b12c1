#ifndef DEXCUBE_SYMMETRIC_EIGEN_HPP
#define DEXCUBE_SYMMETRIC_EIGEN_HPP

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace dexcube {

/// Eigenvalues of a real symmetric 3x3 matrix, ascending, by the closed-form
/// trigonometric solution of the characteristic cubic. Only the upper
/// triangle is read.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 3, 1> symmetric_eigenvalues(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  using std::acos;
  using std::cos;
  using std::sqrt;
  EIGEN_STATIC_ASSERT_MATRIX_SPECIFIC_SIZE(Derived, 3, 3)

  const Scalar a00 = a(0, 0), a11 = a(1, 1), a22 = a(2, 2);
  const Scalar a01 = a(0, 1), a02 = a(0, 2), a12 = a(1, 2);

  const Scalar off = a01 * a01 + a02 * a02 + a12 * a12;
  const Scalar q = (a00 + a11 + a22) / Scalar(3);
  const Scalar d0 = a00 - q, d1 = a11 - q, d2 = a22 - q;
  const Scalar p2 = d0 * d0 + d1 * d1 + d2 * d2 + Scalar(2) * off;

  Eigen::Matrix<Scalar, 3, 1> eig;
  if (p2 == Scalar(0)) {
    eig.setConstant(q);
    return eig;
  }
  if (off == Scalar(0)) {
    eig << a00, a11, a22;
    std::sort(eig.data(), eig.data() + 3);
    return eig;
  }

  // B = (A - qI)/p has eigenvalues 2cos(phi + 2k pi/3) with cos(3 phi) = det(B)/2.
  const Scalar p = sqrt(p2 / Scalar(6));
  const Scalar b00 = d0 / p, b11 = d1 / p, b22 = d2 / p;
  const Scalar b01 = a01 / p, b02 = a02 / p, b12 = a12 / p;
  const Scalar det_b = b00 * (b11 * b22 - b12 * b12) - b01 * (b01 * b22 - b12 * b02) + b02 * (b01 * b12 - b11 * b02);
  const Scalar r = std::clamp(det_b / Scalar(2), Scalar(-1), Scalar(1));
  const Scalar phi = acos(r) / Scalar(3);

  const Scalar largest = q + Scalar(2) * p * cos(phi);
  const Scalar smallest = q + Scalar(2) * p * cos(phi + Scalar(2) * std::numbers::pi_v<Scalar> / Scalar(3));
  const Scalar middle = Scalar(3) * q - largest - smallest;
  eig << smallest, middle, largest;
  std::sort(eig.data(), eig.data() + 3);

  // The trigonometric values carry an absolute error of order eps * |A| /
  // sqrt(1 - r^2), which swamps eigenvalues much smaller than |A|. Deflate
  // the better-separated extreme eigenvalue: its eigenvector is well
  // conditioned, and the two others follow from the 2x2 block of A on the
  // orthogonal complement.
  const int k = eig[2] - eig[1] >= eig[1] - eig[0] ? 2 : 0;
  using Vec = Eigen::Matrix<Scalar, 3, 1>;
  Eigen::Matrix<Scalar, 3, 3> full;
  full << a00, a01, a02, a01, a11, a12, a02, a12, a22;
  const Eigen::Matrix<Scalar, 3, 3> shifted = full - eig[k] * Eigen::Matrix<Scalar, 3, 3>::Identity();
  const Vec r0 = shifted.row(0).transpose(), r1 = shifted.row(1).transpose(), r2 = shifted.row(2).transpose();
  Vec v = r0.cross(r1);
  for (const Vec& c : {r0.cross(r2), r1.cross(r2)})
    if (c.squaredNorm() > v.squaredNorm()) v = c;
  if (!(v.squaredNorm() > Scalar(0))) return eig;
  v.normalize();
  Eigen::Index axis = 0;
  v.cwiseAbs().minCoeff(&axis);
  const Vec u1 = v.cross(Vec::Unit(axis)).normalized();
  const Vec u2 = v.cross(u1);
  const Scalar c11 = u1.dot(full * u1), c22 = u2.dot(full * u2), c12 = u1.dot(full * u2);
  const Scalar mean = (c11 + c22) / Scalar(2);
  const Scalar radius = std::hypot((c11 - c22) / Scalar(2), c12);
  eig << mean - radius, mean + radius, v.dot(full * v);
  std::sort(eig.data(), eig.data() + 3);
  return eig;
}

}  // namespace dexcube

#endif  // DEXCUBE_SYMMETRIC_EIGEN_HPP
