#ifndef DEXCUBE_KINEMATICS_HPP
#define DEXCUBE_KINEMATICS_HPP

#include <array>
#include <cmath>
#include <type_traits>

#include <Eigen/Core>

#include "dexcube/box.hpp"
#include "dexcube/gradient.hpp"
#include "dexcube/interval.hpp"
#include "dexcube/machine.hpp"

namespace dexcube {

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;

/// Parallel and serial Jacobians at a pose: A p_dot = diag(eta) rho_dot.
/// Row i of A is the leg vector (b_i - a_i)^T, eta_i = (b_i - a_i)^T e_i.
/// radicand_i equals eta_i^2; for intervals it is kept separately because
/// it is a much tighter enclosure than squaring eta.
template <typename Scalar>
struct JacobianPair {
  Matrix3<Scalar> A;
  Vector3<Scalar> eta;
  Vector3<Scalar> radicand;
};

/// True for scalars carrying interval enclosures (Interval, Gradient<Interval>).
template <typename T>
struct is_interval_scalar : std::false_type {};
template <>
struct is_interval_scalar<Interval> : std::true_type {};
template <typename T>
struct is_interval_scalar<Gradient<T>> : is_interval_scalar<T> {};
template <typename T>
inline constexpr bool is_interval_scalar_v = is_interval_scalar<T>::value;

namespace detail {

inline double leg_root(double radicand) {
  if (radicand < 0.0) throw OutsideReachableDomain();
  return std::sqrt(radicand);
}

inline Interval leg_root(const Interval& radicand) {
  if (radicand.hi() < 0.0) throw OutsideReachableDomain();
  return sqrt(radicand);
}

inline Gradient<Interval> leg_root(const Gradient<Interval>& radicand) {
  if (radicand.v.hi() < 0.0) throw OutsideReachableDomain();
  return sqrt(radicand);
}

inline double clip_nonnegative(double v) { return v; }
inline Interval clip_nonnegative(const Interval& v) {
  return v.lo() >= 0.0 ? v : Interval(0.0, std::max(v.hi(), 0.0));
}
inline Gradient<Interval> clip_nonnegative(const Gradient<Interval>& v) {
  return {clip_nonnegative(v.v), v.d};
}

template <typename Scalar>
Scalar anchor_coordinate(const MachineModel& m, int leg, int axis) {
  if constexpr (is_interval_scalar_v<Scalar>)
    return Scalar(m.anchor_enclosure(leg)[static_cast<std::size_t>(axis)]);
  else
    return Scalar(m.anchor(leg)[axis]);
}

}  // namespace detail

/// Squared off-axis distance subtracted from L^2 for each leg; the pose is
/// reachable iff all three are non-negative.
template <typename Scalar>
Vector3<Scalar> leg_radicands(const MachineModel& m, const Vector3<Scalar>& p) {
  const Scalar l2 = square(Scalar(m.leg_length()));
  Vector3<Scalar> rad;
  if (m.kind() == MachineKind::Orthoglide) {
    for (int i = 0; i < 3; ++i) rad[i] = l2 - square(p[(i + 1) % 3]) - square(p[(i + 2) % 3]);
  } else {
    for (int i = 0; i < 3; ++i) {
      rad[i] = l2 - square(p[0] - detail::anchor_coordinate<Scalar>(m, i, 0)) -
               square(p[1] - detail::anchor_coordinate<Scalar>(m, i, 1));
    }
  }
  return rad;
}

template <typename Scalar>
JacobianPair<Scalar> jacobian_pair(const MachineModel& m, const Vector3<Scalar>& p) {
  JacobianPair<Scalar> jp;
  jp.radicand = leg_radicands(m, p);
  for (int i = 0; i < 3; ++i) {
    const Scalar axial = Scalar(-m.branch_sign(i)) * detail::leg_root(jp.radicand[i]);
    jp.eta[i] = axial;
    if (m.kind() == MachineKind::Orthoglide) {
      jp.A.row(i) = p.transpose();
      jp.A(i, i) = axial;
    } else {
      jp.A(i, 0) = p[0] - detail::anchor_coordinate<Scalar>(m, i, 0);
      jp.A(i, 1) = p[1] - detail::anchor_coordinate<Scalar>(m, i, 1);
      jp.A(i, 2) = axial;
    }
    jp.radicand[i] = detail::clip_nonnegative(jp.radicand[i]);
  }
  return jp;
}

/// Off-diagonal entry (i != j) of the Gram matrix A A^T, written so that
/// interval evaluation does not suffer from repeated variables.
template <typename Scalar>
Scalar leg_gram(const MachineModel& m, const Vector3<Scalar>& p, const JacobianPair<Scalar>& jp, int i, int j) {
  if (m.kind() == MachineKind::Orthoglide) {
    const int k = 3 - i - j;
    return jp.eta[i] * p[i] + jp.eta[j] * p[j] + square(p[k]);
  }
  if constexpr (is_interval_scalar_v<Scalar>) {
    // (x - c_i)(x - c_j) = (x - mid)^2 - half^2 with mid, half of c_i and c_j.
    Scalar sum = jp.eta[i] * jp.eta[j];
    for (int axis = 0; axis < 2; ++axis) {
      const Interval ci = m.anchor_enclosure(i)[static_cast<std::size_t>(axis)];
      const Interval cj = m.anchor_enclosure(j)[static_cast<std::size_t>(axis)];
      const Interval mid = (ci + cj) * Interval(0.5);
      const Interval half = (ci - cj) * Interval(0.5);
      sum = sum + square(p[axis] - Scalar(mid)) - Scalar(square(half));
    }
    return sum;
  } else {
    return jp.A.row(i).dot(jp.A.row(j));
  }
}

/// Determinant of a symmetric 3x3 matrix from its six distinct entries.
template <typename Scalar>
Scalar symmetric_det3(const Scalar& m00, const Scalar& m11, const Scalar& m22, const Scalar& m01,
                      const Scalar& m02, const Scalar& m12) {
  return m00 * (m11 * m22 - square(m12)) - m11 * square(m02) - m22 * square(m01) +
         Scalar(2.0) * (m01 * m02 * m12);
}

template <typename Scalar>
Scalar det3(const Matrix3<Scalar>& a) {
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

/// g_sigma = det(B B^T - sigma A A^T). Its zeros are the poses where sigma is
/// an eigenvalue of J J^T, since det(J J^T - sigma I) det(A)^2 = g_sigma.
/// The diagonal uses |b_i - a_i| = L exactly.
template <typename Scalar>
Scalar char_poly_value(const MachineModel& m, const Vector3<Scalar>& p, const JacobianPair<Scalar>& jp,
                       double sigma) {
  const Scalar s(sigma);
  const Scalar sl2 = s * square(Scalar(m.leg_length()));
  const Scalar m00 = jp.radicand[0] - sl2;
  const Scalar m11 = jp.radicand[1] - sl2;
  const Scalar m22 = jp.radicand[2] - sl2;
  const Scalar m01 = -(s * leg_gram(m, p, jp, 0, 1));
  const Scalar m02 = -(s * leg_gram(m, p, jp, 0, 2));
  const Scalar m12 = -(s * leg_gram(m, p, jp, 1, 2));
  return symmetric_det3(m00, m11, m22, m01, m02, m12);
}

/// Prismatic joint positions rho_i for the machine's branch signs.
Eigen::Vector3d inverse_kinematics(const MachineModel& m, const Eigen::Vector3d& p);

/// Positions of the leg end points A_i (on the prismatic axis) and B_i (on the platform).
struct LegEndpoints {
  Eigen::Matrix3d a;  // row i = A_i
  Eigen::Matrix3d b;  // row i = B_i
};
LegEndpoints leg_endpoints(const MachineModel& m, const Eigen::Vector3d& p, const Eigen::Vector3d& rho);

/// Eigenvalues sigma_1 <= sigma_2 <= sigma_3 of J J^T with J = A^{-1} B.
/// Throws SingularConfiguration when |det A| < 1e-12 L^3.
Eigen::Vector3d jjt_eigenvalues(const MachineModel& m, const Eigen::Vector3d& p);

/// Velocity transmission factors psi_i = sqrt(sigma_i), ascending.
Eigen::Vector3d transmission_factors(const MachineModel& m, const Eigen::Vector3d& p);

/// J J^T at a pose.
Eigen::Matrix3d jjt(const MachineModel& m, const Eigen::Vector3d& p);

struct SingularityMargins {
  double det_a;  // parallel singularity when 0
  double det_b;  // serial singularity when 0 (= eta_1 eta_2 eta_3)
};
SingularityMargins singularity_margins(const MachineModel& m, const Eigen::Vector3d& p);

/// Lifts a search-space box (3D for the Orthoglide, x-y for the UraneSX) to
/// a pose enclosure. UraneSX boxes get z = 0.
Vector3<Interval> pose_enclosure(const MachineModel& m, const Box& box);
/// Same lifting for a point.
Eigen::Vector3d pose_from_point(const MachineModel& m, const Point& point);

/// Pose enclosure whose coordinates carry unit derivative seeds for the
/// search axes (x, y, z for the Orthoglide; x, y for the UraneSX).
Vector3<Gradient<Interval>> pose_gradient_enclosure(const MachineModel& m, const Box& box);

/// Evaluates fn(p, jp) -> std::array<Scalar, N> over the box in centered
/// form: the natural interval extension intersected with the mean-value
/// form f(mid) + grad f(B) . (B - mid). Falls back to the natural extension
/// when a leg root touches zero inside the box (unbounded derivative).
/// The enclosure at the midpoint itself is stored in *at_mid when given.
template <std::size_t N, typename Fn>
std::array<Interval, N> centered_enclosure(const MachineModel& m, const Box& box, Fn&& fn,
                                           std::array<Interval, N>* at_mid_out = nullptr) {
  const Point mid = box.midpoint();
  const Vector3<Interval> pm = pose_enclosure(m, Box::point(mid));
  const std::array<Interval, N> at_mid = fn(pm, jacobian_pair<Interval>(m, pm));
  if (at_mid_out) *at_mid_out = at_mid;
  std::array<Interval, N> out;
  try {
    const Vector3<Gradient<Interval>> pg = pose_gradient_enclosure(m, box);
    const std::array<Gradient<Interval>, N> vals = fn(pg, jacobian_pair<Gradient<Interval>>(m, pg));
    for (std::size_t n = 0; n < N; ++n) {
      Interval mvf = at_mid[n];
      for (Eigen::Index k = 0; k < box.dim(); ++k)
        mvf = mvf + vals[n].d[static_cast<std::size_t>(k)] * (box[k] - Interval(mid[k]));
      out[n] = intersect(vals[n].v, mvf).value_or(vals[n].v);
    }
  } catch (const DivisionByZeroInterval&) {
    const Vector3<Interval> p = pose_enclosure(m, box);
    out = fn(p, jacobian_pair<Interval>(m, p));
  }
  return out;
}

/// Enclosure of det(B B^T - sigma A A^T) over every pose of the box.
Interval interval_char_poly_value(const MachineModel& m, const Box& box, double sigma);

/// Enclosure of det(A) over every pose of the box.
Interval interval_det_a(const MachineModel& m, const Box& box);

}  // namespace dexcube

#endif  // DEXCUBE_KINEMATICS_HPP
