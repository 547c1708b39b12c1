#include "dexcube/kinematics.hpp"

#include <Eigen/LU>

#include "dexcube/symmetric_eigen.hpp"

namespace dexcube {

namespace {

constexpr double kSingularTolerance = 1e-12;

}  // namespace

Eigen::Vector3d inverse_kinematics(const MachineModel& m, const Eigen::Vector3d& p) {
  const Eigen::Vector3d rad = leg_radicands<double>(m, p);
  Eigen::Vector3d rho;
  for (int i = 0; i < 3; ++i) {
    const double root = detail::leg_root(rad[i]);
    const double axial = m.kind() == MachineKind::Orthoglide ? p[i] : p[2];
    rho[i] = axial + m.branch_sign(i) * root;
  }
  return rho;
}

LegEndpoints leg_endpoints(const MachineModel& m, const Eigen::Vector3d& p, const Eigen::Vector3d& rho) {
  LegEndpoints ends;
  if (m.kind() == MachineKind::Orthoglide) {
    ends.a = rho.asDiagonal();
    ends.b = p.transpose().replicate<3, 1>();
    return ends;
  }
  for (int i = 0; i < 3; ++i) {
    const double c = std::cos(m.anchor_angles()[i]);
    const double s = std::sin(m.anchor_angles()[i]);
    ends.a.row(i) << m.base_radius() * c, m.base_radius() * s, rho[i];
    ends.b.row(i) << p[0] + m.platform_radius() * c, p[1] + m.platform_radius() * s, p[2];
  }
  return ends;
}

Eigen::Matrix3d jjt(const MachineModel& m, const Eigen::Vector3d& p) {
  const JacobianPair<double> jp = jacobian_pair<double>(m, p);
  const double l = m.leg_length();
  if (std::abs(jp.A.determinant()) < kSingularTolerance * l * l * l) throw SingularConfiguration();
  const Eigen::Matrix3d j = jp.A.inverse() * jp.eta.asDiagonal();
  return j * j.transpose();
}

Eigen::Vector3d jjt_eigenvalues(const MachineModel& m, const Eigen::Vector3d& p) {
  return symmetric_eigenvalues(jjt(m, p));
}

Eigen::Vector3d transmission_factors(const MachineModel& m, const Eigen::Vector3d& p) {
  return jjt_eigenvalues(m, p).cwiseMax(0.0).cwiseSqrt();
}

SingularityMargins singularity_margins(const MachineModel& m, const Eigen::Vector3d& p) {
  const JacobianPair<double> jp = jacobian_pair<double>(m, p);
  return {jp.A.determinant(), jp.eta.prod()};
}

Vector3<Interval> pose_enclosure(const MachineModel& m, const Box& box) {
  Vector3<Interval> p;
  if (m.kind() == MachineKind::Orthoglide) {
    if (box.dim() != 3) throw std::invalid_argument("Orthoglide boxes are three-dimensional");
    p << box[0], box[1], box[2];
  } else {
    p << box[0], box[1], Interval(0.0);
  }
  return p;
}

Vector3<Gradient<Interval>> pose_gradient_enclosure(const MachineModel& m, const Box& box) {
  const Vector3<Interval> p = pose_enclosure(m, box);
  Vector3<Gradient<Interval>> g;
  for (int k = 0; k < 3; ++k)
    g[k] = k < m.search_dimension() ? Gradient<Interval>::variable(p[k], k) : Gradient<Interval>(p[k]);
  return g;
}

Eigen::Vector3d pose_from_point(const MachineModel& m, const Point& point) {
  if (m.kind() == MachineKind::Orthoglide) {
    if (point.size() != 3) throw std::invalid_argument("Orthoglide points are three-dimensional");
    return {point[0], point[1], point[2]};
  }
  if (point.size() < 2) throw std::invalid_argument("UraneSX points need x and y");
  return {point[0], point[1], 0.0};
}

Interval interval_char_poly_value(const MachineModel& m, const Box& box, double sigma) {
  return centered_enclosure<1>(m, box, [&](const auto& p, const auto& jp) {
    return std::array{char_poly_value(m, p, jp, sigma)};
  })[0];
}

Interval interval_det_a(const MachineModel& m, const Box& box) {
  return centered_enclosure<1>(m, box, [](const auto&, const auto& jp) { return std::array{det3(jp.A)}; })[0];
}

}  // namespace dexcube
