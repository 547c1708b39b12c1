#ifndef DEXCUBE_MACHINE_HPP
#define DEXCUBE_MACHINE_HPP

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "dexcube/interval.hpp"

namespace dexcube {

class OutsideReachableDomain : public std::domain_error {
 public:
  OutsideReachableDomain() : std::domain_error("pose outside the reachable domain (negative leg radicand)") {}
};

class SingularConfiguration : public std::domain_error {
 public:
  SingularConfiguration() : std::domain_error("parallel singularity: det(A) vanishes") {}
};

class InvalidGeometry : public std::invalid_argument {
 public:
  explicit InvalidGeometry(const std::string& what) : std::invalid_argument(what) {}
};

enum class MachineKind { Orthoglide, UraneSX };

std::string_view to_string(MachineKind kind);
MachineKind machine_kind_from_string(std::string_view name);

/// Branch sign s_i of each leg: rho_i = (axial coordinate) + s_i * sqrt(radicand_i).
using BranchSigns = std::array<int, 3>;

/// Orthoglide legs sit on the negative side of their axes (rho = -L at the
/// isotropic point), which puts the parallel singularity x = y = z = -L/sqrt(6)
/// away from the working region.
inline constexpr BranchSigns kOrthoglideDefaultSigns{-1, -1, -1};
inline constexpr BranchSigns kUraneSXDefaultSigns{1, 1, 1};

/// Geometry of one of the two 3-PRPaR translational machines.
///
/// Orthoglide: prismatic axes along x, y, z through the origin; leg i links
/// a_i = rho_i e_i to the tool point b_i = p.
///
/// UraneSX: three vertical prismatic axes through the vertices of an
/// equilateral triangle of circumradius R centred at O; the platform joints
/// sit on a triangle of circumradius r around p. Only R - r enters the
/// kinematics, and nothing depends on z.
class MachineModel {
 public:
  static MachineModel orthoglide(double leg_length = 1.0, BranchSigns signs = kOrthoglideDefaultSigns);
  static MachineModel uranesx(double leg_length, double base_radius, double platform_radius,
                              BranchSigns signs = kUraneSXDefaultSigns);
  /// UraneSX with explicit anchor angles (radians) of the three prismatic axes.
  static MachineModel uranesx(double leg_length, double base_radius, double platform_radius,
                              BranchSigns signs, const std::array<double, 3>& anchor_angles);

  MachineKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return to_string(kind_); }
  double leg_length() const noexcept { return leg_length_; }
  double base_radius() const noexcept { return base_radius_; }
  double platform_radius() const noexcept { return platform_radius_; }
  /// R - r.
  double offset() const noexcept { return base_radius_ - platform_radius_; }
  const std::array<double, 3>& anchor_angles() const noexcept { return anchor_angles_; }
  int branch_sign(int leg) const { return signs_.at(leg); }
  const BranchSigns& branch_signs() const noexcept { return signs_; }

  /// 3 for the Orthoglide (cube search), 2 for the UraneSX (x-y square search).
  int search_dimension() const noexcept { return kind_ == MachineKind::Orthoglide ? 3 : 2; }

  /// Centre (x, y) of the i-th UraneSX cylinder, (R - r)(cos phi_i, sin phi_i).
  const Eigen::Vector2d& anchor(int leg) const { return anchors_.at(leg); }
  /// Outward-rounded enclosure of anchor(leg).
  const std::array<Interval, 2>& anchor_enclosure(int leg) const { return anchor_enclosures_.at(leg); }

 private:
  MachineModel() = default;

  MachineKind kind_ = MachineKind::Orthoglide;
  double leg_length_ = 1.0;
  double base_radius_ = 0.0;
  double platform_radius_ = 0.0;
  BranchSigns signs_{};
  std::array<double, 3> anchor_angles_{};
  std::array<Eigen::Vector2d, 3> anchors_{};
  std::array<std::array<Interval, 2>, 3> anchor_enclosures_{};
};

}  // namespace dexcube

#endif  // DEXCUBE_MACHINE_HPP
