#include "dexcube/machine.hpp"

#include <cmath>
#include <numbers>

namespace dexcube {

namespace {

void check_signs(const BranchSigns& signs) {
  for (int s : signs)
    if (s != 1 && s != -1) throw InvalidGeometry("branch signs must be +1 or -1");
}

// glibc cos/sin are accurate to < 1 ulp; two ulps either side is safe.
Interval enclose_libm(double v) {
  using rounding::next_down;
  using rounding::next_up;
  return {next_down(next_down(v)), next_up(next_up(v))};
}

}  // namespace

std::string_view to_string(MachineKind kind) {
  return kind == MachineKind::Orthoglide ? "orthoglide" : "uranesx";
}

MachineKind machine_kind_from_string(std::string_view name) {
  if (name == "orthoglide") return MachineKind::Orthoglide;
  if (name == "uranesx") return MachineKind::UraneSX;
  throw InvalidGeometry("unknown machine '" + std::string(name) + "'");
}

MachineModel MachineModel::orthoglide(double leg_length, BranchSigns signs) {
  if (!(leg_length > 0.0) || !std::isfinite(leg_length)) throw InvalidGeometry("leg length L must be > 0");
  check_signs(signs);
  MachineModel m;
  m.kind_ = MachineKind::Orthoglide;
  m.leg_length_ = leg_length;
  m.signs_ = signs;
  return m;
}

MachineModel MachineModel::uranesx(double leg_length, double base_radius, double platform_radius,
                                   BranchSigns signs) {
  constexpr double kThird = 2.0 * std::numbers::pi / 3.0;
  return uranesx(leg_length, base_radius, platform_radius, signs, {0.0, kThird, 2.0 * kThird});
}

MachineModel MachineModel::uranesx(double leg_length, double base_radius, double platform_radius,
                                   BranchSigns signs, const std::array<double, 3>& anchor_angles) {
  if (!(leg_length > 0.0) || !std::isfinite(leg_length)) throw InvalidGeometry("leg length L must be > 0");
  if (!(platform_radius > 0.0)) throw InvalidGeometry("platform radius r must be > 0");
  if (!(base_radius > platform_radius)) throw InvalidGeometry("base radius R must exceed platform radius r");
  if (!(base_radius - platform_radius < leg_length))
    throw InvalidGeometry("R - r must be smaller than the leg length L");
  check_signs(signs);

  MachineModel m;
  m.kind_ = MachineKind::UraneSX;
  m.leg_length_ = leg_length;
  m.base_radius_ = base_radius;
  m.platform_radius_ = platform_radius;
  m.signs_ = signs;
  m.anchor_angles_ = anchor_angles;

  const double d = base_radius - platform_radius;
  const Interval d_iv = Interval(base_radius) - Interval(platform_radius);
  for (int i = 0; i < 3; ++i) {
    const double c = std::cos(anchor_angles[i]);
    const double s = std::sin(anchor_angles[i]);
    m.anchors_[i] = Eigen::Vector2d(d * c, d * s);
    const Interval c_iv = c == 1.0 || c == 0.0 ? Interval(c) : enclose_libm(c);
    const Interval s_iv = s == 0.0 ? Interval(s) : enclose_libm(s);
    m.anchor_enclosures_[i] = {d_iv * c_iv, d_iv * s_iv};
  }
  return m;
}

}  // namespace dexcube
