#ifndef DEXCUBE_CERTIFY_HPP
#define DEXCUBE_CERTIFY_HPP

#include <limits>

#include <Eigen/Core>

#include "dexcube/box.hpp"
#include "dexcube/machine.hpp"

namespace dexcube {

/// Bounds on the velocity transmission factors, psi_min <= psi_i <= psi_max,
/// and the matching eigenvalue bounds sigma = psi^2.
class DextrousSpec {
 public:
  DextrousSpec(double psi_min, double psi_max);
  /// psi_min = 1 / psi_max.
  static DextrousSpec from_psi_max(double psi_max) { return {1.0 / psi_max, psi_max}; }

  double psi_min() const noexcept { return psi_min_; }
  double psi_max() const noexcept { return psi_max_; }
  double sigma_min() const noexcept { return psi_min_ * psi_min_; }
  double sigma_max() const noexcept { return psi_max_ * psi_max_; }

  bool admits(const Eigen::Vector3d& psi) const {
    return psi.minCoeff() >= psi_min_ && psi.maxCoeff() <= psi_max_;
  }

 private:
  double psi_min_;
  double psi_max_;
};

enum class Reachability { Inside, Outside, Straddles };
enum class ZeroExclusion { ProvenNoZero, PossibleZero };
enum class Verdict : int { Outside = -1, Undetermined = 0, Inside = 1 };

const char* to_string(Verdict v);
const char* to_string(Reachability r);

struct BoxVerdict {
  Verdict code = Verdict::Undetermined;
  /// Eigenvalues of J J^T at the box midpoint (NaN when not computed).
  Eigen::Vector3d witness = Eigen::Vector3d::Constant(std::numeric_limits<double>::quiet_NaN());
};

/// Default number of halvings per axis allowed inside one zero-exclusion
/// check: sub-boxes are not split below width(B) / 2^budget.
inline constexpr int kDefaultSplitBudget = 12;

/// Interval test of the three cylinder constraints over the box.
Reachability in_reachable_domain(const MachineModel& m, const Box& box);

/// Tries to prove that det(B B^T - sigma A A^T) has no zero over the box by
/// interval evaluation with adaptive bisection. Sound but incomplete.
ZeroExclusion zero_excluded(const MachineModel& m, const Box& box, double sigma,
                            int budget = kDefaultSplitBudget);

/// Module M(B): Inside (+1) when every pose of the box has all transmission
/// factors within the bounds, Outside (-1) when every pose violates one,
/// Undetermined (0) otherwise.
///
/// The midpoint eigenvalues fix the side; the verdict then extends to the
/// whole box when the characteristic polynomial cannot vanish at the
/// relevant threshold (the inertia of B B^T - sigma A A^T is constant on the
/// box). Inside additionally requires det(A) != 0 over the box and the box to
/// lie fully in the reachable domain.
BoxVerdict classify(const MachineModel& m, const Box& box, const DextrousSpec& spec,
                    int budget = kDefaultSplitBudget);

enum class PointStatus { InBounds, OutOfBounds, Unreachable, Singular };

/// Floating-point status of one pose (no certification).
PointStatus point_status(const MachineModel& m, const Point& point, const DextrousSpec& spec);

}  // namespace dexcube

#endif  // DEXCUBE_CERTIFY_HPP
