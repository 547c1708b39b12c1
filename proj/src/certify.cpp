#include "dexcube/certify.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "dexcube/kinematics.hpp"

namespace dexcube {

namespace {

// Eigenvalues closer than this (relative) to a threshold give no side information.
constexpr double kThresholdMargin = 1e-9;

enum Check : unsigned { kSigmaMin = 1u, kSigmaMax = 2u, kDetA = 4u };
constexpr std::array<Check, 3> kChecks{kSigmaMin, kSigmaMax, kDetA};

int sign_of(const Interval& v) {
  if (v.lo() > 0.0) return 1;
  if (v.hi() < 0.0) return -1;
  return 0;
}

int index_of(Check c) { return c == kSigmaMin ? 0 : (c == kSigmaMax ? 1 : 2); }

// Adaptive bisection proof that a set of functions keeps a constant, known
// sign over a box. Returns +1 when proven, 0 when the split budget ran out,
// -1 when a sign change was found (a zero certainly exists).
class SignProver {
 public:
  SignProver(const MachineModel& m, double sigma_min, double sigma_max, double min_width)
      : m_(m), sigma_{sigma_min, sigma_max}, min_width_(min_width) {}

  void expect(Check c, int sign) { expected_[index_of(c)] = sign; }

  int prove(const Box& box, unsigned pending) const {
    std::array<Interval, 3> at_mid;
    const std::array<Interval, 3> vals = enclose(box, &at_mid);
    unsigned open = 0;
    for (Check c : kChecks) {
      if (!(pending & c)) continue;
      const int s = sign_of(vals[index_of(c)]);
      if (s == 0)
        open |= c;
      else if (s != expected_[index_of(c)])
        return -1;
    }
    if (!open) return 1;

    // A point of the wrong sign settles the question early.
    for (Check c : kChecks) {
      if (!(open & c)) continue;
      const int s = sign_of(at_mid[index_of(c)]);
      if (s != 0 && s != expected_[index_of(c)]) return -1;
    }

    if (!(box.width() > min_width_)) return 0;
    const auto [left, right] = box.bisect(box.widest_axis());
    const int r = prove(left, open);
    if (r != 1) return r;
    return prove(right, open);
  }

  // Sign at the box midpoint, evaluated rigorously on the degenerate box.
  int reference_sign(Check c, const Box& box) const {
    const Vector3<Interval> mid = pose_enclosure(m_, Box::point(box.midpoint()));
    return sign_of(functions(mid, jacobian_pair<Interval>(m_, mid))[index_of(c)]);
  }

 private:
  template <typename Scalar>
  std::array<Scalar, 3> functions(const Vector3<Scalar>& p, const JacobianPair<Scalar>& jp) const {
    return {char_poly_value(m_, p, jp, sigma_[0]), char_poly_value(m_, p, jp, sigma_[1]), det3(jp.A)};
  }

  std::array<Interval, 3> enclose(const Box& box, std::array<Interval, 3>* at_mid) const {
    return centered_enclosure<3>(
        m_, box, [this](const auto& p, const auto& jp) { return functions(p, jp); }, at_mid);
  }

  const MachineModel& m_;
  std::array<double, 2> sigma_;
  std::array<int, 3> expected_{};
  double min_width_;
};

double min_split_width(const Box& box, int budget) {
  if (budget < 0) throw std::invalid_argument("split budget must be non-negative");
  return std::ldexp(box.width(), -budget);
}

// Points of the 3^d lattice {lo, mid, hi}^d of the box.
template <typename Fn>
bool any_lattice_point(const Box& box, Fn&& fn) {
  const Eigen::Index d = box.dim();
  int total = 1;
  for (Eigen::Index i = 0; i < d; ++i) total *= 3;
  Point q(d);
  for (int code = 0; code < total; ++code) {
    int c = code;
    for (Eigen::Index i = 0; i < d; ++i, c /= 3) {
      const Interval& x = box[i];
      q[i] = c % 3 == 0 ? x.lo() : (c % 3 == 1 ? x.mid() : x.hi());
    }
    if (fn(q)) return true;
  }
  return false;
}

bool near_threshold(double sigma, double threshold) {
  return std::abs(sigma - threshold) <= kThresholdMargin * threshold;
}

}  // namespace

DextrousSpec::DextrousSpec(double psi_min, double psi_max) : psi_min_(psi_min), psi_max_(psi_max) {
  if (!(psi_min > 0.0 && psi_min <= 1.0 && psi_max >= 1.0 && std::isfinite(psi_max)))
    throw std::invalid_argument("transmission bounds must satisfy 0 < psi_min <= 1 <= psi_max");
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Inside: return "inside";
    case Verdict::Outside: return "outside";
    case Verdict::Undetermined: return "undetermined";
  }
  return "?";
}

const char* to_string(Reachability r) {
  switch (r) {
    case Reachability::Inside: return "inside";
    case Reachability::Outside: return "outside";
    case Reachability::Straddles: return "straddles";
  }
  return "?";
}

Reachability in_reachable_domain(const MachineModel& m, const Box& box) {
  const Vector3<Interval> rad = leg_radicands<Interval>(m, pose_enclosure(m, box));
  bool all_inside = true;
  for (int i = 0; i < 3; ++i) {
    if (rad[i].hi() < 0.0) return Reachability::Outside;
    if (rad[i].lo() < 0.0) all_inside = false;
  }
  return all_inside ? Reachability::Inside : Reachability::Straddles;
}

ZeroExclusion zero_excluded(const MachineModel& m, const Box& box, double sigma, int budget) {
  if (in_reachable_domain(m, box) != Reachability::Inside) return ZeroExclusion::PossibleZero;
  SignProver prover(m, sigma, sigma, min_split_width(box, budget));
  const int ref = prover.reference_sign(kSigmaMin, box);
  if (ref == 0) return ZeroExclusion::PossibleZero;
  prover.expect(kSigmaMin, ref);
  return prover.prove(box, kSigmaMin) == 1 ? ZeroExclusion::ProvenNoZero : ZeroExclusion::PossibleZero;
}

PointStatus point_status(const MachineModel& m, const Point& point, const DextrousSpec& spec) {
  const Eigen::Vector3d pose = pose_from_point(m, point);
  if ((leg_radicands<double>(m, pose).array() < 0.0).any()) return PointStatus::Unreachable;
  try {
    return spec.admits(transmission_factors(m, pose)) ? PointStatus::InBounds : PointStatus::OutOfBounds;
  } catch (const SingularConfiguration&) {
    return PointStatus::Singular;
  }
}

BoxVerdict classify(const MachineModel& m, const Box& box, const DextrousSpec& spec, int budget) {
  BoxVerdict verdict;
  const Reachability reach = in_reachable_domain(m, box);
  if (reach == Reachability::Outside) {
    verdict.code = Verdict::Outside;
    return verdict;
  }
  if (reach == Reachability::Straddles) return verdict;

  const double smin = spec.sigma_min();
  const double smax = spec.sigma_max();
  try {
    verdict.witness = jjt_eigenvalues(m, pose_from_point(m, box.midpoint()));
  } catch (const SingularConfiguration&) {
    return verdict;
  }
  const Eigen::Vector3d& sigma = verdict.witness;
  for (int i = 0; i < 3; ++i)
    if (near_threshold(sigma[i], smin) || near_threshold(sigma[i], smax)) return verdict;

  const int below_min = static_cast<int>((sigma.array() < smin).count());
  const int below_max = static_cast<int>((sigma.array() < smax).count());
  // sign of g_s = det(A)^2 prod(sigma_i - s) is (-1)^(number of sigma_i below s)
  const int sign_min = below_min % 2 == 0 ? 1 : -1;
  const int sign_max = below_max % 2 == 0 ? 1 : -1;

  SignProver prover(m, smin, smax, min_split_width(box, budget));
  if (prover.reference_sign(kSigmaMin, box) != sign_min || prover.reference_sign(kSigmaMax, box) != sign_max)
    return verdict;
  prover.expect(kSigmaMin, sign_min);
  prover.expect(kSigmaMax, sign_max);

  const bool mid_inside = below_min == 0 && below_max == 3;
  if (mid_inside) {
    const bool mixed = any_lattice_point(box, [&](const Point& q) {
      return point_status(m, q, spec) != PointStatus::InBounds;
    });
    if (mixed) return verdict;
    const int det_sign = prover.reference_sign(kDetA, box);
    if (det_sign == 0) return verdict;
    prover.expect(kDetA, det_sign);
    if (prover.prove(box, kSigmaMin | kSigmaMax | kDetA) == 1) verdict.code = Verdict::Inside;
    return verdict;
  }

  const bool mixed = any_lattice_point(box, [&](const Point& q) {
    return point_status(m, q, spec) == PointStatus::InBounds;
  });
  if (mixed) return verdict;
  if (below_min > 0 && prover.prove(box, kSigmaMin) == 1) {
    verdict.code = Verdict::Outside;
  } else if (below_max < 3 && prover.prove(box, kSigmaMax) == 1) {
    verdict.code = Verdict::Outside;
  }
  return verdict;
}

}  // namespace dexcube
