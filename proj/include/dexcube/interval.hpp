#ifndef DEXCUBE_INTERVAL_HPP
#define DEXCUBE_INTERVAL_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>

#include <Eigen/Core>

namespace dexcube {

class DivisionByZeroInterval : public std::domain_error {
 public:
  DivisionByZeroInterval() : std::domain_error("interval division by an interval containing zero") {}
};

class EmptyDomain : public std::domain_error {
 public:
  explicit EmptyDomain(const char* what) : std::domain_error(what) {}
};

namespace rounding {

// Directed rounding without touching the FPU mode. Each helper computes the
// round-to-nearest result and then uses an error-free transformation (TwoSum
// or an fma residual) to decide whether the exact value lies below or above
// it. Only inexact results are moved by one ulp, so exact operations such as
// 1*2 or 0+x stay exact. Requires IEEE semantics: build without -ffast-math
// and with -ffp-contract=off.

inline constexpr double kTiny = 0x1p-960;  // below this fma residuals may underflow

inline double next_down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
inline double next_up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

inline double two_sum_error(double a, double b, double s) {
  const double bb = s - a;
  return (a - (s - bb)) + (b - bb);
}

inline double add_down(double a, double b) {
  const double s = a + b;
  return two_sum_error(a, b, s) < 0.0 ? next_down(s) : s;
}
inline double add_up(double a, double b) {
  const double s = a + b;
  return two_sum_error(a, b, s) > 0.0 ? next_up(s) : s;
}
inline double sub_down(double a, double b) { return add_down(a, -b); }
inline double sub_up(double a, double b) { return add_up(a, -b); }

inline double mul_down(double a, double b) {
  const double p = a * b;
  const double e = std::fma(a, b, -p);
  if (e < 0.0 || (p != 0.0 && std::abs(p) < kTiny) || (p == 0.0 && a != 0.0 && b != 0.0))
    return next_down(p);
  return p;
}
inline double mul_up(double a, double b) {
  const double p = a * b;
  const double e = std::fma(a, b, -p);
  if (e > 0.0 || (p != 0.0 && std::abs(p) < kTiny) || (p == 0.0 && a != 0.0 && b != 0.0))
    return next_up(p);
  return p;
}

// a = q*b + r exactly, so the true quotient is q + r/b.
inline double div_down(double a, double b) {
  const double q = a / b;
  const double r = std::fma(-q, b, a);
  if ((r != 0.0 && ((r < 0.0) != (b < 0.0))) || (q != 0.0 && std::abs(q) < kTiny)) return next_down(q);
  return q;
}
inline double div_up(double a, double b) {
  const double q = a / b;
  const double r = std::fma(-q, b, a);
  if ((r != 0.0 && ((r < 0.0) == (b < 0.0))) || (q != 0.0 && std::abs(q) < kTiny)) return next_up(q);
  return q;
}

// x = s*s + r exactly (sqrt is correctly rounded).
inline double sqrt_down(double x) {
  const double s = std::sqrt(x);
  return std::fma(-s, s, x) < 0.0 ? next_down(s) : s;
}
inline double sqrt_up(double x) {
  const double s = std::sqrt(x);
  return std::fma(-s, s, x) > 0.0 ? next_up(s) : s;
}

}  // namespace rounding

/// Closed real interval [lo, hi] with lo <= hi. Every operation returns an
/// enclosure of the exact real result, rounded outward where the floating
/// point result is inexact. There is no empty Interval value; only
/// intersect() can produce "nothing", and it reports that as std::nullopt.
class Interval {
 public:
  constexpr Interval() noexcept = default;
  // Implicit so that plain doubles mix with intervals (and so Eigen can
  // build Scalar(0), Scalar(1)).
  constexpr Interval(double v) noexcept : lo_(v), hi_(v) {}  // NOLINT
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(lo <= hi)) throw std::invalid_argument("Interval requires lo <= hi");
  }

  constexpr double lo() const noexcept { return lo_; }
  constexpr double hi() const noexcept { return hi_; }
  double width() const noexcept { return hi_ - lo_; }
  double mid() const noexcept { return lo_ == hi_ ? lo_ : 0.5 * lo_ + 0.5 * hi_; }
  double mag() const noexcept { return std::max(std::abs(lo_), std::abs(hi_)); }

  bool contains(double v) const noexcept { return lo_ <= v && v <= hi_; }
  bool contains_zero() const noexcept { return lo_ <= 0.0 && 0.0 <= hi_; }
  bool subset_of(const Interval& o) const noexcept { return o.lo_ <= lo_ && hi_ <= o.hi_; }
  bool is_point() const noexcept { return lo_ == hi_; }

  Interval& operator+=(const Interval& o);
  Interval& operator-=(const Interval& o);
  Interval& operator*=(const Interval& o);
  Interval& operator/=(const Interval& o);

  friend bool operator==(const Interval& a, const Interval& b) noexcept {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

 private:
  struct Unchecked {};
  constexpr Interval(double lo, double hi, Unchecked) noexcept : lo_(lo), hi_(hi) {}

  friend Interval operator+(const Interval&, const Interval&);
  friend Interval operator-(const Interval&, const Interval&);
  friend Interval operator-(const Interval&);
  friend Interval operator*(const Interval&, const Interval&);
  friend Interval operator/(const Interval&, const Interval&);
  friend Interval square(const Interval&);
  friend Interval sqrt(const Interval&);
  friend Interval hull(const Interval&, const Interval&);
  friend std::optional<Interval> intersect(const Interval&, const Interval&);

  double lo_ = 0.0;
  double hi_ = 0.0;
};

inline Interval operator+(const Interval& a, const Interval& b) {
  return {rounding::add_down(a.lo_, b.lo_), rounding::add_up(a.hi_, b.hi_), Interval::Unchecked{}};
}

inline Interval operator-(const Interval& a, const Interval& b) {
  return {rounding::sub_down(a.lo_, b.hi_), rounding::sub_up(a.hi_, b.lo_), Interval::Unchecked{}};
}

inline Interval operator-(const Interval& a) { return {-a.hi_, -a.lo_, Interval::Unchecked{}}; }

inline Interval operator*(const Interval& a, const Interval& b) {
  using namespace rounding;
  if (a.lo_ >= 0.0 && b.lo_ >= 0.0)
    return {mul_down(a.lo_, b.lo_), mul_up(a.hi_, b.hi_), Interval::Unchecked{}};
  if (a.hi_ <= 0.0 && b.hi_ <= 0.0)
    return {mul_down(a.hi_, b.hi_), mul_up(a.lo_, b.lo_), Interval::Unchecked{}};
  const double lo = std::min({mul_down(a.lo_, b.lo_), mul_down(a.lo_, b.hi_), mul_down(a.hi_, b.lo_),
                              mul_down(a.hi_, b.hi_)});
  const double hi = std::max({mul_up(a.lo_, b.lo_), mul_up(a.lo_, b.hi_), mul_up(a.hi_, b.lo_),
                              mul_up(a.hi_, b.hi_)});
  return {lo, hi, Interval::Unchecked{}};
}

inline Interval operator/(const Interval& a, const Interval& b) {
  using namespace rounding;
  if (b.contains_zero()) throw DivisionByZeroInterval();
  const double lo = std::min({div_down(a.lo_, b.lo_), div_down(a.lo_, b.hi_), div_down(a.hi_, b.lo_),
                              div_down(a.hi_, b.hi_)});
  const double hi = std::max({div_up(a.lo_, b.lo_), div_up(a.lo_, b.hi_), div_up(a.hi_, b.lo_),
                              div_up(a.hi_, b.hi_)});
  return {lo, hi, Interval::Unchecked{}};
}

inline Interval& Interval::operator+=(const Interval& o) { return *this = *this + o; }
inline Interval& Interval::operator-=(const Interval& o) { return *this = *this - o; }
inline Interval& Interval::operator*=(const Interval& o) { return *this = *this * o; }
inline Interval& Interval::operator/=(const Interval& o) { return *this = *this / o; }

/// Tight square: [0, max(lo^2, hi^2)] when the interval straddles zero.
inline Interval square(const Interval& x) {
  using namespace rounding;
  if (x.lo_ >= 0.0) return {mul_down(x.lo_, x.lo_), mul_up(x.hi_, x.hi_), Interval::Unchecked{}};
  if (x.hi_ <= 0.0) return {mul_down(x.hi_, x.hi_), mul_up(x.lo_, x.lo_), Interval::Unchecked{}};
  return {0.0, std::max(mul_up(x.lo_, x.lo_), mul_up(x.hi_, x.hi_)), Interval::Unchecked{}};
}

inline Interval pow2(const Interval& x) { return square(x); }

/// Square root of X ∩ [0, inf). Throws EmptyDomain when X lies entirely below zero.
inline Interval sqrt(const Interval& x) {
  if (x.hi_ < 0.0) throw EmptyDomain("sqrt of an entirely negative interval");
  const double lo = x.lo_ > 0.0 ? rounding::sqrt_down(x.lo_) : 0.0;
  return {lo, rounding::sqrt_up(x.hi_), Interval::Unchecked{}};
}

inline Interval neg(const Interval& x) { return -x; }

inline Interval hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_), Interval::Unchecked{}};
}

inline std::optional<Interval> intersect(const Interval& a, const Interval& b) {
  const double lo = std::max(a.lo_, b.lo_);
  const double hi = std::min(a.hi_, b.hi_);
  if (lo > hi) return std::nullopt;
  return Interval{lo, hi, Interval::Unchecked{}};
}

inline std::ostream& operator<<(std::ostream& os, const Interval& x) {
  return os << '[' << x.lo() << ", " << x.hi() << ']';
}

// Scalar overloads so kinematics templates read the same for double and Interval.
inline double square(double x) { return x * x; }

}  // namespace dexcube

namespace Eigen {

template <>
struct NumTraits<dexcube::Interval> : GenericNumTraits<double> {
  using Real = dexcube::Interval;
  using NonInteger = dexcube::Interval;
  using Nested = dexcube::Interval;
  using Literal = double;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 6,
    MulCost = 12
  };
};

}  // namespace Eigen

#endif  // DEXCUBE_INTERVAL_HPP
