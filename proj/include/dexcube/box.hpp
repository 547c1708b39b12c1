#ifndef DEXCUBE_BOX_HPP
#define DEXCUBE_BOX_HPP

#include <initializer_list>
#include <stdexcept>
#include <string_view>
#include <utility>

#include <Eigen/Core>

#include "dexcube/interval.hpp"

namespace dexcube {

/// Points and interval vectors of dimension 2 or 3, stored inline.
using Point = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 3, 1>;
using IntervalVector = Eigen::Matrix<Interval, Eigen::Dynamic, 1, Eigen::ColMajor, 3, 1>;

class DegenerateAxis : public std::invalid_argument {
 public:
  DegenerateAxis() : std::invalid_argument("cannot bisect a box along a zero-width axis") {}
};

/// Axis-aligned box: a product of 2 or 3 non-empty intervals labelled x, y[, z].
class Box {
 public:
  explicit Box(IntervalVector dims);
  Box(std::initializer_list<Interval> dims);

  /// The box [center - half, center + half] on every axis.
  static Box cube(const Point& center, double half_edge);
  static Box point(const Point& p) { return cube(p, 0.0); }

  Eigen::Index dim() const noexcept { return dims_.size(); }
  const Interval& operator[](Eigen::Index i) const { return dims_[i]; }
  const IntervalVector& dims() const noexcept { return dims_; }
  static std::string_view label(Eigen::Index axis);

  /// Largest edge length over all axes.
  double width() const;
  /// Axis of largest width; ties go to the lowest index.
  Eigen::Index widest_axis() const;
  Point midpoint() const;
  Point lower() const;
  Point upper() const;

  bool contains(const Point& p) const;
  bool subset_of(const Box& other) const;

  /// Minkowski sum with the cube [-r, r]^d (outward rounded).
  Box inflated(double r) const;

  /// Split at the midpoint of `axis`. The children share the split plane.
  std::pair<Box, Box> bisect(Eigen::Index axis) const;

  friend bool operator==(const Box& a, const Box& b);

 private:
  IntervalVector dims_;
};

}  // namespace dexcube

#endif  // DEXCUBE_BOX_HPP
