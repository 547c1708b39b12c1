#include "dexcube/box.hpp"

#include <algorithm>

namespace dexcube {

Box::Box(IntervalVector dims) : dims_(std::move(dims)) {
  if (dims_.size() < 2 || dims_.size() > 3) throw std::invalid_argument("Box dimension must be 2 or 3");
}

Box::Box(std::initializer_list<Interval> dims) : dims_(static_cast<Eigen::Index>(dims.size())) {
  if (dims.size() < 2 || dims.size() > 3) throw std::invalid_argument("Box dimension must be 2 or 3");
  std::copy(dims.begin(), dims.end(), dims_.data());
}

Box Box::cube(const Point& center, double half_edge) {
  if (!(half_edge >= 0.0)) throw std::invalid_argument("cube half edge must be non-negative");
  IntervalVector dims(center.size());
  for (Eigen::Index i = 0; i < center.size(); ++i)
    dims[i] = Interval{rounding::sub_down(center[i], half_edge), rounding::add_up(center[i], half_edge)};
  return Box(std::move(dims));
}

std::string_view Box::label(Eigen::Index axis) {
  static constexpr std::string_view kLabels[] = {"x", "y", "z"};
  return kLabels[axis];
}

double Box::width() const {
  double w = 0.0;
  for (Eigen::Index i = 0; i < dim(); ++i) w = std::max(w, dims_[i].width());
  return w;
}

Eigen::Index Box::widest_axis() const {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < dim(); ++i)
    if (dims_[i].width() > dims_[best].width()) best = i;
  return best;
}

Point Box::midpoint() const {
  Point p(dim());
  for (Eigen::Index i = 0; i < dim(); ++i) p[i] = dims_[i].mid();
  return p;
}

Point Box::lower() const {
  Point p(dim());
  for (Eigen::Index i = 0; i < dim(); ++i) p[i] = dims_[i].lo();
  return p;
}

Point Box::upper() const {
  Point p(dim());
  for (Eigen::Index i = 0; i < dim(); ++i) p[i] = dims_[i].hi();
  return p;
}

bool Box::contains(const Point& p) const {
  if (p.size() != dim()) return false;
  for (Eigen::Index i = 0; i < dim(); ++i)
    if (!dims_[i].contains(p[i])) return false;
  return true;
}

bool Box::subset_of(const Box& other) const {
  if (other.dim() != dim()) return false;
  for (Eigen::Index i = 0; i < dim(); ++i)
    if (!dims_[i].subset_of(other.dims_[i])) return false;
  return true;
}

Box Box::inflated(double r) const {
  IntervalVector dims(dim());
  for (Eigen::Index i = 0; i < dim(); ++i)
    dims[i] = Interval{rounding::sub_down(dims_[i].lo(), r), rounding::add_up(dims_[i].hi(), r)};
  return Box(std::move(dims));
}

std::pair<Box, Box> Box::bisect(Eigen::Index axis) const {
  if (axis < 0 || axis >= dim()) throw std::out_of_range("bisect axis out of range");
  const Interval& x = dims_[axis];
  const double m = x.mid();
  if (!(x.lo() < m && m < x.hi())) throw DegenerateAxis();
  IntervalVector left = dims_;
  IntervalVector right = dims_;
  left[axis] = Interval{x.lo(), m};
  right[axis] = Interval{m, x.hi()};
  return {Box(std::move(left)), Box(std::move(right))};
}

bool operator==(const Box& a, const Box& b) {
  if (a.dim() != b.dim()) return false;
  for (Eigen::Index i = 0; i < a.dim(); ++i)
    if (!(a.dims_[i] == b.dims_[i])) return false;
  return true;
}

}  // namespace dexcube
