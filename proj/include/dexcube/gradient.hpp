#ifndef DEXCUBE_GRADIENT_HPP
#define DEXCUBE_GRADIENT_HPP

#include <array>

#include <Eigen/Core>

#include "dexcube/interval.hpp"

namespace dexcube {

/// Forward-mode first derivatives with respect to the three pose
/// coordinates. Gradient<Interval> evaluated over a box yields both the
/// natural interval extension (value) and an enclosure of the gradient
/// (d), which together give the mean-value form.
template <typename T>
struct Gradient {
  T v{};
  std::array<T, 3> d{};

  Gradient() = default;
  Gradient(double c) : v(c) {}  // NOLINT
  Gradient(const T& c) requires(!std::is_same_v<T, double>) : v(c) {}  // NOLINT
  Gradient(const T& value, const std::array<T, 3>& grad) : v(value), d(grad) {}

  static Gradient variable(const T& value, int axis) {
    Gradient g(value);
    g.d[static_cast<std::size_t>(axis)] = T(1.0);
    return g;
  }
};

template <typename T>
Gradient<T> operator+(const Gradient<T>& a, const Gradient<T>& b) {
  return {a.v + b.v, {a.d[0] + b.d[0], a.d[1] + b.d[1], a.d[2] + b.d[2]}};
}

template <typename T>
Gradient<T> operator-(const Gradient<T>& a, const Gradient<T>& b) {
  return {a.v - b.v, {a.d[0] - b.d[0], a.d[1] - b.d[1], a.d[2] - b.d[2]}};
}

template <typename T>
Gradient<T> operator-(const Gradient<T>& a) {
  return {-a.v, {-a.d[0], -a.d[1], -a.d[2]}};
}

template <typename T>
Gradient<T> operator*(const Gradient<T>& a, const Gradient<T>& b) {
  return {a.v * b.v, {a.v * b.d[0] + a.d[0] * b.v, a.v * b.d[1] + a.d[1] * b.v, a.v * b.d[2] + a.d[2] * b.v}};
}

template <typename T>
Gradient<T>& operator+=(Gradient<T>& a, const Gradient<T>& b) { return a = a + b; }
template <typename T>
Gradient<T>& operator-=(Gradient<T>& a, const Gradient<T>& b) { return a = a - b; }
template <typename T>
Gradient<T>& operator*=(Gradient<T>& a, const Gradient<T>& b) { return a = a * b; }

template <typename T>
Gradient<T> square(const Gradient<T>& a) {
  const T two_v = T(2.0) * a.v;
  return {square(a.v), {two_v * a.d[0], two_v * a.d[1], two_v * a.d[2]}};
}

/// sqrt with derivative d/(2 sqrt v); throws DivisionByZeroInterval when the
/// enclosure of sqrt(v) touches zero (the derivative is unbounded there).
inline Gradient<Interval> sqrt(const Gradient<Interval>& a) {
  const Interval root = sqrt(a.v);
  const Interval scale = Interval(1.0) / (Interval(2.0) * root);
  return {root, {a.d[0] * scale, a.d[1] * scale, a.d[2] * scale}};
}

}  // namespace dexcube

namespace Eigen {

template <typename T>
struct NumTraits<dexcube::Gradient<T>> : NumTraits<T> {
  using Real = dexcube::Gradient<T>;
  using NonInteger = dexcube::Gradient<T>;
  using Nested = dexcube::Gradient<T>;
  using Literal = double;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 24,
    MulCost = 96
  };
};

}  // namespace Eigen

#endif  // DEXCUBE_GRADIENT_HPP
