#include <random>

#include "doctest.h"
#include "dexcube/interval.hpp"
#include "exact.hpp"

using dexcube::Interval;

TEST_CASE("interval arithmetic on exactly representable endpoints") {
  CHECK(Interval(1, 2) * Interval(-1, 3) == Interval(-2, 6));
  CHECK(Interval(0, 0) + Interval(-1.5, 2.25) == Interval(-1.5, 2.25));
  CHECK(Interval(1, 1) / Interval(2, 4) == Interval(0.25, 0.5));
  CHECK(Interval(1, 2) - Interval(0.5, 3) == Interval(-2, 1.5));
  CHECK(-Interval(1, 2) == Interval(-2, -1));
  CHECK(neg(Interval(-3, 4)) == Interval(-4, 3));
}

TEST_CASE("division by an interval containing zero is an error") {
  CHECK_THROWS_AS(Interval(1, 2) / Interval(-1, 1), dexcube::DivisionByZeroInterval);
  CHECK_THROWS_AS(Interval(1, 2) / Interval(0, 1), dexcube::DivisionByZeroInterval);
  CHECK_NOTHROW(Interval(1, 2) / Interval(0.5, 1));
}

TEST_CASE("sqrt is monotone and clips the negative part") {
  CHECK(sqrt(Interval(4, 9)) == Interval(2, 3));
  CHECK(sqrt(Interval(0, 0)) == Interval(0, 0));
  CHECK(sqrt(Interval(-1, 4)) == Interval(0, 2));
  CHECK_THROWS_AS(sqrt(Interval(-2, -1)), dexcube::EmptyDomain);
  const Interval r = sqrt(Interval(2, 2));
  CHECK(r.lo() < r.hi());
  CHECK(r.lo() * r.lo() <= 2.0);
}

TEST_CASE("pow2 is tight, hull and intersect follow set semantics") {
  CHECK(pow2(Interval(-2, 1)) == Interval(0, 4));
  CHECK(pow2(Interval(-3, -2)) == Interval(4, 9));
  CHECK(hull(Interval(0, 1), Interval(2, 3)) == Interval(0, 3));
  CHECK_FALSE(intersect(Interval(0, 1), Interval(2, 3)).has_value());
  CHECK(intersect(Interval(0, 2), Interval(1, 3)) == Interval(1, 2));
}

TEST_CASE("constructor rejects reversed or NaN endpoints") {
  CHECK_THROWS_AS(Interval(2, 1), std::invalid_argument);
  CHECK_THROWS_AS(Interval(std::nan(""), 1), std::invalid_argument);
}

TEST_CASE("inexact results are rounded outward") {
  const Interval s = Interval(0.1) + Interval(0.2);
  CHECK(exact::in(s, exact::Quad(0.1) + exact::Quad(0.2)));
  CHECK(s.lo() < s.hi());
  const Interval t = Interval(1) / Interval(3);
  CHECK(t.lo() < t.hi());
  CHECK(exact::contains(exact::Op::Div, t, 1.0, 3.0));
  // exact results stay points
  CHECK((Interval(0.5) * Interval(0.25)).is_point());
}

TEST_CASE("containment fuzzing") {
  const exact::FuzzResult r = exact::fuzz(20000, 7);
  CHECK(r.checks == 20000);
  CHECK(r.violations == 0);
}

TEST_CASE("inclusion isotonicity: narrower operands give narrower results") {
  std::mt19937_64 rng(11);
  for (int n = 0; n < 5000; ++n) {
    for (exact::Op op : exact::kOps) {
      Interval x = exact::random_interval(rng);
      Interval y = exact::random_interval(rng);
      if (op == exact::Op::Div && y.contains_zero()) continue;
      if (op == exact::Op::Sqrt && x.hi() < 0) x = -x;
      const double a = exact::random_point(rng, x), b = exact::random_point(rng, x);
      const double c = exact::random_point(rng, y), d = exact::random_point(rng, y);
      const Interval xs(std::min(a, b), std::max(a, b));
      const Interval ys(std::min(c, d), std::max(c, d));
      if (op == exact::Op::Sqrt && xs.hi() < 0) continue;
      REQUIRE(exact::apply(op, xs, ys).subset_of(exact::apply(op, x, y)));
    }
  }
}
