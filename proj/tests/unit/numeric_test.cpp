#include "doctest.h"
#include "irrtopo/definable.hpp"
#include "irrtopo/index_set.hpp"
#include "irrtopo/interval_set.hpp"
#include "irrtopo/numeric.hpp"

using namespace irrtopo;

TEST_CASE("rationals normalize and round-trip through text") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(3, -6).str() == "-1/2");
  CHECK(Rational::parse("6/8") == Rational(3, 4));
  CHECK(Rational::parse("-7") == Rational(-7));
  CHECK(midpoint(Rational(0), Rational(1, 2)) == Rational(1, 4));
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational::parse("x"));
}

TEST_CASE("quadratic surds compare exactly against rationals and each other") {
  const Quadratic half_root2(Rational(0), Rational(1, 2), 2);
  CHECK(Quadratic(Rational(7, 10)) < half_root2);
  CHECK(half_root2 < Quadratic(Rational(71, 100)));
  CHECK(Quadratic(Rational(1, 2)) < half_root2);
  const Quadratic root3(Rational(0), Rational(1), 3);
  const Quadratic root2(Rational(0), Rational(1), 2);
  CHECK(root2 < root3);
  CHECK(Quadratic(Rational(1), Rational(-1), 2) < Quadratic(Rational(1, 2)));
  CHECK(Quadratic::parse(half_root2.str()) == half_root2);
  CHECK(Quadratic::compare(half_root2, half_root2) == 0);
}

TEST_CASE("index sets keep sorted disjoint runs") {
  const IndexSet a = IndexSet::range(0, 3) | IndexSet::range(4, 6);
  CHECK(a == IndexSet::range(0, 6));
  const IndexSet t = IndexSet::tail(5);
  CHECK(t.infinite());
  CHECK(t.min() == 5);
  CHECK_FALSE(t.max().has_value());
  CHECK((t & IndexSet::range(2, 7)) == IndexSet::range(5, 7));
  CHECK(t.complement() == IndexSet::range(0, 4));
  CHECK((IndexSet::single(3) | t).contains(3));
  CHECK_FALSE((IndexSet::single(3) | t).contains(4));
  CHECK(IndexSet::all().complement().empty());
}

TEST_CASE("interval sets merge adjacent parts and complement within a carrier") {
  const Interval carrier{Endpoint::closed(Rational(0)), Endpoint::closed(Rational(1))};
  const IntervalSet left(Interval{Endpoint::closed(Rational(0)), Endpoint::open(Rational(1, 2))});
  const IntervalSet right(Interval{Endpoint::closed(Rational(1, 2)), Endpoint::closed(Rational(1))});
  CHECK((left | right) == IntervalSet(carrier));
  CHECK((left & right).empty());
  CHECK(left.complement_in(carrier) == right);
  CHECK(left.contains(Rational(1, 3)));
  CHECK_FALSE(left.contains(Rational(1, 2)));
  const IntervalSet gap(std::vector<Interval>{{Endpoint::open(Rational(1, 2)), Endpoint::closed(Rational(1, 2))}});
  CHECK(gap.empty());
}

TEST_CASE("interval sets with surd cuts") {
  const Quadratic c(Rational(0), Rational(1, 2), 2);
  const IntervalSet below(Interval{Endpoint::closed(Rational(0)), Endpoint::open(c)});
  CHECK(below.contains(Rational(7, 10)));
  CHECK_FALSE(below.contains(Rational(71, 100)));
  const Rational r = rational_between(Quadratic(Rational(7, 10)), c);
  CHECK(Quadratic(Rational(7, 10)) < Quadratic(r));
  CHECK(Quadratic(r) < c);
  CHECK(floor(Quadratic(Rational(0), Rational(1), 2)) == 1);
}

TEST_CASE("cell sets obey de Morgan laws") {
  CellSet a = CellSet::none(2, 1);
  a.points[0] = true;
  a.chains[0] = IndexSet::range(0, 4);
  CellSet b = CellSet::none(2, 1);
  b.points[1] = true;
  b.chains[0] = IndexSet::tail(3);
  CHECK((a | b).complement() == (a.complement() & b.complement()));
  CHECK((a & b).complement() == (a.complement() | b.complement()));
  CHECK((a & b).chains[0] == IndexSet::range(3, 4));
  CHECK(a.meets(b));
  CHECK(CellSet::all(2, 1).complement().empty());
}
