#include "doctest.h"
#include "irrtopo/spaces.hpp"
#include "oracles.hpp"

using namespace irrtopo;
using irrtopo::testing::load_space;

namespace {

PointId pt(const SpacePresentation& s, const char* text) { return parse_point(s, text); }
DefinableSet set(const SpacePresentation& s, const char* text) { return parse_set(s, text); }

}  // namespace

TEST_CASE("a two-point chain parses") {
  const SpacePresentation s = parse_presentation("space finite\npoints a b\nrel a <= b\ntopology alexandroff\n");
  CHECK(s.kind == SpaceKind::FinitePoset);
  CHECK(leq(s, pt(s, "a"), pt(s, "b")));
  CHECK_FALSE(leq(s, pt(s, "b"), pt(s, "a")));
}

TEST_CASE("the Lambda space validates and orders its chains") {
  const SpacePresentation s = load_space("lambda.space");
  CHECK(s.kind == SpaceKind::VSpace);
  CHECK(leq(s, pt(s, "A@3"), pt(s, "top")));
  CHECK_FALSE(leq(s, pt(s, "A@3"), pt(s, "B@5")));
  CHECK(leq(s, pt(s, "A@3"), pt(s, "A@4")));
  CHECK(up_set(s, set(s, "{A@2}")) == set(s, "tail(A,2) | {top}"));
}

TEST_CASE("a supremum that is not least is rejected") {
  const char* text =
      "space vspace\npoints p q\nchain A\nrel chain_below A p\nrel chain_below A q\nrel q <= p\nsup A = p\n"
      "topology scott\n";
  try {
    parse_presentation(text);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(e.kind() == ValidationError::Kind::SupNotLUB);
  }
}

TEST_CASE("cycles in the order are rejected") {
  CHECK_THROWS_AS(parse_presentation("space finite\npoints a b\nrel a <= b\nrel b <= a\ntopology alexandroff\n"),
                  ValidationError);
}

TEST_CASE("syntax errors report a line") {
  try {
    parse_presentation("space finite\npoints a b\nrel a << b\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_presentation(irrtopo::testing::read_space_file("nonsense.space")), ParseError);
}

TEST_CASE("closures follow the specialization order") {
  const SpacePresentation n = load_space("nat_inf.space");
  CHECK(closure(n, set(n, "{inf}")) == whole_space(n));
  CHECK(closure(n, empty_set(n)).empty());
  const SpacePresentation q = load_space("rational01.space");
  CHECK(closure(q, set(q, "{1/2}")) == set(q, "[0,1/2]"));
  CHECK(down_set(q, set(q, "{1/2}")) == set(q, "[0,1/2]"));
  CHECK(leq(q, pt(q, "1/3"), pt(q, "1/2")));
}

TEST_CASE("open sets in the bundled topologies") {
  const SpacePresentation n = load_space("nat_inf.space");
  CHECK(is_open(n, set(n, "{inf}")));
  CHECK(is_open(n, whole_space(n)));
  const SpacePresentation q = load_space("rational01.space");
  CHECK(is_open(q, set(q, "(1/2,1]")));
  CHECK_FALSE(is_open(q, set(q, "[1/2,1]")));
  CHECK(is_closed(q, set(q, "[0,1/2]")));
  const SpacePresentation a = load_space("antichain2.space");
  CHECK(up_set(a, set(a, "{a}")) == set(a, "{a}"));
}

TEST_CASE("specialization agrees with point closures") {
  for (const auto& name : irrtopo::testing::bundled_spaces()) {
    CAPTURE(name);
    CHECK(specialization_check(load_space(name)).proven());
  }
}

TEST_CASE("presentations round-trip through their canonical text") {
  for (const auto& name : irrtopo::testing::bundled_spaces()) {
    CAPTURE(name);
    const SpacePresentation s = load_space(name);
    const std::string text = emit_presentation(s);
    CHECK(emit_presentation(parse_presentation(text)) == text);
  }
}

TEST_CASE("closure is extensive, monotone and idempotent; opens are complements of closeds") {
  for (const auto& name : irrtopo::testing::bundled_spaces()) {
    CAPTURE(name);
    const SpacePresentation s = load_space(name);
    const auto pts = schema_points(s);
    for (std::size_t i = 0; i < pts.size() && i < 12; ++i) {
      const DefinableSet e = singleton(s, pts[i]);
      const DefinableSet c = closure(s, e);
      CHECK(e.subset_of(c));
      CHECK(closure(s, c) == c);
      CHECK(c == down_set(s, e));
      CHECK(is_open(s, up_set(s, e)) == is_closed(s, complement(s, up_set(s, e))));
      for (std::size_t j = 0; j < pts.size() && j < 12; ++j) {
        const DefinableSet f = e | singleton(s, pts[j]);
        CHECK(c.subset_of(closure(s, f)));
        CHECK(leq(s, pts[i], pts[j]) == contains(s, closure(s, singleton(s, pts[j])), pts[i]));
      }
    }
  }
}

TEST_CASE("set literals round-trip") {
  const SpacePresentation s = load_space("lambda.space");
  for (const char* text : {"tail(A,5) | {top}", "seg(A,2,4)", "{top, A@3}", "all", "empty", "chain(B)"}) {
    CAPTURE(text);
    const DefinableSet e = parse_set(s, text);
    CHECK(parse_set(s, format_set(s, e)) == e);
  }
  CHECK_THROWS_AS(parse_point(s, "C@1"), std::exception);
}
