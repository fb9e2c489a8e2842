#include "doctest.h"
#include "irrtopo/derive.hpp"
#include "irrtopo/irr.hpp"
#include "irrtopo/waybelow.hpp"
#include "oracles.hpp"

using namespace irrtopo;
using irrtopo::testing::load_space;

namespace {

PointId pt(const SpacePresentation& s, const char* text) { return parse_point(s, text); }
DefinableSet set(const SpacePresentation& s, const char* text) { return parse_set(s, text); }

}  // namespace

TEST_SUITE("irreducibility") {
  TEST_CASE("singletons are irreducible everywhere") {
    for (const auto& name : irrtopo::testing::bundled_spaces()) {
      const SpacePresentation s = load_space(name);
      for (const auto& p : schema_points(s)) {
        CAPTURE(to_string(p));
        CHECK(is_irreducible(s, singleton(s, p)).irreducible);
      }
    }
  }

  TEST_CASE("an antichain of two points is separated by its up-sets") {
    const SpacePresentation s = load_space("antichain2.space");
    const IrreducibilityResult r = is_irreducible(s, set(s, "{a, b}"));
    REQUIRE_FALSE(r.irreducible);
    REQUIRE(r.separating.has_value());
    const auto& [u1, u2] = *r.separating;
    CHECK(is_open(s, u1));
    CHECK(is_open(s, u2));
    CHECK((u1 & u2 & set(s, "{a, b}")).empty());
  }

  TEST_CASE("rational intervals are nested-open irreducible") {
    const SpacePresentation s = load_space("rational01.space");
    const IrreducibilityResult r = is_irreducible(s, set(s, "(0,1)"));
    CHECK(r.irreducible);
    CHECK(r.certificate.rule == IrreducibilityCertificate::Rule::ChainNested);
  }

  TEST_CASE("the empty set is rejected") {
    const SpacePresentation s = load_space("chain3.space");
    CHECK_THROWS_AS(is_irreducible(s, empty_set(s)), DomainError);
    CHECK_THROWS_AS(sup(s, empty_set(s)), DomainError);
  }

  TEST_CASE("suprema") {
    const SpacePresentation l = load_space("lambda.space");
    const SupResult t = sup(l, set(l, "tail(A,5)"));
    REQUIRE(t.exists());
    CHECK(to_string(*t.value) == "top");
    const SpacePresentation a = load_space("antichain2.space");
    CHECK(sup(a, set(a, "{a, b}")).kind == SupResult::Kind::NoUpperBound);
    const SpacePresentation q = load_space("rational01.space");
    const SupResult h = sup(q, set(q, "(0,1/2)"));
    REQUIRE(h.exists());
    CHECK(to_string(*h.value) == "1/2");
  }

  TEST_CASE("witness families are irreducible and match directed subsets on finite posets") {
    for (const auto& name : irrtopo::testing::bundled_spaces()) {
      const SpacePresentation s = load_space(name);
      for (const auto& f : family_instances(s)) {
        CAPTURE(format_set(s, f.set));
        CHECK(is_irreducible(s, f.set).irreducible);
        const SupResult r = sup(s, f.set);
        REQUIRE(r.exists());
        CHECK(*r.value == f.sup);
      }
    }
    for (const auto& p : irrtopo::testing::all_posets(4)) {
      const SpacePresentation s = irrtopo::testing::to_space(p);
      CHECK(family_instances(s).size() == irrtopo::testing::directed_subsets(p).size());
    }
  }

  TEST_CASE("closed irreducibles of the rational chain include a surd cut") {
    const SpacePresentation s = load_space("rational01.space");
    bool cut = false, whole = false;
    for (const auto& c : closed_irreducibles(s)) {
      CHECK(is_closed(s, c.set));
      CHECK(is_irreducible(s, c.set).irreducible);
      if (!c.sup.exists()) cut = cut || !c.set.intervals().upper().at.is_rational();
      whole = whole || c.set == whole_space(s);
    }
    CHECK(cut);
    CHECK(whole);
  }
}

TEST_SUITE("SI derivative") {
  TEST_CASE("SI-open sets on the naturals with top") {
    const SpacePresentation s = load_space("nat_inf.space");
    const Verdict v = si_open(s, set(s, "{inf}"));
    REQUIRE(v.refuted());
    const auto* w = std::get_if<DefinableSet>(&v.witness);
    REQUIRE(w != nullptr);
    CHECK(format_set(s, *w) == "chain(N)");
    CHECK(si_open(s, set(s, "tail(N,5) | {inf}")).proven());
    CHECK(si_open(s, whole_space(s)).proven());
  }

  TEST_CASE("iteration lengths") {
    CHECK(si_iterate(load_space("chain3.space")).gamma == 0);
    CHECK(si_iterate(load_space("nat_inf.space")).gamma == 1);
    CHECK(si_iterate(load_space("rational01.space")).gamma == 0);
    const SpacePresentation d = si_derivative(load_space("nat_inf.space"));
    CHECK(d.topology.level == 1);
    CHECK_FALSE(is_open(d, set(d, "{inf}")));
  }

  TEST_CASE("SI-infinity property and sobriety") {
    CHECK(has_si_infty_property(load_space("rational01.space")).proven());
    CHECK(has_si_infty_property(load_space("nat_inf.space")).refuted());
    const SobrietyReport q = sobriety_spectrum(load_space("rational01.space"));
    CHECK(q.sober.refuted());
    CHECK(q.bounded_sober.refuted());
    CHECK(q.k_bounded_sober.proven());
    const SobrietyReport n = sobriety_spectrum(load_space("nat_inf.space"));
    CHECK(n.k_bounded_sober.refuted());
    for (const auto& name : irrtopo::testing::bundled_spaces()) {
      CAPTURE(name);
      CHECK(sobriety_crosscheck(load_space(name)).proven());
    }
  }

  TEST_CASE("derived opens are opens and stages decrease") {
    for (const auto& name : irrtopo::testing::bundled_spaces()) {
      CAPTURE(name);
      const SpacePresentation s = load_space(name);
      const SpacePresentation d = si_derivative(s);
      for (const auto& p : schema_points(s)) {
        const DefinableSet u = up_set(s, singleton(s, p));
        if (is_open(d, u)) CHECK(is_open(s, u));
        CHECK(closure(s, singleton(s, p)) == closure(d, singleton(s, p)));
      }
    }
  }
}

TEST_SUITE("way-below") {
  TEST_CASE("rational chain") {
    const SpacePresentation s = load_space("rational01.space");
    CHECK(way_below(s, pt(s, "1/3"), pt(s, "1/2")).holds.proven());
    const Verdict v = way_below(s, pt(s, "1/2"), pt(s, "1/2")).holds;
    REQUIRE(v.refuted());
    const auto* w = std::get_if<DefinableSet>(&v.witness);
    REQUIRE(w != nullptr);
    CHECK(*w == set(s, "(0,1/2)"));
    CHECK(way_below(s, pt(s, "0"), pt(s, "0")).holds.proven());
    CHECK(below_set(s, pt(s, "1/2")) == set(s, "[0,1/2)"));
    CHECK(above_set(s, pt(s, "1/2")) == set(s, "(1/2,1]"));
    CHECK(m_set(s, pt(s, "1/2")).set == set(s, "[0,1/2)"));
    CHECK(is_irr_continuous(s).continuous.proven());
  }

  TEST_CASE("Lambda space") {
    const SpacePresentation s = load_space("lambda.space");
    const Verdict v = way_below(s, pt(s, "A@3"), pt(s, "top")).holds;
    REQUIRE(v.refuted());
    const auto* w = std::get_if<DefinableSet>(&v.witness);
    REQUIRE(w != nullptr);
    CHECK(format_set(s, *w) == "chain(B)");
    CHECK(below_set(s, pt(s, "top")).empty());
    CHECK(m_set(s, pt(s, "top")).set.empty());
    CHECK(is_irr_continuous(s).continuous.refuted());
  }

  TEST_CASE("finite posets agree with the classical relation") {
    for (const auto& p : irrtopo::testing::all_posets(4)) {
      const SpacePresentation s = irrtopo::testing::to_space(p);
      for (int x = 0; x < p.n; ++x) {
        const PointId px = FinitePoint{"p" + std::to_string(x)};
        CHECK(below_set(s, px) == down_set(s, singleton(s, px)));
        CHECK(above_set(s, px) == up_set(s, singleton(s, px)));
        for (int y = 0; y < p.n; ++y) {
          const PointId py = FinitePoint{"p" + std::to_string(y)};
          const bool want = irrtopo::testing::classical_way_below(p, x, y);
          CHECK(way_below(s, px, py).holds.proven() == want);
          CHECK(way_below_by_family(s, px, py).holds.proven() == want);
        }
      }
      CHECK(is_irr_continuous(s).continuous.proven());
    }
  }

  TEST_CASE("way-below implies order and is stable under widening") {
    for (const auto& name : irrtopo::testing::bundled_spaces()) {
      const SpacePresentation s = load_space(name);
      const auto pts = schema_points(s);
      for (const auto& x : pts)
        for (const auto& y : pts) {
          if (!way_below(s, x, y).holds.proven()) continue;
          CAPTURE(to_string(x));
          CAPTURE(to_string(y));
          CHECK(leq(s, x, y));
          for (const auto& u : pts)
            if (leq(s, u, x)) CHECK(way_below(s, u, y).holds.proven());
        }
      for (const auto& x : pts) CHECK(below_set(s, x).subset_of(down_set(s, singleton(s, x))));
    }
  }

  TEST_CASE("interpolation") {
    const SpacePresentation q = load_space("rational01.space");
    const InterpolationResult r = interpolate(q, pt(q, "1/4"), pt(q, "1/2"));
    REQUIRE(r.point.has_value());
    CHECK(to_string(*r.point) == "3/8");
    CHECK(r.hypotheses_met);
    CHECK(to_string(*interpolate(q, pt(q, "0"), pt(q, "0")).point) == "0");
    const SpacePresentation c = load_space("chain3.space");
    CHECK(to_string(*interpolate(c, pt(c, "a"), pt(c, "c")).point) == "c");
  }
}
