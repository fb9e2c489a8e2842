#include "irrtopo/waybelow.hpp"

#include <algorithm>

#include "engine.hpp"
#include "irrtopo/derive.hpp"

namespace irrtopo {

namespace {

void require_point(const SpacePresentation& s, const PointId& p) {
  if (!in_carrier(s, p)) throw DomainError(DomainError::Kind::PointNotInCarrier, to_string(p) + " is not a point of this space");
}

CellSet full_chain(const SpacePresentation& s, int c) {
  CellSet e = CellSet::none(s.points.size(), s.chains.size());
  e.chains[c] = IndexSet::all();
  return e;
}

// Chains whose supremum exists, with that supremum.
std::vector<std::pair<int, Elem>> chains_with_sup(const SpacePresentation& s) {
  std::vector<std::pair<int, Elem>> out;
  for (std::size_t c = 0; c < s.chains.size(); ++c)
    if (auto sp = cells::sup(s, full_chain(s, static_cast<int>(c))).sup) out.emplace_back(static_cast<int>(c), *sp);
  return out;
}

CellSet cell_below(const SpacePresentation& s, const Elem& x) {
  CellSet out = cells::down_of(s, x);
  for (const auto& [c, sp] : chains_with_sup(s))
    if (cells::leq(s, x, sp)) out = out & cells::down_of_chain(s, c);
  return out;
}

IntervalSet rational_below(const SpacePresentation& s, const Rational& x) {
  IntervalSet out(Interval{s.carrier().lo, Endpoint::open(x)});
  out = out & rat::whole(s);
  const auto m = rat::minimum(s);
  if (m && *m == x) out = out | IntervalSet::point(x);
  return out;
}

// Union over k of the below sets of c@k, using that the below set grows
// with k and the set of chains above c@k is constant between representatives.
CellSet cell_below_chain_tail(const SpacePresentation& s, int c, Index from) {
  const auto reps = cells::representatives(s, s.cell_topology, {})[c];
  const auto sups = chains_with_sup(s);
  CellSet out = CellSet::none(s.points.size(), s.chains.size());
  std::vector<Index> cuts{from};
  for (Index r : reps)
    if (r > from) cuts.push_back(r);
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const bool last = i + 1 == cuts.size();
    CellSet piece = last ? cells::down_of_chain(s, c) : cells::down_of(s, Elem{c, cuts[i + 1] - 1});
    for (const auto& [d, sp] : sups)
      if (cells::leq(s, Elem{c, cuts[i]}, sp)) piece = piece & cells::down_of_chain(s, d);
    out = out | piece;
  }
  return out;
}

Verdict wb_cells(const SpacePresentation& s, const Elem& x, const Elem& y) {
  if (!cells::leq(s, x, y))
    return Verdict::refuted("x is not below y, so the singleton of y misses the up-set of x", DefinableSet(cells::single(s, y)));
  for (const auto& [c, sp] : chains_with_sup(s)) {
    if (!cells::leq(s, y, sp)) continue;
    const CellSet chain = full_chain(s, c);
    if (!chain.meets(cells::up_of(s, x)))
      return Verdict::refuted("chain " + s.chains[c] + " has supremum " + to_string(to_point(s, sp)) +
                                  " above y and misses the up-set of x",
                              DefinableSet(chain));
  }
  return Verdict::proven("x <= y and every chain with supremum above y meets the up-set of x");
}

Verdict wb_rational(const SpacePresentation& s, const Rational& x, const Rational& y) {
  const auto m = rat::minimum(s);
  if (x < y) return Verdict::proven("x < y: every set with supremum at least y has an element above x");
  if (x == y && m && *m == x) return Verdict::proven("x = y is the least element of the carrier");
  if (y < x)
    return Verdict::refuted("x is not below y, so the singleton of y misses the up-set of x", DefinableSet(IntervalSet::point(y)));
  const Interval c = s.carrier();
  const IntervalSet e(Interval{c.lo.finite() ? Endpoint::open(c.lo.at) : Endpoint::infinite(), Endpoint::open(y)});
  return Verdict::refuted("the interval below y climbs to y without reaching it", DefinableSet(e));
}

}  // namespace

WayBelowResult way_below(const SpacePresentation& s, const PointId& x, const PointId& y) {
  require_point(s, x);
  require_point(s, y);
  if (s.is_cells()) return {wb_cells(s, to_elem(s, x), to_elem(s, y))};
  return {wb_rational(s, std::get<RationalPoint>(x).value, std::get<RationalPoint>(y).value)};
}

WayBelowResult way_below_by_family(const SpacePresentation& s, const PointId& x, const PointId& y) {
  require_point(s, x);
  require_point(s, y);
  const DefinableSet ux = up_set(s, singleton(s, x));
  std::size_t checked = 0;
  for (const auto& inst : family_instances(s, {x, y})) {
    if (!leq(s, y, inst.sup)) continue;
    ++checked;
    if (!inst.set.meets(ux))
      return {Verdict::refuted("family instance with supremum " + to_string(inst.sup) + " misses the up-set of x", inst.set)};
  }
  return {Verdict::proven(std::to_string(checked) + " family instances with supremum above y meet the up-set of x")};
}

DefinableSet below_set(const SpacePresentation& s, const PointId& x) {
  require_point(s, x);
  if (s.is_cells()) return DefinableSet(cell_below(s, to_elem(s, x)));
  return DefinableSet(rational_below(s, std::get<RationalPoint>(x).value));
}

DefinableSet above_set(const SpacePresentation& s, const PointId& x) {
  require_point(s, x);
  if (s.is_cells()) {
    const Elem e = to_elem(s, x);
    const CellSet ux = cells::up_of(s, e);
    CellSet out = ux;
    for (const auto& [c, sp] : chains_with_sup(s))
      if (!full_chain(s, c).meets(ux)) out = out & cells::up_of(s, sp).complement();
    return DefinableSet(out);
  }
  const Rational q = std::get<RationalPoint>(x).value;
  IntervalSet out = IntervalSet(Interval{Endpoint::open(q), s.carrier().hi}) & rat::whole(s);
  const auto m = rat::minimum(s);
  if (m && *m == q) out = out | IntervalSet::point(q);
  return DefinableSet(out);
}

ContinuityReport is_irr_continuous(const SpacePresentation& s) {
  ContinuityReport r;
  r.continuous = Verdict::proven("");
  std::size_t n = 0;
  for (const auto& x : schema_points(s)) {
    PointContinuity pc{x, below_set(s, x), Verdict::refuted("the below set is empty"), std::nullopt, false};
    if (!pc.below.empty()) {
      const auto irr = is_irreducible(s, pc.below);
      pc.irreducible = irr.irreducible ? Verdict::proven(to_string(irr.certificate.rule))
                                       : Verdict::refuted("the below set is reducible", pc.below);
      pc.sup = sup(s, pc.below);
      pc.ok = irr.irreducible && pc.sup->exists() && *pc.sup->value == x;
    }
    if (!pc.ok && r.continuous.proven()) {
      std::string why = pc.below.empty() ? "is empty"
                        : !pc.irreducible.proven() ? "is not irreducible"
                                                   : "does not have supremum " + to_string(x);
      r.continuous = Verdict::refuted("the below set of " + to_string(x) + " " + why, x);
    }
    r.points.push_back(std::move(pc));
    ++n;
  }
  if (r.continuous.proven())
    r.continuous.certificate = "for all " + std::to_string(n) + " point schemas the below set is irreducible with supremum the point";
  return r;
}

MSetResult m_set(const SpacePresentation& s, const PointId& x) {
  require_point(s, x);
  MSetResult r;
  if (s.is_cells()) {
    const CellSet wb = cell_below(s, to_elem(s, x));
    CellSet out = CellSet::none(s.points.size(), s.chains.size());
    for (std::size_t p = 0; p < s.points.size(); ++p)
      if (wb.points[p]) out = out | cell_below(s, Elem{-1, static_cast<Index>(p)});
    for (std::size_t c = 0; c < s.chains.size(); ++c)
      for (const auto& [a, b] : wb.chains[c].runs())
        out = out | (b == kInf ? cell_below_chain_tail(s, static_cast<int>(c), a) : cell_below(s, Elem{static_cast<int>(c), b}));
    r.set = DefinableSet(out);
  } else {
    const Rational q = std::get<RationalPoint>(x).value;
    const auto m = rat::minimum(s);
    r.set = (m && *m == q) ? DefinableSet(IntervalSet::point(q)) : DefinableSet(rational_below(s, q));
  }
  if (!r.set.empty()) r.sup = sup(s, r.set);
  return r;
}

InterpolationResult interpolate(const SpacePresentation& s, const PointId& z, const PointId& x) {
  InterpolationResult r;
  r.hypotheses_met = is_irr_continuous(s).continuous.proven() && sobriety_spectrum(s).k_bounded_sober.proven();
  if (!way_below(s, z, x).holds.proven()) {
    r.note = to_string(z) + " is not way below " + to_string(x);
    return r;
  }
  std::optional<PointId> cand;
  if (!s.is_cells()) {
    const Rational a = std::get<RationalPoint>(z).value, b = std::get<RationalPoint>(x).value;
    cand = RationalPoint{a == b ? a : midpoint(a, b)};
  } else {
    const CellSet window = below_set(s, x).cells() & above_set(s, z).cells();
    if (auto m = cells::maximum(s, window)) {
      cand = to_point(s, *m);
    } else {
      for (std::size_t p = 0; p < s.points.size() && !cand; ++p) {
        if (!window.points[p]) continue;
        bool maximal = true;
        for (std::size_t q = 0; q < s.points.size(); ++q)
          if (q != p && window.points[q] && s.order.leq[p][q]) maximal = false;
        if (maximal) cand = FinitePoint{s.points[p]};
      }
      for (std::size_t c = 0; c < s.chains.size() && !cand; ++c)
        if (auto k = window.chains[c].min()) cand = ChainPoint{s.chains[c], *k};
    }
  }
  if (cand && way_below(s, z, *cand).holds.proven() && way_below(s, *cand, x).holds.proven()) {
    r.point = cand;
    r.note = "both way-below relations verified";
  } else {
    r.note = "no interpolant among the candidates";
  }
  return r;
}

}  // namespace irrtopo
