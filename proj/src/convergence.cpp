#include <algorithm>

#include "engine.hpp"
#include "irrtopo/derive.hpp"
#include "irrtopo/irr.hpp"
#include "irrtopo/nets.hpp"
#include "irrtopo/waybelow.hpp"

namespace irrtopo {

namespace {

using Kind = ValueTerm::Kind;

DefinableSet down_of_point(const SpacePresentation& s, const PointId& p) { return down_set(s, singleton(s, p)); }

DefinableSet term_elb(const SpacePresentation& s, const ValueTerm& t) {
  switch (t.kind) {
    case Kind::Const:
      return down_of_point(s, t.point);
    case Kind::ChainAscent:
      return DefinableSet(cells::down_of_chain(s, s.chain_index(t.cell)));
    case Kind::RationalAscent: {
      IntervalSet below = IntervalSet(Interval{Endpoint::infinite(), Endpoint::open(t.target)}) & rat::whole(s);
      const auto m = rat::minimum(s);
      if (m && *m == t.target) below = below | IntervalSet::point(t.target);
      return DefinableSet(below);
    }
    case Kind::Interleave:
      return term_elb(s, t.parts[0]) & term_elb(s, t.parts[1]);
    case Kind::Explicit:
      break;
  }
  throw DomainError(DomainError::Kind::BadNet, "explicit terms need their index");
}

bool rational_ray_eventually(const SpacePresentation& s, const Rational& q, const IntervalSet& u) {
  const auto m = rat::minimum(s);
  if (m && *m == q) return u.contains(q);
  const Quadratic qq(q);
  return std::any_of(u.parts().begin(), u.parts().end(), [&](const Interval& p) {
    const bool starts_below = !p.lo.finite() || p.lo.at < qq;
    const bool reaches = !p.hi.finite() || p.hi.at >= qq;
    return starts_below && reaches;
  });
}

bool term_eventually_in(const SpacePresentation& s, const ValueTerm& t, const DefinableSet& u) {
  switch (t.kind) {
    case Kind::Const:
      return contains(s, u, t.point);
    case Kind::ChainAscent:
      return u.cells().chains[s.chain_index(t.cell)].infinite();
    case Kind::RationalAscent:
      return rational_ray_eventually(s, t.target, u.intervals());
    case Kind::Interleave:
      return term_eventually_in(s, t.parts[0], u) && term_eventually_in(s, t.parts[1], u);
    case Kind::Explicit:
      break;
  }
  return false;
}

// Explicit nets: whether every index above k has its value satisfying `pred`.
template <class Pred>
std::optional<int> explicit_threshold(const NetSpec& n, Pred pred) {
  for (std::size_t k = 0; k < n.index.elements.size(); ++k) {
    const auto up = n.index.above(static_cast<int>(k));
    if (std::all_of(up.begin(), up.end(), [&](int i) { return pred(n.values.table[i]); })) return static_cast<int>(k);
  }
  return std::nullopt;
}

std::optional<Index> ceil_div(Index num, Index den) { return num <= 0 ? Index{0} : (num + den - 1) / den; }

// Least chain index m with e <= c@m, found by exponential then binary search.
std::optional<Index> least_index_above(const SpacePresentation& s, const Elem& e, int c) {
  Index hi = 1;
  while (!cells::leq(s, e, Elem{c, hi})) {
    if (hi > (Index{1} << 40)) return std::nullopt;
    hi *= 2;
  }
  Index lo = 0;
  if (cells::leq(s, e, Elem{c, 0})) return 0;
  while (hi - lo > 1) {
    const Index mid = lo + (hi - lo) / 2;
    (cells::leq(s, e, Elem{c, mid}) ? hi : lo) = mid;
  }
  return hi;
}

// Least k with x_i >= e for every omega index i >= k, or a sufficient k when
// clipping makes the exact value awkward.
std::optional<Index> term_threshold(const SpacePresentation& s, const ValueTerm& t, const PointId& e) {
  switch (t.kind) {
    case Kind::Const:
      return leq(s, e, t.point) ? std::optional<Index>(0) : std::nullopt;
    case Kind::ChainAscent: {
      const auto m = least_index_above(s, to_elem(s, e), s.chain_index(t.cell));
      if (!m) return std::nullopt;
      return ceil_div(*m - t.offset, t.scale);
    }
    case Kind::RationalAscent: {
      const Rational ev = std::get<RationalPoint>(e).value;
      const auto mn = rat::minimum(s);
      if (mn && *mn == t.target) return ev <= t.target ? std::optional<Index>(0) : std::nullopt;
      if (ev >= t.target) return std::nullopt;
      const Rational inv = Rational(1) / (t.target - ev);
      auto need = boost::multiprecision::numerator(inv.rep()) / boost::multiprecision::denominator(inv.rep());
      if (Rational(Rational::Rep(need)) < inv) need += 1;
      if (need > boost::multiprecision::cpp_int(Index{1} << 40)) return std::nullopt;
      const Index m = static_cast<Index>(need) - 1;  // least m with m + 1 >= 1/(q - e)
      return ceil_div(m - t.offset, t.scale);
    }
    case Kind::Interleave: {
      const auto k1 = term_threshold(s, t.parts[0], e), k2 = term_threshold(s, t.parts[1], e);
      if (!k1 || !k2) return std::nullopt;
      return std::max(2 * *k1, 2 * *k2 + 1);
    }
    case Kind::Explicit:
      break;
  }
  return std::nullopt;
}

std::string threshold_line(const SpacePresentation& s, const NetSpec& n, const PointId& e) {
  if (!n.index.omega) {
    const auto k = explicit_threshold(n, [&](const PointId& v) { return leq(s, e, v); });
    return to_string(e) + " -> " + (k ? n.index.elements[*k] : std::string("none"));
  }
  const auto k = term_threshold(s, n.values, e);
  return to_string(e) + " -> " + (k ? std::to_string(*k) : std::string("none"));
}

// Some element a of the lower set E, then points halving the gap to its supremum.
std::vector<PointId> rational_sample(const DefinableSet& e, const Rational& top) {
  std::vector<PointId> out;
  const auto a = e.intervals().some_element();
  if (!a) return out;
  out.push_back(RationalPoint{*a});
  Rational x = *a;
  for (int i = 0; i < 3 && x < top; ++i) {
    x = midpoint(x, top);
    if (e.intervals().contains(x)) out.push_back(RationalPoint{x});
  }
  return out;
}

void collect_points(const ValueTerm& t, std::vector<PointId>& out) {
  if (t.kind == Kind::Const) out.push_back(t.point);
  for (const auto& p : t.table) out.push_back(p);
  for (const auto& part : t.parts) collect_points(part, out);
}

Verdict topo_cells(const SpacePresentation& s, const NetSpec& n, const PointId& y) {
  std::vector<PointId> pts{y};
  collect_points(n.values, pts);
  std::vector<CellSet> extra;
  for (const auto& p : pts) extra.push_back(cells::single(s, to_elem(s, p)));
  const auto reps = cells::representatives(s, s.cell_topology, extra);
  const Elem ye = to_elem(s, y);
  std::size_t checked = 0;
  for (const auto& u : cells::representative_opens(s, s.cell_topology, reps)) {
    if (!cells::contains(u, ye)) continue;
    ++checked;
    const DefinableSet du(u);
    if (!eventually_in(s, n, du))
      return Verdict::refuted("open " + format_set(s, du) + " contains " + to_string(y) + " but the net leaves it cofinally", du);
  }
  return Verdict::proven("the net is eventually inside each of the " + std::to_string(checked) + " open classes containing " +
                         to_string(y));
}

Verdict topo_rational(const SpacePresentation& s, const NetSpec& n, const PointId& y) {
  const Rational yv = std::get<RationalPoint>(y).value;
  const IntervalSet elb = eventual_lower_bounds(s, n).intervals();
  const Interval c = s.carrier();
  if (s.rational_topology.closed_rays) {
    if (elb.contains(yv)) return Verdict::proven("the net is eventually at or above " + yv.str());
    const DefinableSet u(IntervalSet(Interval{Endpoint::closed(yv), c.hi}) & rat::whole(s));
    return Verdict::refuted("open " + format_set(s, u) + " contains " + yv.str() + " but the net leaves it cofinally", u);
  }
  const auto m = rat::minimum(s);
  if (m && *m == yv) return Verdict::proven("the only open containing the minimum is the whole carrier");
  if (!elb.empty() && (!elb.upper().finite() || Quadratic(yv) <= elb.upper().at))
    return Verdict::proven("every open ray below " + yv.str() + " eventually contains the net");
  const Quadratic from = elb.empty() ? c.lo.at : elb.upper().at;
  const Rational q = rational_between(from, Quadratic(yv));
  const DefinableSet u(IntervalSet(Interval{Endpoint::open(q), c.hi}) & rat::whole(s));
  return Verdict::refuted("open " + format_set(s, u) + " contains " + yv.str() + " but the net leaves it cofinally", u);
}

bool is_chain_tail(const SpacePresentation& s, const CellSet& e, int& chain, Index& from) {
  if (std::any_of(e.points.begin(), e.points.end(), [](bool b) { return b; })) return false;
  chain = -1;
  for (std::size_t c = 0; c < s.chains.size(); ++c) {
    if (e.chains[c].empty()) continue;
    if (chain >= 0 || e.chains[c].runs().size() != 1 || !e.chains[c].infinite()) return false;
    chain = static_cast<int>(c);
    from = e.chains[c].runs()[0].first;
  }
  return chain >= 0;
}

std::optional<std::vector<Elem>> finite_elems(const CellSet& e) {
  std::vector<Elem> out;
  for (std::size_t p = 0; p < e.points.size(); ++p)
    if (e.points[p]) out.push_back(Elem{-1, static_cast<Index>(p)});
  for (std::size_t c = 0; c < e.chains.size(); ++c) {
    if (e.chains[c].infinite()) return std::nullopt;
    for (const auto& [a, b] : e.chains[c].runs()) {
      if (b - a > 64) return std::nullopt;
      for (Index k = a; k <= b; ++k) out.push_back(Elem{static_cast<int>(c), k});
    }
  }
  return out;
}

[[noreturn]] void not_in_family(const std::string& why) { throw DomainError(DomainError::Kind::NotInWitnessFamily, why); }

}  // namespace

DefinableSet eventual_lower_bounds(const SpacePresentation& s, const NetSpec& n) {
  validate_net(s, n);
  if (n.index.omega) return term_elb(s, n.values);
  DefinableSet out = empty_set(s);
  for (std::size_t k = 0; k < n.index.elements.size(); ++k) {
    DefinableSet meet = whole_space(s);
    for (int i : n.index.above(static_cast<int>(k))) meet = meet & down_of_point(s, n.values.table[i]);
    out = out | meet;
  }
  return out;
}

bool eventually_in(const SpacePresentation& s, const NetSpec& n, const DefinableSet& u) {
  if (n.index.omega) return term_eventually_in(s, n.values, u);
  return explicit_threshold(n, [&](const PointId& v) { return contains(s, u, v); }).has_value();
}

ConvergenceJudgment irr_converges(const SpacePresentation& s, const NetSpec& n, const PointId& y) {
  if (!in_carrier(s, y)) throw DomainError(DomainError::Kind::PointNotInCarrier, to_string(y) + " is not a point of this space");
  const DefinableSet elb = eventual_lower_bounds(s, n);
  ConvergenceJudgment j;
  if (contains(s, elb, y)) {
    j.witness = singleton(s, y);
    j.verdict = Verdict::proven(to_string(y) + " is itself an eventual lower bound; E = {" + to_string(y) + "}");
    j.thresholds.push_back(threshold_line(s, n, y));
    return j;
  }
  if (s.is_cells()) {
    for (std::size_t c = 0; c < s.chains.size(); ++c) {
      CellSet chain = CellSet::none(s.points.size(), s.chains.size());
      chain.chains[c] = IndexSet::all();
      const auto sp = cells::sup(s, chain).sup;
      if (!sp || !cells::leq(s, to_elem(s, y), *sp) || !chain.subset_of(elb.cells())) continue;
      j.witness = DefinableSet(chain);
      j.verdict = Verdict::proven("chain " + s.chains[c] + " lies in the eventual lower bounds and has supremum " +
                                  to_string(to_point(s, *sp)) + " above " + to_string(y));
      for (Index k : {0, 1, 4, 16}) j.thresholds.push_back(threshold_line(s, n, ChainPoint{s.chains[c], k}));
      return j;
    }
    j.verdict = Verdict::refuted("no irreducible set of eventual lower bounds has supremum above " + to_string(y), elb);
    return j;
  }
  if (!elb.empty()) {
    const SupResult sp = sup(s, elb);
    if (sp.exists() && leq(s, y, *sp.value)) {
      j.witness = elb;
      j.verdict = Verdict::proven("the eventual lower bounds " + format_set(s, elb) + " form a chain with supremum " +
                                  to_string(*sp.value) + " above " + to_string(y));
      for (const auto& e : rational_sample(elb, std::get<RationalPoint>(*sp.value).value))
        j.thresholds.push_back(threshold_line(s, n, e));
      return j;
    }
  }
  j.verdict = Verdict::refuted("the eventual lower bounds have no supremum above " + to_string(y), elb);
  return j;
}

Verdict topo_converges(const SpacePresentation& s, const NetSpec& n, const PointId& y, int level) {
  if (!in_carrier(s, y)) throw DomainError(DomainError::Kind::PointNotInCarrier, to_string(y) + " is not a point of this space");
  if (level < 0) throw DomainError(DomainError::Kind::IndexOutOfRange, "derivative level must be non-negative");
  validate_net(s, n);
  SpacePresentation t = s;
  for (int i = 0; i < level; ++i) t = si_derivative(t);
  return t.is_cells() ? topo_cells(t, n, y) : topo_rational(t, n, y);
}

NetSpec canonical_net(const SpacePresentation& s, const DefinableSet& e, const PointId& y) {
  if (e.empty()) throw DomainError(DomainError::Kind::EmptySet, "canonical nets need a nonempty set");
  if (!in_carrier(s, y)) throw DomainError(DomainError::Kind::PointNotInCarrier, to_string(y) + " is not a point of this space");
  const SupResult sp = sup(s, e);
  if (!sp.exists() || !leq(s, y, *sp.value)) not_in_family("the set has no supremum above " + to_string(y));
  NetSpec n;
  if (s.is_cells()) {
    int chain = -1;
    Index from = 0;
    if (is_chain_tail(s, e.cells(), chain, from)) {
      n.values.kind = Kind::ChainAscent;
      n.values.cell = s.chains[chain];
      n.values.offset = from;
      return n;
    }
    const auto elems = finite_elems(e.cells());
    if (!elems || !contains(s, e, *sp.value)) not_in_family("only chain tails and finite sets with a maximum have canonical nets");
    if (elems->size() == 1) {
      n.values.point = to_point(s, elems->front());
      return n;
    }
    std::vector<std::string> names;
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t i = 0; i < elems->size(); ++i) {
      names.push_back(to_string(to_point(s, (*elems)[i])));
      for (std::size_t k = 0; k < elems->size(); ++k)
        if (i != k && cells::leq(s, (*elems)[i], (*elems)[k])) pairs.emplace_back(static_cast<int>(i), static_cast<int>(k));
    }
    n.index = IndexOrder::generated(names, pairs);
    n.values.kind = Kind::Explicit;
    for (const auto& x : *elems) n.values.table.push_back(to_point(s, x));
    return n;
  }
  const IntervalSet& iv = e.intervals();
  const Rational q = std::get<RationalPoint>(*sp.value).value;
  if (iv == IntervalSet::point(q)) {
    n.values.point = RationalPoint{q};
    return n;
  }
  if (iv.parts().size() != 1 || iv.upper().is_closed() || !iv.lower().finite() ||
      !(iv.lower().at.is_rational() || !iv.lower().is_closed()))
    not_in_family("only singletons and intervals climbing to their supremum have canonical nets");
  const Quadratic a = iv.lower().at;
  const Rational a_low = a.is_rational() ? a.a() : rational_between(a, Quadratic(q));
  const Rational inv = Rational(1) / (q - a_low);
  auto ceil = boost::multiprecision::numerator(inv.rep()) / boost::multiprecision::denominator(inv.rep());
  if (Rational(Rational::Rep(ceil)) < inv) ceil += 1;
  n.values.kind = Kind::RationalAscent;
  n.values.target = q;
  n.values.offset = static_cast<Index>(ceil);
  return n;
}

WayBelowNetCheck way_below_via_nets(const SpacePresentation& s, const PointId& x, const PointId& y, const Battery& battery) {
  const DefinableSet ux = up_set(s, singleton(s, x));
  WayBelowNetCheck r;
  r.net_form = true;
  auto probe = [&](const NetSpec& n) {
    if (!r.net_form) return;
    if (irr_converges(s, n, y).verdict.proven() && !eventually_in(s, n, ux)) {
      r.net_form = false;
      r.witness_net = format_net(n);
    }
  };
  for (const auto& n : battery.nets) probe(n);
  for (const auto& inst : family_instances(s, {x, y}))
    if (leq(s, y, inst.sup)) probe(canonical_net(s, inst.set, inst.sup));
  const bool closed = way_below(s, x, y).holds.proven();
  const std::string both = std::string("net form: ") + (r.net_form ? "holds" : "fails") + ", closed form: " + (closed ? "holds" : "fails");
  r.agreement = r.net_form == closed ? Verdict::proven(both) : Verdict::refuted("disagreement (" + both + ")");
  return r;
}

Verdict induced_open(const SpacePresentation& s, const DefinableSet& u, const Battery& battery) {
  const auto pts = schema_points(s);
  if (!(up_set(s, u) == u)) {
    for (const auto& x : pts) {
      if (!contains(s, u, x)) continue;
      for (const auto& z : pts)
        if (leq(s, x, z) && !contains(s, u, z))
          return Verdict::refuted("const(" + to_string(z) + ") converges to " + to_string(x) + " but never enters the set",
                                  "const(" + to_string(z) + ")");
    }
    return Verdict::refuted("the set is not an upper set, so some constant net converges into it from outside");
  }
  std::vector<PointId> anchors = pts;
  if (!s.is_cells() && !u.empty() && u.intervals().lower().finite() && u.intervals().lower().at.is_rational()) {
    const PointId edge = RationalPoint{u.intervals().lower().at.a()};
    if (in_carrier(s, edge)) anchors.push_back(edge);
  }
  for (const auto& inst : family_instances(s, anchors)) {
    if (!contains(s, u, inst.sup) || inst.set.meets(u)) continue;
    const std::string net = format_net(canonical_net(s, inst.set, inst.sup));
    return Verdict::refuted(net + " converges to " + to_string(inst.sup) + " inside the set but never enters it", net);
  }
  std::size_t checked = 0;
  for (const auto& n : battery.nets)
    for (const auto& y : battery.points) {
      if (!contains(s, u, y) || !irr_converges(s, n, y).verdict.proven()) continue;
      ++checked;
      if (!eventually_in(s, n, u))
        return Verdict::refuted(format_net(n) + " converges to " + to_string(y) + " inside the set but leaves it cofinally",
                                format_net(n));
    }
  return Verdict::proven("upper set, so the canonical-net test reduces to the SI-open condition: no family instance with supremum inside misses it; " + std::to_string(checked) +
                         " convergent battery cases stay inside eventually");
}

}  // namespace irrtopo
