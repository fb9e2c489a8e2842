#include "irrtopo/irr.hpp"

#include <algorithm>

#include "engine.hpp"

namespace irrtopo {

namespace {

constexpr std::size_t kMaxDirectedEnumeration = 16;

void require_nonempty(const DefinableSet& e) {
  if (e.empty()) throw DomainError(DomainError::Kind::EmptySet, "the set must be nonempty");
}

SupResult from_cells(const SpacePresentation& s, const cells::SupOutcome& o) {
  SupResult r;
  if (o.sup) {
    r.kind = SupResult::Kind::Exists;
    r.value = to_point(s, *o.sup);
  } else if (o.bounded) {
    r.kind = SupResult::Kind::NoLeastUpperBound;
    if (o.pair) r.witness = std::make_pair(to_point(s, o.pair->first), to_point(s, o.pair->second));
  }
  return r;
}

SupResult from_rationals(const rat::SupOutcome& o) {
  SupResult r;
  if (o.sup) {
    r.kind = SupResult::Kind::Exists;
    r.value = RationalPoint{*o.sup};
  } else if (o.bounded) {
    r.kind = SupResult::Kind::NoLeastUpperBound;
    if (o.pair) r.witness = std::make_pair(PointId(RationalPoint{o.pair->first}), PointId(RationalPoint{o.pair->second}));
  }
  return r;
}

bool inside_one_chain(const CellSet& e) {
  if (std::any_of(e.points.begin(), e.points.end(), [](bool b) { return b; })) return false;
  return std::count_if(e.chains.begin(), e.chains.end(), [](const IndexSet& c) { return !c.empty(); }) == 1;
}

std::vector<Rational> rational_params(const SpacePresentation& s, const std::vector<PointId>& anchors) {
  auto qs = rat::schema_rationals(s);
  for (const auto& a : anchors)
    if (const auto* r = std::get_if<RationalPoint>(&a)) qs.push_back(r->value);
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  return qs;
}

}  // namespace

const char* to_string(IrreducibilityCertificate::Rule r) {
  switch (r) {
    case IrreducibilityCertificate::Rule::Singleton: return "Singleton";
    case IrreducibilityCertificate::Rule::ChainNested: return "ChainNested";
    case IrreducibilityCertificate::Rule::DirectedWithMax: return "DirectedWithMax";
    case IrreducibilityCertificate::Rule::CofinalInChain: return "CofinalInChain";
    case IrreducibilityCertificate::Rule::PairwiseOpenCheck: return "PairwiseOpenCheck";
  }
  return "PairwiseOpenCheck";
}

const char* to_string(SupResult::Kind k) {
  switch (k) {
    case SupResult::Kind::Exists: return "Exists";
    case SupResult::Kind::NoUpperBound: return "NoUpperBound";
    case SupResult::Kind::NoLeastUpperBound: return "NoLeastUpperBound";
  }
  return "NoUpperBound";
}

IrreducibilityResult is_irreducible(const SpacePresentation& s, const DefinableSet& e) {
  require_nonempty(e);
  IrreducibilityResult r;
  using Rule = IrreducibilityCertificate::Rule;
  if (!s.is_cells()) {
    r.irreducible = true;
    if (rat::maximum(e.intervals()) && e.intervals().parts().size() == 1 &&
        e.intervals().parts()[0].lo == e.intervals().parts()[0].hi) {
      r.certificate = {Rule::Singleton, "a singleton meets two opens only inside their intersection"};
    } else {
      r.certificate = {Rule::ChainNested, "opens of a rational chain are up-rays, so their traces on any set are nested"};
    }
    return r;
  }
  const auto o = cells::irreducible(s, s.cell_topology, e.cells());
  r.irreducible = o.irreducible;
  if (o.rule == "Singleton")
    r.certificate.rule = Rule::Singleton;
  else if (o.rule == "DirectedWithMax")
    r.certificate.rule = Rule::DirectedWithMax;
  else if (o.rule == "ChainNested")
    r.certificate.rule = inside_one_chain(e.cells()) ? Rule::CofinalInChain : Rule::ChainNested;
  else
    r.certificate.rule = Rule::PairwiseOpenCheck;
  r.certificate.details = o.trace;
  if (!o.irreducible) r.separating = std::make_pair(DefinableSet(o.u1), DefinableSet(o.u2));
  return r;
}

SupResult sup(const SpacePresentation& s, const DefinableSet& e) {
  require_nonempty(e);
  if (s.is_cells()) return from_cells(s, cells::sup(s, e.cells()));
  return from_rationals(rat::sup(s, e.intervals()));
}

WitnessFamily witness_family(const SpacePresentation& s) {
  WitnessFamily f;
  f.kind = s.kind;
  switch (s.kind) {
    case SpaceKind::FinitePoset:
      f.schemas = {"Directed(D) for every nonempty subset D with a maximum"};
      f.sufficiency = "finite directed sets are exactly the sets with a maximum; the family is exhaustive";
      break;
    case SpaceKind::VSpace:
      f.schemas = {"Singleton(x) for x in the carrier"};
      for (std::size_t c = 0; c < s.chains.size(); ++c) {
        CellSet chain = CellSet::none(s.points.size(), s.chains.size());
        chain.chains[c] = IndexSet::all();
        if (cells::sup(s, chain).sup) f.schemas.push_back("ChainTail(" + s.chains[c] + ",k) for k in N");
      }
      f.sufficiency =
          "an irreducible set either has a maximum, dominated by its singleton, or contains a cofinal part of one "
          "chain, dominated by that chain's tails";
      break;
    case SpaceKind::RationalChain:
      f.schemas = {"Singleton(q) for q in the carrier", "RatInterval(a,q) open-open for a < q in the carrier"};
      f.sufficiency =
          "a set with supremum q either attains q, dominated by {q}, or climbs to q, dominated by (a,q) for a "
          "below q";
      break;
  }
  return f;
}

std::vector<FamilyInstance> family_instances(const SpacePresentation& s, const std::vector<PointId>& anchors) {
  std::vector<FamilyInstance> out;
  if (s.kind == SpaceKind::FinitePoset) {
    const std::size_t n = s.points.size();
    if (n > kMaxDirectedEnumeration)
      throw DomainError(DomainError::Kind::UnsupportedKind, "directed-subset enumeration supports at most 16 points");
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      CellSet e = CellSet::none(n, 0);
      for (std::size_t p = 0; p < n; ++p) e.points[p] = (mask >> p) & 1u;
      if (auto m = cells::maximum(s, e)) out.push_back({DefinableSet(e), to_point(s, *m)});
    }
    return out;
  }
  if (s.kind == SpaceKind::VSpace) {
    std::vector<CellSet> extra;
    for (const auto& a : anchors)
      if (in_carrier(s, a)) extra.push_back(cells::single(s, to_elem(s, a)));
    const auto reps = cells::representatives(s, s.cell_topology, extra);
    for (std::size_t p = 0; p < s.points.size(); ++p)
      out.push_back({DefinableSet(cells::single(s, Elem{-1, static_cast<Index>(p)})), FinitePoint{s.points[p]}});
    for (std::size_t c = 0; c < s.chains.size(); ++c)
      for (Index k : reps[c]) {
        const Elem x{static_cast<int>(c), k};
        out.push_back({DefinableSet(cells::single(s, x)), to_point(s, x)});
      }
    for (std::size_t c = 0; c < s.chains.size(); ++c) {
      CellSet chain = CellSet::none(s.points.size(), s.chains.size());
      chain.chains[c] = IndexSet::all();
      const auto sp = cells::sup(s, chain).sup;
      if (!sp) continue;
      out.push_back({DefinableSet(chain), to_point(s, *sp)});
      for (Index k : reps[c]) {
        if (k == 0) continue;
        CellSet tail = CellSet::none(s.points.size(), s.chains.size());
        tail.chains[c] = IndexSet::tail(k);
        out.push_back({DefinableSet(tail), to_point(s, *sp)});
      }
    }
    return out;
  }
  const auto qs = rational_params(s, anchors);
  const Interval carrier = s.carrier();
  for (const auto& q : qs) out.push_back({DefinableSet(IntervalSet::point(q)), RationalPoint{q}});
  std::vector<Endpoint> starts;
  if (carrier.lo.finite()) starts.push_back(Endpoint::open(carrier.lo.at));
  for (const auto& a : qs) starts.push_back(Endpoint::open(a));
  for (const auto& q : qs)
    for (const auto& a : starts) {
      const IntervalSet e(Interval{a, Endpoint::open(q)});
      if (e.empty() || !e.subset_of(rat::whole(s))) continue;
      const bool dup = std::any_of(out.begin(), out.end(), [&](const FamilyInstance& i) { return i.set.intervals() == e; });
      if (!dup) out.push_back({DefinableSet(e), RationalPoint{q}});
    }
  return out;
}

std::vector<ClosedIrreducibleInfo> closed_irreducibles(const SpacePresentation& s,
                                                       const std::vector<DefinableSet>& anchors) {
  std::vector<ClosedIrreducibleInfo> out;
  if (s.is_cells()) {
    std::vector<CellSet> extra;
    for (const auto& a : anchors) extra.push_back(a.cells());
    for (const auto& ci : cells::closed_irreducibles(s, s.cell_topology, extra))
      out.push_back({DefinableSet(ci.set), from_cells(s, ci.sup)});
    return out;
  }
  const Interval carrier = s.carrier();
  std::vector<PointId> ends;
  for (const auto& a : anchors)
    for (const auto& part : a.intervals().parts())
      for (const Endpoint* e : {&part.lo, &part.hi})
        if (e->finite() && e->at.is_rational() && carrier.contains(e->at.a())) ends.push_back(RationalPoint{e->at.a()});
  std::vector<IntervalSet> sets;
  for (const auto& q : rational_params(s, ends)) {
    sets.push_back(IntervalSet(Interval{carrier.lo, Endpoint::closed(q)}));
    if (s.rational_topology.closed_rays) sets.push_back(IntervalSet(Interval{carrier.lo, Endpoint::open(q)}));
  }
  sets.push_back(IntervalSet(Interval{carrier.lo, Endpoint::open(rat::inner_cut(s))}));
  sets.push_back(rat::whole(s));
  for (auto& e : sets) {
    if (e.empty()) continue;
    if (std::any_of(out.begin(), out.end(), [&](const ClosedIrreducibleInfo& i) { return i.set.intervals() == e; })) continue;
    out.push_back({DefinableSet(e), from_rationals(rat::sup(s, e))});
  }
  return out;
}

}  // namespace irrtopo
