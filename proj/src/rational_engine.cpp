#include <algorithm>

#include "engine.hpp"

namespace irrtopo::rat {

namespace {

Endpoint as_lower(const RationalEnd& e) {
  switch (e.kind) {
    case RationalEnd::Kind::Included: return Endpoint::closed(e.value);
    case RationalEnd::Kind::Excluded: return Endpoint::open(e.value);
    case RationalEnd::Kind::Unbounded: break;
  }
  return Endpoint::infinite();
}

bool carrier_contains(const SpacePresentation& s, const Quadratic& q) {
  return q.is_rational() && carrier(s).contains(q.a());
}

}  // namespace

Interval carrier(const SpacePresentation& s) { return Interval{as_lower(s.lo), as_lower(s.hi)}; }

std::optional<Rational> minimum(const SpacePresentation& s) {
  if (s.lo.kind == RationalEnd::Kind::Included) return s.lo.value;
  return std::nullopt;
}

std::optional<Rational> maximum_of_carrier(const SpacePresentation& s) {
  if (s.hi.kind == RationalEnd::Kind::Included) return s.hi.value;
  return std::nullopt;
}

IntervalSet whole(const SpacePresentation& s) { return IntervalSet(carrier(s)); }

IntervalSet up_set(const SpacePresentation& s, const IntervalSet& e) {
  if (e.empty()) return {};
  return IntervalSet(Interval{e.lower(), carrier(s).hi});
}

IntervalSet down_set(const SpacePresentation& s, const IntervalSet& e) {
  if (e.empty()) return {};
  return IntervalSet(Interval{carrier(s).lo, e.upper()});
}

std::optional<Rational> maximum(const IntervalSet& e) {
  if (e.empty() || !e.upper().is_closed()) return std::nullopt;
  return e.upper().at.a();
}

SupOutcome sup(const SpacePresentation& s, const IntervalSet& e) {
  SupOutcome out;
  if (e.empty()) {
    out.bounded = !whole(s).empty();
    out.sup = minimum(s);
    return out;
  }
  const Endpoint& u = e.upper();
  if (!u.finite()) return out;
  if (u.at.is_rational()) {
    if (carrier_contains(s, u.at)) {
      out.bounded = true;
      out.sup = u.at.a();
    }
    return out;
  }
  out.bounded = true;
  const Interval c = carrier(s);
  Rational first;
  if (!c.hi.finite())
    first = Rational(Rational::Rep(floor(u.at) + 1));
  else if (c.hi.is_closed())
    first = c.hi.at.a();
  else
    first = rational_between(u.at, c.hi.at);
  out.pair = std::make_pair(first, rational_between(u.at, first));
  return out;
}

IntervalSet closure(const SpacePresentation& s, const RationalTopology& t, const IntervalSet& e) {
  if (e.empty()) return {};
  if (t.closed_rays) return down_set(s, e);
  const Endpoint& u = e.upper();
  const Interval c = carrier(s);
  if (!u.finite()) return whole(s);
  if (!u.at.is_rational()) return IntervalSet(Interval{c.lo, Endpoint::open(u.at)});
  if (!carrier_contains(s, u.at)) return whole(s);
  return IntervalSet(Interval{c.lo, Endpoint::closed(u.at)});
}

bool is_open(const SpacePresentation& s, const RationalTopology& t, const IntervalSet& u) {
  if (u.empty()) return true;
  if (!(up_set(s, u) == u)) return false;
  const Endpoint& l = u.lower();
  if (!l.is_closed() || t.closed_rays) return true;
  const auto m = minimum(s);
  return m && *m == l.at.a();
}

Quadratic inner_cut(const SpacePresentation& s) {
  const bool lo_b = s.lo.kind != RationalEnd::Kind::Unbounded;
  const bool hi_b = s.hi.kind != RationalEnd::Kind::Unbounded;
  if (lo_b && hi_b) return Quadratic(s.lo.value, (s.hi.value - s.lo.value) / Rational(2), 2);
  if (lo_b) return Quadratic(s.lo.value, Rational(1), 2);
  if (hi_b) return Quadratic(s.hi.value, Rational(-1), 2);
  return Quadratic(Rational(0), Rational(1), 2);
}

std::vector<Rational> schema_rationals(const SpacePresentation& s) {
  std::vector<Rational> out;
  const Interval c = carrier(s);
  if (auto m = minimum(s)) out.push_back(*m);
  if (auto m = maximum_of_carrier(s)) out.push_back(*m);
  const Quadratic cut = inner_cut(s);
  const Rational a = c.lo.finite() ? c.lo.at.a() : Rational(Rational::Rep(floor(cut) - 2));
  const Rational b = c.hi.finite() ? c.hi.at.a() : Rational(Rational::Rep(floor(cut) + 3));
  for (int k = 1; k < 8; ++k) out.push_back(a + (b - a) * Rational(k, 8));
  out.push_back(rational_between(Quadratic(a), cut));
  out.push_back(rational_between(cut, Quadratic(b)));
  if (!c.lo.finite()) out.push_back(a - Rational(5));
  if (!c.hi.finite()) out.push_back(b + Rational(5));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// On a chain every closed set is irreducible. Under the Alexandroff topology
// the closed sets [lo,q) with q in the carrier have no maximum but supremum q,
// so the derivative removes the rays [q,->); the remaining open rays carry no
// such closed complements.
RationalTopology si_step(const SpacePresentation&, const RationalTopology&) { return RationalTopology{false}; }

}  // namespace irrtopo::rat
