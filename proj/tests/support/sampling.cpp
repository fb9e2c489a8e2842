#include "sampling.hpp"

namespace irrtopo::testing {

namespace {

int below(std::mt19937_64& rng, int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }

// Bounds used to sample rationals from the carrier, with unbounded ends cut at 4.
std::pair<Rational, Rational> sample_range(const SpacePresentation& s) {
  const Interval c = s.carrier();
  const Rational lo = c.lo.finite() ? c.lo.at.a() : (c.hi.finite() ? c.hi.at.a() - Rational(4) : Rational(-2));
  const Rational hi = c.hi.finite() ? c.hi.at.a() : lo + Rational(4);
  return {lo, hi};
}

Endpoint random_end(std::mt19937_64& rng, const Rational& q) {
  return below(rng, 2) ? Endpoint::closed(q) : Endpoint::open(q);
}

}  // namespace

Rational random_rational(std::mt19937_64& rng, const Rational& lo, const Rational& hi, int max_den) {
  const int d = 1 + below(rng, max_den);
  const Rational span = hi - lo;
  const Rational step = span / Rational(d);
  return lo + step * Rational(below(rng, d + 1));
}

DefinableSet random_nonempty_set(const SpacePresentation& s, std::mt19937_64& rng) {
  for (;;) {
    DefinableSet out;
    if (s.is_cells()) {
      CellSet e = CellSet::none(s.points.size(), s.chains.size());
      for (std::size_t p = 0; p < s.points.size(); ++p) e.points[p] = below(rng, 2) == 0;
      for (auto& chain : e.chains) {
        const Index a = below(rng, 7), b = a + below(rng, 5);
        switch (below(rng, 5)) {
          case 0: break;
          case 1: chain = IndexSet::single(a); break;
          case 2: chain = IndexSet::range(a, b); break;
          case 3: chain = IndexSet::tail(a); break;
          default: chain = IndexSet::range(0, a) | IndexSet::tail(b + 1); break;
        }
      }
      out = DefinableSet(e);
    } else {
      const auto [lo, hi] = sample_range(s);
      IntervalSet u;
      const int parts = 1 + below(rng, 2);
      for (int i = 0; i < parts; ++i) {
        Rational a = random_rational(rng, lo, hi, 8), b = random_rational(rng, lo, hi, 8);
        if (b < a) std::swap(a, b);
        Endpoint hi_end = random_end(rng, b);
        if (below(rng, 6) == 0) hi_end = Endpoint::open(Quadratic(a, (b - a) / Rational(2), 2));
        if (below(rng, 8) == 0) hi_end = Endpoint::infinite();
        u = u | IntervalSet(Interval{random_end(rng, a), hi_end});
      }
      out = DefinableSet(u) & whole_space(s);
    }
    if (!out.empty()) return out;
  }
}

std::vector<PointId> point_pool(const SpacePresentation& s, std::mt19937_64& rng, int extra) {
  std::vector<PointId> out = schema_points(s);
  for (int i = 0; i < extra; ++i) {
    if (s.is_cells()) {
      if (!s.chains.empty() && below(rng, 3) != 0)
        out.push_back(ChainPoint{s.chains[below(rng, static_cast<int>(s.chains.size()))], below(rng, 30)});
      else
        out.push_back(FinitePoint{s.points[below(rng, static_cast<int>(s.points.size()))]});
    } else {
      const auto [lo, hi] = sample_range(s);
      const Rational q = random_rational(rng, lo, hi, 16);
      if (in_carrier(s, RationalPoint{q})) out.push_back(RationalPoint{q});
    }
  }
  return out;
}

}  // namespace irrtopo::testing
