#include "irrtopo/interval_set.hpp"

#include <algorithm>

namespace irrtopo {

using boost::multiprecision::cpp_int;

namespace {

Endpoint normalized(Endpoint e) {
  if (e.kind == Endpoint::Kind::Closed && !e.at.is_rational()) e.kind = Endpoint::Kind::Open;
  return e;
}

// Upper bound of a gap that ends where `next_lower` begins.
Endpoint flip_to_upper(const Endpoint& lower) {
  if (lower.kind == Endpoint::Kind::Closed) return Endpoint::open(lower.at);
  return normalized(Endpoint::closed(lower.at));
}

Endpoint flip_to_lower(const Endpoint& upper) {
  if (upper.kind == Endpoint::Kind::Closed) return Endpoint::open(upper.at);
  return normalized(Endpoint::closed(upper.at));
}

cpp_int floor_rational(const Rational& r) {
  const cpp_int n = boost::multiprecision::numerator(r.rep());
  const cpp_int d = boost::multiprecision::denominator(r.rep());
  cpp_int q = n / d;
  if (n < 0 && q * d != n) q -= 1;
  return q;
}

}  // namespace

int compare_lower(const Endpoint& x, const Endpoint& y) {
  if (!x.finite() || !y.finite()) return (x.finite() ? 1 : 0) - (y.finite() ? 1 : 0);
  const int c = Quadratic::compare(x.at, y.at);
  if (c != 0) return c;
  if (x.kind == y.kind) return 0;
  return x.is_closed() ? -1 : 1;
}

int compare_upper(const Endpoint& x, const Endpoint& y) {
  if (!x.finite() || !y.finite()) return (x.finite() ? 0 : 1) - (y.finite() ? 0 : 1);
  const int c = Quadratic::compare(x.at, y.at);
  if (c != 0) return c;
  if (x.kind == y.kind) return 0;
  return x.is_closed() ? 1 : -1;
}

bool Interval::empty() const {
  if (!lo.finite() || !hi.finite()) return false;
  const int c = Quadratic::compare(lo.at, hi.at);
  if (c != 0) return c > 0;
  return !(lo.is_closed() && hi.is_closed());
}

bool Interval::contains(const Rational& q) const {
  const Quadratic v(q);
  if (lo.finite()) {
    const int c = Quadratic::compare(v, lo.at);
    if (c < 0 || (c == 0 && !lo.is_closed())) return false;
  }
  if (hi.finite()) {
    const int c = Quadratic::compare(v, hi.at);
    if (c > 0 || (c == 0 && !hi.is_closed())) return false;
  }
  return true;
}

std::string Interval::str() const {
  if (lo.is_closed() && hi.is_closed() && lo.at == hi.at) return "{" + lo.at.str() + "}";
  std::string s;
  s += lo.is_closed() ? "[" : "(";
  s += lo.finite() ? lo.at.str() : "-inf";
  s += ",";
  s += hi.finite() ? hi.at.str() : "inf";
  s += hi.is_closed() ? "]" : ")";
  return s;
}

IntervalSet::IntervalSet(Interval i) : parts_{std::move(i)} { normalize(); }

IntervalSet::IntervalSet(std::vector<Interval> parts) : parts_(std::move(parts)) { normalize(); }

void IntervalSet::normalize() {
  std::vector<Interval> live;
  for (auto& p : parts_) {
    Interval n{normalized(p.lo), normalized(p.hi)};
    if (!n.empty()) live.push_back(std::move(n));
  }
  std::sort(live.begin(), live.end(),
            [](const Interval& x, const Interval& y) { return compare_lower(x.lo, y.lo) < 0; });
  std::vector<Interval> merged;
  for (auto& p : live) {
    if (!merged.empty()) {
      Interval& last = merged.back();
      bool touch = !last.hi.finite() || !p.lo.finite();
      if (!touch) {
        const int c = Quadratic::compare(last.hi.at, p.lo.at);
        touch = c > 0 || (c == 0 && (last.hi.is_closed() || p.lo.is_closed() || !p.lo.at.is_rational()));
      }
      if (touch) {
        if (compare_upper(p.hi, last.hi) > 0) last.hi = p.hi;
        continue;
      }
    }
    merged.push_back(std::move(p));
  }
  parts_ = std::move(merged);
}

bool IntervalSet::contains(const Rational& q) const {
  return std::any_of(parts_.begin(), parts_.end(), [&](const Interval& i) { return i.contains(q); });
}

IntervalSet IntervalSet::complement_in(const Interval& carrier) const {
  std::vector<Interval> gaps;
  Endpoint start = Endpoint::infinite();
  bool open_start = true;  // still at -inf
  for (const auto& p : parts_) {
    if (p.lo.finite()) gaps.push_back(Interval{open_start ? Endpoint::infinite() : start, flip_to_upper(p.lo)});
    if (!p.hi.finite()) return IntervalSet(std::move(gaps)) & IntervalSet(carrier);
    start = flip_to_lower(p.hi);
    open_start = false;
  }
  gaps.push_back(Interval{open_start ? Endpoint::infinite() : start, Endpoint::infinite()});
  return IntervalSet(std::move(gaps)) & IntervalSet(carrier);
}

IntervalSet operator|(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> all = a.parts_;
  all.insert(all.end(), b.parts_.begin(), b.parts_.end());
  return IntervalSet(std::move(all));
}

IntervalSet operator&(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> out;
  for (const auto& x : a.parts_)
    for (const auto& y : b.parts_) {
      Interval i{compare_lower(x.lo, y.lo) >= 0 ? x.lo : y.lo, compare_upper(x.hi, y.hi) <= 0 ? x.hi : y.hi};
      if (!i.empty()) out.push_back(std::move(i));
    }
  return IntervalSet(std::move(out));
}

std::optional<Rational> IntervalSet::some_element() const {
  if (parts_.empty()) return std::nullopt;
  const Interval& p = parts_.front();
  if (p.lo.finite() && p.hi.finite()) {
    if (p.lo.is_closed() && p.hi.is_closed()) return p.lo.at.a();
    return rational_between(p.lo.at, p.hi.at);
  }
  if (p.lo.finite()) return Rational(Rational::Rep(floor(p.lo.at) + 1));
  if (p.hi.finite()) return Rational(Rational::Rep(floor(p.hi.at) - 1));
  return Rational(0);
}

std::string IntervalSet::str() const {
  if (parts_.empty()) return "empty";
  std::string s;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += " | ";
    s += parts_[i].str();
  }
  return s;
}

cpp_int floor(const Quadratic& x) {
  if (x.is_rational()) return floor_rational(x.a());
  // |x| <= |a| + |b| * d, so binary search inside that window
  const Rational bound = (x.a().sign() < 0 ? -x.a() : x.a()) +
                         (x.b().sign() < 0 ? -x.b() : x.b()) * Rational(static_cast<long long>(x.d()));
  cpp_int lo = -floor_rational(bound) - 2;  // lo <= x
  cpp_int hi = floor_rational(bound) + 2;   // hi > x
  while (hi - lo > 1) {
    const cpp_int mid = (lo + hi) / 2;
    if (Quadratic::compare(Quadratic(Rational(Rational::Rep(mid))), x) <= 0)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

Rational rational_between(const Quadratic& x, const Quadratic& y) {
  for (long long n = 1;; n *= 2) {
    const Quadratic scaled(x.a() * Rational(n), x.b() * Rational(n), x.d());
    const Rational q(Rational::Rep(floor(scaled) + 1, n));
    if (Quadratic::compare(Quadratic(q), y) < 0) return q;
  }
}

}  // namespace irrtopo
