#pragma once

#include <optional>
#include <string>
#include <vector>

#include "irrtopo/numeric.hpp"

namespace irrtopo {

/// One end of an interval of rationals. Irrational ends are cuts and are
/// always stored as Open; Infinite means unbounded on that side.
struct Endpoint {
  enum class Kind { Infinite, Open, Closed };
  Kind kind = Kind::Infinite;
  Quadratic at;

  static Endpoint infinite() { return {}; }
  static Endpoint open(Quadratic q) { return {Kind::Open, std::move(q)}; }
  static Endpoint closed(Quadratic q) { return {Kind::Closed, std::move(q)}; }
  bool finite() const { return kind != Kind::Infinite; }
  bool is_closed() const { return kind == Kind::Closed; }
  friend bool operator==(const Endpoint& x, const Endpoint& y) {
    return x.kind == y.kind && (x.kind == Kind::Infinite || x.at == y.at);
  }
};

/// Ordering of endpoints used as lower resp. upper bounds.
int compare_lower(const Endpoint& x, const Endpoint& y);
int compare_upper(const Endpoint& x, const Endpoint& y);

/// A set of rationals lo..hi.
struct Interval {
  Endpoint lo;
  Endpoint hi;

  bool empty() const;
  bool contains(const Rational& q) const;
  std::string str() const;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Normalized finite union of rational intervals: sorted, disjoint, with
/// touching neighbours merged. Structural equality is set equality.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(Interval i);
  explicit IntervalSet(std::vector<Interval> parts);

  static IntervalSet point(const Rational& q) {
    return IntervalSet(Interval{Endpoint::closed(q), Endpoint::closed(q)});
  }

  bool empty() const { return parts_.empty(); }
  bool contains(const Rational& q) const;
  const std::vector<Interval>& parts() const { return parts_; }

  /// Complement inside `carrier`.
  IntervalSet complement_in(const Interval& carrier) const;
  friend IntervalSet operator|(const IntervalSet& a, const IntervalSet& b);
  friend IntervalSet operator&(const IntervalSet& a, const IntervalSet& b);
  bool subset_of(const IntervalSet& other) const { return (*this & other) == *this; }

  /// Lower end of the first part and upper end of the last part.
  const Endpoint& lower() const { return parts_.front().lo; }
  const Endpoint& upper() const { return parts_.back().hi; }

  /// Some rational in the set, preferring interior points; nullopt if empty.
  std::optional<Rational> some_element() const;

  std::string str() const;
  friend bool operator==(const IntervalSet& a, const IntervalSet& b) { return a.parts_ == b.parts_; }

 private:
  void normalize();
  std::vector<Interval> parts_;
};

/// Largest integer <= x.
boost::multiprecision::cpp_int floor(const Quadratic& x);
/// Some rational strictly between x < y (simplest dyadic found first).
Rational rational_between(const Quadratic& x, const Quadratic& y);

}  // namespace irrtopo
