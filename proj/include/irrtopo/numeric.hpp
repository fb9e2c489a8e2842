#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace irrtopo {

/// Exact normalized rational number.
class Rational {
 public:
  using Rep = boost::multiprecision::cpp_rational;

  Rational() = default;
  Rational(long long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long long num, long long den);
  explicit Rational(Rep v) : v_(std::move(v)) {}

  /// Accepts "n", "-n", "n/d" with d > 0.
  static Rational parse(std::string_view text);

  const Rep& rep() const { return v_; }
  int sign() const { return v_.sign(); }
  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(Rep(a.v_ + b.v_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(Rep(a.v_ - b.v_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(Rep(a.v_ * b.v_)); }
  friend Rational operator/(const Rational& a, const Rational& b) { return Rational(Rep(a.v_ / b.v_)); }
  Rational operator-() const { return Rational(Rep(-v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.v_ < b.v_) return std::strong_ordering::less;
    if (b.v_ < a.v_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Rep v_{0};
};

Rational midpoint(const Rational& a, const Rational& b);

/// A real number a + b*sqrt(d) with rational a, b and square-free d >= 2.
/// Rationals are the b = 0 case (stored with d = 1).
class Quadratic {
 public:
  Quadratic() = default;
  Quadratic(const Rational& r) : a_(r) {}  // NOLINT(google-explicit-constructor)
  Quadratic(Rational a, Rational b, std::uint64_t d);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  std::uint64_t d() const { return d_; }
  bool is_rational() const { return b_.sign() == 0; }

  /// "3/4" for rationals, "surd(a,b,d)" otherwise.
  std::string str() const;
  /// Parses either form produced by str().
  static Quadratic parse(std::string_view text);

  friend bool operator==(const Quadratic& x, const Quadratic& y) { return compare(x, y) == 0; }
  friend std::strong_ordering operator<=>(const Quadratic& x, const Quadratic& y) {
    const int c = compare(x, y);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// Exact sign of x - y, decided by repeated squaring.
  static int compare(const Quadratic& x, const Quadratic& y);

 private:
  Rational a_;
  Rational b_;
  std::uint64_t d_ = 1;
};

}  // namespace irrtopo
