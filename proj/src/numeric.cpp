#include "irrtopo/numeric.hpp"

#include <stdexcept>

namespace irrtopo {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

// sign of A + B*sqrt(m)
int sign1(const Rational& A, const Rational& B, std::uint64_t m) {
  const int sa = A.sign();
  const int sb = B.sign();
  if (sb == 0 || m == 1) {
    const Rational t = m == 1 ? A + B : A;
    return t.sign();
  }
  if (sa >= 0 && sb >= 0) return 1;
  if (sa <= 0 && sb <= 0) return -1;
  const Rational diff = A * A - B * B * Rational(static_cast<long long>(m));
  return sa > 0 ? diff.sign() : -diff.sign();
}

// sign of A + B*sqrt(m) + C*sqrt(n)
int sign2(const Rational& A, const Rational& B, std::uint64_t m, const Rational& C, std::uint64_t n) {
  if (C.sign() == 0 || n == 1) return sign1(n == 1 ? A + C : A, B, m);
  if (B.sign() == 0 || m == 1) return sign1(m == 1 ? A + B : A, C, n);
  if (m == n) return sign1(A, B + C, m);
  // compare L = A + B sqrt(m) against R = -C sqrt(n)
  const int sl = sign1(A, B, m);
  const int sr = -C.sign();
  if (sl != sr) return sl > sr ? 1 : -1;
  if (sl == 0) return 0;
  const Rational mm(static_cast<long long>(m));
  const Rational nn(static_cast<long long>(n));
  const int sq = sign1(A * A + B * B * mm - C * C * nn, Rational(2) * A * B, m);
  return sl > 0 ? sq : -sq;
}

}  // namespace

Rational::Rational(long long num, long long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  v_ = den < 0 ? Rep(-boost::multiprecision::cpp_int(num), -boost::multiprecision::cpp_int(den)) : Rep(num, den);
}

Rational Rational::parse(std::string_view text) {
  text = trim(text);
  bool neg = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    neg = text.front() == '-';
    text.remove_prefix(1);
  }
  const auto slash = text.find('/');
  const std::string_view num = slash == std::string_view::npos ? text : text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  boost::multiprecision::cpp_int n{std::string(num)};
  boost::multiprecision::cpp_int d{std::string(den)};
  if (d == 0) throw std::invalid_argument("rational with zero denominator");
  if (neg) n = -n;
  return Rational(Rep(n, d));
}

std::string Rational::str() const {
  const auto n = boost::multiprecision::numerator(v_);
  const auto d = boost::multiprecision::denominator(v_);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

Rational midpoint(const Rational& a, const Rational& b) { return (a + b) / Rational(2); }

Quadratic::Quadratic(Rational a, Rational b, std::uint64_t d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
  if (d == 0) throw std::invalid_argument("surd radicand must be positive");
  // pull square factors out of the radicand
  std::uint64_t out = 1;
  for (std::uint64_t f = 2; f * f <= d_; ++f) {
    while (d_ % (f * f) == 0) {
      d_ /= f * f;
      out *= f;
    }
  }
  b_ = b_ * Rational(static_cast<long long>(out));
  if (d_ == 1) {
    a_ = a_ + b_;
    b_ = Rational(0);
  }
  if (b_.sign() == 0) d_ = 1;
}

std::string Quadratic::str() const {
  if (is_rational()) return a_.str();
  return "surd(" + a_.str() + "," + b_.str() + "," + std::to_string(d_) + ")";
}

Quadratic Quadratic::parse(std::string_view text) {
  text = trim(text);
  if (text.rfind("surd(", 0) == 0) {
    if (text.back() != ')') throw std::invalid_argument("malformed surd '" + std::string(text) + "'");
    std::string_view body = text.substr(5, text.size() - 6);
    const auto c1 = body.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : body.find(',', c1 + 1);
    if (c2 == std::string_view::npos) throw std::invalid_argument("malformed surd '" + std::string(text) + "'");
    const auto dtext = trim(body.substr(c2 + 1));
    if (!all_digits(dtext)) throw std::invalid_argument("malformed surd radicand");
    return Quadratic(Rational::parse(body.substr(0, c1)), Rational::parse(body.substr(c1 + 1, c2 - c1 - 1)),
                     std::stoull(std::string(dtext)));
  }
  return Quadratic(Rational::parse(text));
}

int Quadratic::compare(const Quadratic& x, const Quadratic& y) {
  if (x.is_rational() && y.is_rational()) {
    const auto c = x.a_ <=> y.a_;
    return c < 0 ? -1 : c > 0 ? 1 : 0;
  }
  return sign2(x.a_ - y.a_, x.b_, x.d_, -y.b_, y.d_);
}

}  // namespace irrtopo
