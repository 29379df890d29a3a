#include "qpoincare/rational.hpp"

#include <limits>
#include <numeric>

namespace qpoincare {

namespace {

__int128 gcdWide(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Rational Rational::fromWide(__int128 n, __int128 d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 g = d == 1 ? 1 : gcdWide(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  constexpr auto lo = std::numeric_limits<std::int64_t>::min() + 1;
  constexpr auto hi = std::numeric_limits<std::int64_t>::max();
  if (n < lo || n > hi || d > hi) throw ArithmeticOverflow("rational coefficient exceeds 64 bits");
  Rational r;
  r.num_ = static_cast<std::int64_t>(n);
  r.den_ = static_cast<std::int64_t>(d);
  return r;
}

Rational::Rational(std::int64_t n, std::int64_t d) { *this = fromWide(n, d); }

Rational Rational::operator-() const {
  if (num_ == std::numeric_limits<std::int64_t>::min() + 1) return fromWide(-static_cast<__int128>(num_), den_);
  Rational r = *this;
  r.num_ = -num_;
  return r;
}

Rational Rational::inverse() const {
  if (num_ == 0) throw std::domain_error("inverse of zero");
  return fromWide(den_, num_);
}

Rational operator+(const Rational& a, const Rational& b) {
  if (a.num_ == 0) return b;
  if (b.num_ == 0) return a;
  std::int64_t n = 0, d = a.den_;
  bool ok;
  if (a.den_ == b.den_) {
    ok = !__builtin_add_overflow(a.num_, b.num_, &n);
  } else {
    std::int64_t x = 0, y = 0;
    ok = !__builtin_mul_overflow(a.num_, b.den_, &x) && !__builtin_mul_overflow(b.num_, a.den_, &y) &&
         !__builtin_add_overflow(x, y, &n) && !__builtin_mul_overflow(a.den_, b.den_, &d);
  }
  if (ok && n != std::numeric_limits<std::int64_t>::min()) {
    Rational r;
    if (n == 0) return r;
    const std::int64_t g = d == 1 ? 1 : std::gcd(n, d);
    r.num_ = g == 1 ? n : n / g;
    r.den_ = g == 1 ? d : d / g;
    return r;
  }
  return Rational::fromWide(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                            static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  if (a.num_ == 0 || b.num_ == 0) return Rational();
  // Cross-cancel so the result is already reduced.
  const std::int64_t g1 = a.den_ == 1 ? 1 : std::gcd(b.num_, a.den_);
  const std::int64_t g2 = b.den_ == 1 ? 1 : std::gcd(a.num_, b.den_);
  std::int64_t n = 0, d = 0;
  const std::int64_t an = g2 == 1 ? a.num_ : a.num_ / g2, bn = g1 == 1 ? b.num_ : b.num_ / g1;
  const std::int64_t ad = g1 == 1 ? a.den_ : a.den_ / g1, bd = g2 == 1 ? b.den_ : b.den_ / g2;
  if (!__builtin_mul_overflow(an, bn, &n) && !__builtin_mul_overflow(ad, bd, &d) &&
      n != std::numeric_limits<std::int64_t>::min()) {
    Rational r;
    r.num_ = n;
    r.den_ = d;
    return r;
  }
  return Rational::fromWide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Gaussian Gaussian::inverse() const {
  Rational norm = re * re + im * im;
  if (norm.isZero()) throw std::domain_error("inverse of zero");
  return {re / norm, -im / norm};
}

}  // namespace qpoincare
