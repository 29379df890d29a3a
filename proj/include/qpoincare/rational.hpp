#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qpoincare {

/// Raised when an exact coefficient leaves the 64-bit range.
class ArithmeticOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Reduced fraction with positive denominator over checked 64-bit integers.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n) {}  // NOLINT: implicit by design of literals
  Rational(std::int64_t n, std::int64_t d);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool isZero() const { return num_ == 0; }
  bool isInteger() const { return den_ == 1; }

  Rational operator-() const;
  Rational inverse() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// "3", "-1/2"
  std::string str() const;

 private:
  static Rational fromWide(__int128 n, __int128 d);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Element of Q(i).
struct Gaussian {
  Rational re;
  Rational im;

  constexpr Gaussian() = default;
  constexpr Gaussian(Rational r) : re(r) {}  // NOLINT
  constexpr Gaussian(std::int64_t r) : re(r) {}  // NOLINT
  Gaussian(Rational r, Rational i) : re(r), im(i) {}

  static Gaussian imaginaryUnit() { return {Rational(0), Rational(1)}; }

  bool isZero() const { return re.isZero() && im.isZero(); }
  bool isReal() const { return im.isZero(); }
  Gaussian operator-() const { return {-re, -im}; }
  Gaussian conj() const { return {re, -im}; }
  Gaussian inverse() const;

  friend Gaussian operator+(const Gaussian& a, const Gaussian& b) { return {a.re + b.re, a.im + b.im}; }
  friend Gaussian operator-(const Gaussian& a, const Gaussian& b) { return {a.re - b.re, a.im - b.im}; }
  friend Gaussian operator*(const Gaussian& a, const Gaussian& b) {
    if (a.im.isZero()) return {a.re * b.re, a.re * b.im};
    if (b.im.isZero()) return {a.re * b.re, a.im * b.re};
    if (a.re.isZero()) return {-(a.im * b.im), a.im * b.re};
    if (b.re.isZero()) return {-(a.im * b.im), a.re * b.im};
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Gaussian operator/(const Gaussian& a, const Gaussian& b) { return a * b.inverse(); }
  Gaussian& operator+=(const Gaussian& o) { return *this = *this + o; }
  Gaussian& operator*=(const Gaussian& o) { return *this = *this * o; }

  friend bool operator==(const Gaussian&, const Gaussian&) = default;
  friend auto operator<=>(const Gaussian&, const Gaussian&) = default;
};

}  // namespace qpoincare
