#pragma once

// Commutative coefficient ring: Gaussian-rational Laurent polynomials in
//   z (deformation parameter, Laurent),
//   g00 g01 g02 g03 g11 g12 g13 g22 g23 g33 (metric indeterminates),
//   and, per tensor slot s = 0,1,2: P0 P1 P2 P3 (momenta) and E (Laurent).
// E stands for exp(z*P0) of its slot. Slot 0 is the single-copy ring;
// slots 0/1 form the tensor-square coefficients and 0/1/2 the tensor cube.

#include <array>
#include <compare>
#include <cstddef>
#include <cstring>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qpoincare/rational.hpp"

namespace qpoincare {

inline constexpr int kSlots = 3;
inline constexpr int kVarsPerSlot = 5;
inline constexpr int kMetricVars = 10;
inline constexpr int kNumVars = 1 + kMetricVars + kSlots * kVarsPerSlot;

namespace var {

inline constexpr int z = 0;

/// Index of the symmetric metric entry g^{mu nu}.
constexpr int g(int mu, int nu) {
  if (mu > nu) std::swap(mu, nu);
  // rows of the upper triangle: 4 + 3 + 2 + 1
  constexpr int rowStart[4] = {0, 4, 7, 9};
  return 1 + rowStart[mu] + (nu - mu);
}

constexpr int P(int mu, int slot = 0) { return 1 + kMetricVars + slot * kVarsPerSlot + mu; }
constexpr int E(int slot = 0) { return 1 + kMetricVars + slot * kVarsPerSlot + 4; }

constexpr int slotOf(int v) { return v <= kMetricVars ? -1 : (v - 1 - kMetricVars) / kVarsPerSlot; }
constexpr bool isLaurent(int v) { return v == z || (v > kMetricVars && (v - 1 - kMetricVars) % kVarsPerSlot == 4); }
constexpr bool isMomentum(int v) { return v > kMetricVars && !isLaurent(v); }

}  // namespace var

class InvalidESubstitution : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InconsistentPair : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exponents are stored offset by 128 in one byte each, so byte order is
/// numeric order and comparisons reduce to memcmp. Range is -128..127.
struct Exponent {
  static constexpr int kBias = 128;

  class Ref {
   public:
    explicit Ref(std::uint8_t& b) : b_(b) {}
    operator int() const { return int(b_) - kBias; }  // NOLINT
    Ref& operator=(int x) {
      if (x < -kBias || x > 255 - kBias) throw ArithmeticOverflow("exponent overflow");
      b_ = static_cast<std::uint8_t>(x + kBias);
      return *this;
    }
    Ref& operator=(const Ref& o) { return *this = int(o); }
    Ref& operator+=(int x) { return *this = int(*this) + x; }
    Ref& operator-=(int x) { return *this = int(*this) - x; }
    Ref& operator++() { return *this += 1; }
    Ref& operator--() { return *this -= 1; }

   private:
    std::uint8_t& b_;
  };

  std::array<std::uint8_t, kNumVars> raw;

  Exponent() { raw.fill(kBias); }

  Ref operator[](int v) { return Ref(raw[static_cast<std::size_t>(v)]); }
  int operator[](int v) const { return int(raw[static_cast<std::size_t>(v)]) - kBias; }
  bool isOne() const;

  friend bool operator==(const Exponent& a, const Exponent& b) {
    return std::memcmp(a.raw.data(), b.raw.data(), kNumVars) == 0;
  }
  /// Lexicographic by variable index.
  friend std::strong_ordering operator<=>(const Exponent& a, const Exponent& b) {
    return std::memcmp(a.raw.data(), b.raw.data(), kNumVars) <=> 0;
  }
};

struct ExponentHash {
  std::size_t operator()(const Exponent& x) const noexcept;
};

class Substitution;

/// Sparse exact Laurent polynomial; terms kept sorted by exponent, never zero.
class Poly {
 public:
  using Term = std::pair<Exponent, Gaussian>;

  Poly() = default;
  Poly(Gaussian c);  // NOLINT: scalars embed implicitly
  Poly(std::int64_t c) : Poly(Gaussian(c)) {}  // NOLINT

  static Poly variable(int v, int power = 1);
  static Poly monomial(const Exponent& e, Gaussian c);
  static Poly fromTerms(std::vector<Term> terms);
  static Poly i() { return Poly(Gaussian::imaginaryUnit()); }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool isZero() const { return terms_.empty(); }
  bool isConstant() const;
  Gaussian constantTerm() const;
  bool isMonomial() const { return terms_.size() == 1; }
  /// Single term free of momenta and metric variables.
  bool isInvertibleMonomial() const;
  /// True when only the listed variables occur.
  bool dependsOnly(std::initializer_list<int> vars) const;
  bool dependsOn(int v) const;
  bool usesSlot(int slot) const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly scaled(const Gaussian& c) const;

  /// Integer power; negative powers require an invertible monomial.
  Poly pow(int n) const;
  /// Inverse of an invertible monomial; throws std::domain_error otherwise.
  Poly inverse() const;

  /// Formal partial derivative (Laurent rule on z and E).
  Poly derivative(int v) const;

  Poly substitute(const Substitution& s) const;

  /// Moves the variables of slot s to slot target[s]; exponents of merged slots add.
  Poly moveSlots(const std::array<int, kSlots>& target) const;

  friend bool operator==(const Poly&, const Poly&) = default;
  friend auto operator<=>(const Poly&, const Poly&) = default;

 private:
  void normalize();
  std::vector<Term> terms_;
};

/// d/dP0 on slot `slot`, extended to E by d(E) = z*E.
Poly d_p0(const Poly& c, int slot = 0);

/// Single-copy coefficient injected into slot `slot`.
Poly embed(const Poly& c, int slot);
/// Renames every slot onto slot 0 (multiplication map on coefficients).
Poly collapse(const Poly& c);

/// Ring homomorphism given by images of selected variables; others are fixed.
class Substitution {
 public:
  Substitution() = default;

  Substitution& set(int v, Poly image);
  const std::optional<Poly>& image(int v) const { return images_[static_cast<std::size_t>(v)]; }
  bool isIdentity() const;

  /// Checks the exponential contract between P0 and E of a single-copy map:
  /// sigma(E) must be an invertible E-monomial u*E^k (k != 0), and when
  /// sigma(P0) = a*P0 it must equal E^a.
  void validate() const;

  /// Substitution composed with slot relocation: every variable of slot 0 in
  /// this map is moved into `slot` (domain and images).
  Substitution inSlot(int slot) const;

 private:
  std::array<std::optional<Poly>, kNumVars> images_;
};

// Frequently used encodings; E = exp(z*P0).
namespace enc {

/// sinh(k z P0) = (E^k - E^-k)/2
Poly sinh(int k, int slot = 0);
/// cosh(k z P0) = (E^k + E^-k)/2
Poly cosh(int k, int slot = 0);
/// exp(k z P0) = E^k
Poly exp(int k, int slot = 0);
/// kappa = 1/(2z)
Poly kappa();

}  // namespace enc

}  // namespace qpoincare
