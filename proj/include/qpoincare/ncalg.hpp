#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "qpoincare/scalars.hpp"

namespace qpoincare {

inline constexpr int kLetters = 6;

class InvalidTable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NonTerminating : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BadExponent : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Sorted product of letters, stored as an exponent vector.
struct Monomial {
  std::array<std::uint8_t, kLetters> exp{};

  static Monomial letter(int l) {
    Monomial m;
    m.exp[static_cast<std::size_t>(l)] = 1;
    return m;
  }
  int degree() const;
  bool isUnit() const { return degree() == 0; }
  /// Smallest letter present; -1 for the unit.
  int first() const;
  Monomial withoutFirst() const;
  Monomial prepended(int l) const;
  /// Letters in non-decreasing order, with repetition.
  std::vector<int> word() const;
  std::uint64_t key() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  /// Graded lexicographic.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);
};

/// Finite sum of basis keys with coefficients standing to the right.
template <class Key>
class LinearCombination {
 public:
  using Map = std::map<Key, Poly>;

  LinearCombination() = default;
  LinearCombination(const Key& k, Poly c) { add(k, std::move(c)); }

  const Map& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add(const Key& k, const Poly& c) {
    if (c.isZero()) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.isZero()) terms_.erase(it);
    }
  }
  void addScaled(const LinearCombination& o, const Poly& c) {
    if (c.isZero()) return;
    for (const auto& [k, v] : o.terms_) add(k, v * c);
  }
  LinearCombination& operator+=(const LinearCombination& o) {
    for (const auto& [k, v] : o.terms_) add(k, v);
    return *this;
  }
  LinearCombination& operator-=(const LinearCombination& o) {
    for (const auto& [k, v] : o.terms_) add(k, -v);
    return *this;
  }
  friend LinearCombination operator+(LinearCombination a, const LinearCombination& b) { return a += b; }
  friend LinearCombination operator-(LinearCombination a, const LinearCombination& b) { return a -= b; }
  LinearCombination operator-() const {
    LinearCombination r = *this;
    for (auto& [k, v] : r.terms_) v = -v;
    return r;
  }
  /// Right multiplication by a coefficient; coefficients commute with each other.
  LinearCombination times(const Poly& c) const {
    LinearCombination r;
    r.addScaled(*this, c);
    return r;
  }
  /// Coefficient of the key (zero when absent).
  Poly coeff(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Poly() : it->second;
  }

  template <class F>
  LinearCombination mapCoefficients(F&& f) const {
    LinearCombination r;
    for (const auto& [k, v] : terms_) r.add(k, f(v));
    return r;
  }

  friend bool operator==(const LinearCombination&, const LinearCombination&) = default;

 private:
  Map terms_;
};

using Element = LinearCombination<Monomial>;
using TensorElement = LinearCombination<std::array<Monomial, 2>>;
using Tensor3Element = LinearCombination<std::array<Monomial, 3>>;

inline Element unitElement(const Poly& c) { return Element(Monomial{}, c); }
inline Element letterElement(int l, const Poly& c = Poly(1)) { return Element(Monomial::letter(l), c); }
/// Highest letter degree among the terms (0 for pure coefficients and zero).
int letterDegree(const Element& x);
/// Coefficient of the unit monomial.
Poly scalarPart(const Element& x);
/// True when x is a pure coefficient (only the unit monomial).
bool isScalar(const Element& x);

/// A factor of an unordered word: a letter index or a coefficient.
using Factor = std::variant<int, Poly>;
using Word = std::vector<Factor>;

/// Commutation data of a presentation.
struct RelationTable {
  std::vector<std::string> letterNames;
  /// brackets[a][b] = [a, b] for a > b; other entries are ignored.
  std::array<std::array<Element, kLetters>, kLetters> brackets{};
  /// derivations[l][mu] = [l, P_mu], a coefficient.
  std::array<std::array<Poly, 4>, kLetters> derivations{};

  /// [a, b] for any pair, by antisymmetry.
  Element bracket(int a, int b) const;
  /// Throws InvalidTable unless every bracket has letter degree <= 1 and
  /// all entries live in the single-copy ring.
  void validate() const;
};

/// A generator for Jacobi triples: a letter, a momentum P_mu, or E.
struct Generator {
  enum class Kind { Letter, Momentum, GroupLike };
  Kind kind = Kind::Letter;
  int index = 0;

  static Generator letter(int l) { return {Kind::Letter, l}; }
  static Generator momentum(int mu) { return {Kind::Momentum, mu}; }
  static Generator groupLike() { return {Kind::GroupLike, 0}; }
  Element element() const;

  friend bool operator==(const Generator&, const Generator&) = default;
};

/// Normal-ordering engine for one relation table. Letters are moved into
/// increasing order with (a b -> b a + [a,b]) and coefficients are moved to
/// the right with (c l -> l c - [l,c]), where [l, .] acts on coefficients as
/// the derivation fixed by [l, P_mu]. The same engine serves every tensor
/// slot: letters of slot s only see the slot-s momenta of a coefficient.
class Algebra {
 public:
  explicit Algebra(RelationTable table);
  Algebra(const Algebra&) = delete;
  Algebra& operator=(const Algebra&) = delete;

  const RelationTable& table() const { return table_; }
  const std::string& letterName(int l) const { return table_.letterNames[static_cast<std::size_t>(l)]; }

  /// [l, c] for a coefficient c in slot `slot`.
  Poly derive(int letter, const Poly& c, int slot = 0) const;

  Element multiply(const Element& a, const Element& b, int slot = 0) const;
  Element commutator(const Element& a, const Element& b, int slot = 0) const;
  /// l * x in normal form.
  Element leftMultiplyLetter(int letter, const Element& x, int slot = 0) const;
  /// c * x in normal form.
  Element leftMultiplyCoeff(const Poly& c, const Element& x, int slot = 0) const;
  /// Product of a sorted monomial with an element: m * x.
  Element leftMultiplyMonomial(const Monomial& m, const Element& x, int slot = 0) const;

  Element normalOrder(std::span<const Word> words) const;

  /// exp(alpha) x exp(-alpha) through the ad-series; alpha = r*z*P0.
  Element conjExp(const Poly& alpha, const Element& x, int maxTerms = 32) const;

  /// Cyclic sum [[a,b],c] + [[b,c],a] + [[c,a],b] in normal form.
  Element jacobi(const Generator& a, const Generator& b, const Generator& c) const;

 private:
  Element letterTimesMonomial(int letter, const Monomial& m, int slot) const;
  // Cached product for letter > m.first(); the reference stays valid for the algebra's lifetime.
  const Element& reorder(int letter, const Monomial& m, int slot) const;
  const Element& monomialProduct(const Monomial& m, const Monomial& n, int slot) const;
  Element coeffTimesMonomial(const Poly& c, const Monomial& m, int slot) const;

  RelationTable table_;
  std::array<std::array<std::array<Element, kLetters>, kLetters>, kSlots> slotBrackets_{};
  std::array<std::array<std::array<Poly, 4>, kLetters>, kSlots> slotDerivations_{};

  mutable std::mutex cacheMutex_;
  mutable std::array<std::unordered_map<std::uint64_t, Element>, kSlots> cache_;
  mutable std::array<std::map<std::pair<std::uint64_t, std::uint64_t>, Element>, kSlots> productCache_;
};

/// Generator-wise map between presentations: letters go to elements of the
/// target, coefficients go through a ring substitution.
struct GenMap {
  std::string name;
  std::vector<Element> letterImages;
  Substitution sigma;
};

/// Applies a map (or anti-map when `anti`) in tensor slot `slot`; the result is
/// normal-ordered in `target`.
Element applyMap(const GenMap& map, const Algebra& target, const Element& x, bool anti = false, int slot = 0);

}  // namespace qpoincare
