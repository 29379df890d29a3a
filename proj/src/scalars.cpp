#include "qpoincare/scalars.hpp"

#include <algorithm>
#include <map>

namespace qpoincare {

bool Exponent::isOne() const {
  return std::all_of(raw.begin(), raw.end(), [](std::uint8_t x) { return x == kBias; });
}

std::size_t ExponentHash::operator()(const Exponent& x) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto v : x.raw) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

Exponent mulExp(const Exponent& a, const Exponent& b) {
  Exponent r;
  bool ok = true;
  for (std::size_t v = 0; v < kNumVars; ++v) {
    const int s = int(a.raw[v]) + int(b.raw[v]) - Exponent::kBias;
    ok &= s >= 0 && s <= 255;
    r.raw[v] = static_cast<std::uint8_t>(s);
  }
  if (!ok) throw ArithmeticOverflow("exponent overflow");
  return r;
}

}  // namespace

Poly::Poly(Gaussian c) {
  if (!c.isZero()) terms_.emplace_back(Exponent{}, c);
}

Poly Poly::variable(int v, int power) {
  if (power < 0 && !var::isLaurent(v)) throw std::domain_error("negative power of a polynomial variable");
  Exponent e;
  e[v] = power;
  return monomial(e, Gaussian(1));
}

Poly Poly::monomial(const Exponent& e, Gaussian c) {
  Poly p;
  if (!c.isZero()) p.terms_.emplace_back(e, c);
  return p;
}

Poly Poly::fromTerms(std::vector<Term> terms) {
  Poly p;
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

void Poly::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
    } else {
      if (!out.empty() && out.back().second.isZero()) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().second.isZero()) out.pop_back();
  terms_ = std::move(out);
}

bool Poly::isConstant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.isOne()); }

Gaussian Poly::constantTerm() const {
  for (const auto& [e, c] : terms_)
    if (e.isOne()) return c;
  return Gaussian();
}

bool Poly::isInvertibleMonomial() const {
  if (terms_.size() != 1) return false;
  const Exponent& e = terms_[0].first;
  for (int v = 0; v < kNumVars; ++v)
    if (e[v] != 0 && !var::isLaurent(v)) return false;
  return true;
}

bool Poly::dependsOn(int v) const {
  return std::any_of(terms_.begin(), terms_.end(), [v](const Term& t) { return t.first[v] != 0; });
}

bool Poly::dependsOnly(std::initializer_list<int> vars) const {
  for (const auto& [e, c] : terms_)
    for (int v = 0; v < kNumVars; ++v)
      if (e[v] != 0 && std::find(vars.begin(), vars.end(), v) == vars.end()) return false;
  return true;
}

bool Poly::usesSlot(int slot) const {
  for (int k = 0; k < kVarsPerSlot; ++k)
    if (dependsOn(var::P(0, slot) + k)) return true;
  return false;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  if (a.isZero()) return b;
  if (b.isZero()) return a;
  Poly r;
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  auto i = a.terms_.begin();
  auto j = b.terms_.begin();
  while (i != a.terms_.end() || j != b.terms_.end()) {
    if (j == b.terms_.end() || (i != a.terms_.end() && i->first < j->first)) {
      r.terms_.push_back(*i++);
    } else if (i == a.terms_.end() || j->first < i->first) {
      r.terms_.push_back(*j++);
    } else {
      Gaussian c = i->second + j->second;
      if (!c.isZero()) r.terms_.emplace_back(i->first, c);
      ++i;
      ++j;
    }
  }
  return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly& Poly::operator+=(const Poly& o) { return *this = *this + o; }
Poly& Poly::operator-=(const Poly& o) { return *this = *this - o; }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.isZero() || b.isZero()) return {};
  if (a.terms_.size() > b.terms_.size()) return b * a;
  if (a.terms_.size() == 1 && a.terms_[0].first.isOne()) return b.scaled(a.terms_[0].second);
  // Shifting by a monomial keeps the lexicographic order, so row k (a_k * b)
  // is already sorted; the rows are merged through a heap of row cursors.
  struct Cursor {
    Exponent e;
    std::uint32_t row;
    std::uint32_t col;
  };
  auto later = [](const Cursor& x, const Cursor& y) { return y.e < x.e; };
  std::vector<Cursor> heap;
  heap.reserve(a.terms_.size());
  for (std::uint32_t k = 0; k < a.terms_.size(); ++k) heap.push_back({mulExp(a.terms_[k].first, b.terms_[0].first), k, 0});
  std::make_heap(heap.begin(), heap.end(), later);
  Poly r;
  r.terms_.reserve(std::max(a.terms_.size(), b.terms_.size()));
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), later);
    Cursor& c = heap.back();
    const Gaussian v = a.terms_[c.row].second * b.terms_[c.col].second;
    if (!r.terms_.empty() && r.terms_.back().first == c.e) {
      r.terms_.back().second += v;
      if (r.terms_.back().second.isZero()) r.terms_.pop_back();
    } else {
      r.terms_.emplace_back(c.e, v);
    }
    if (++c.col < b.terms_.size()) {
      c.e = mulExp(a.terms_[c.row].first, b.terms_[c.col].first);
      std::push_heap(heap.begin(), heap.end(), later);
    } else {
      heap.pop_back();
    }
  }
  return r;
}

Poly Poly::scaled(const Gaussian& c) const {
  if (c.isZero()) return {};
  Poly r = *this;
  for (auto& t : r.terms_) t.second *= c;
  return r;
}

Poly Poly::inverse() const {
  if (!isInvertibleMonomial()) throw std::domain_error("coefficient is not an invertible monomial");
  Exponent e;
  for (int v = 0; v < kNumVars; ++v) e[v] = -terms_[0].first[v];
  return monomial(e, terms_[0].second.inverse());
}

Poly Poly::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  Poly result(1);
  Poly base = *this;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

Poly Poly::derivative(int v) const {
  std::vector<Term> out;
  for (const auto& [e, c] : terms_) {
    if (e[v] == 0) continue;
    Exponent d = e;
    d[v] = d[v] - 1;
    out.emplace_back(d, c * Gaussian(e[v]));
  }
  return fromTerms(std::move(out));
}

Poly Poly::substitute(const Substitution& s) const {
  std::map<std::pair<int, int>, Poly> powers;
  auto powerOf = [&](int v, int k) -> const Poly& {
    auto key = std::make_pair(v, k);
    auto it = powers.find(key);
    if (it == powers.end()) it = powers.emplace(key, s.image(v)->pow(k)).first;
    return it->second;
  };
  std::vector<Term> out;
  for (const auto& [e, c] : terms_) {
    Exponent kept;
    Poly acc(1);
    bool touched = false;
    for (int v = 0; v < kNumVars; ++v) {
      if (e[v] == 0) continue;
      if (s.image(v)) {
        acc *= powerOf(v, e[v]);
        touched = true;
      } else {
        kept[v] = e[v];
      }
    }
    if (!touched) {
      out.emplace_back(e, c);
      continue;
    }
    for (const auto& [ae, ac] : acc.terms_) out.emplace_back(mulExp(ae, kept), ac * c);
  }
  return fromTerms(std::move(out));
}

Poly Poly::moveSlots(const std::array<int, kSlots>& target) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [e, c] : terms_) {
    Exponent r = e;
    for (int s = 0; s < kSlots; ++s)
      for (int k = 0; k < kVarsPerSlot; ++k) r[var::P(0, s) + k] = 0;
    for (int s = 0; s < kSlots; ++s)
      for (int k = 0; k < kVarsPerSlot; ++k) {
        int dst = var::P(0, target[static_cast<std::size_t>(s)]) + k;
        r[dst] += e[var::P(0, s) + k];
      }
    out.emplace_back(r, c);
  }
  return fromTerms(std::move(out));
}

Poly d_p0(const Poly& c, int slot) {
  const int e = var::E(slot);
  return c.derivative(var::P(0, slot)) + c.derivative(e) * Poly::variable(var::z) * Poly::variable(e);
}

Poly embed(const Poly& c, int slot) {
  if (slot == 0) return c;
  std::array<int, kSlots> t{slot, slot, slot};
  return c.moveSlots(t);
}

Poly collapse(const Poly& c) { return c.moveSlots({0, 0, 0}); }

Substitution& Substitution::set(int v, Poly image) {
  images_[static_cast<std::size_t>(v)] = std::move(image);
  return *this;
}

bool Substitution::isIdentity() const {
  for (int v = 0; v < kNumVars; ++v)
    if (images_[static_cast<std::size_t>(v)] && *images_[static_cast<std::size_t>(v)] != Poly::variable(v))
      return false;
  return true;
}

void Substitution::validate() const {
  const auto& imgE = image(var::E());
  const auto& imgP0 = image(var::P(0));
  Poly sigmaE = imgE ? *imgE : Poly::variable(var::E());
  Poly sigmaP0 = imgP0 ? *imgP0 : Poly::variable(var::P(0));
  if (!sigmaE.isInvertibleMonomial() || sigmaE.terms()[0].first[var::E()] == 0 ||
      !sigmaE.dependsOnly({var::z, var::E()}))
    throw InvalidESubstitution("image of E must be an invertible monomial u*E^k with k != 0");
  // Supported shape sigma(P0) = a*P0 with a an integer: E must map to E^a.
  if (sigmaP0.isMonomial() && sigmaP0.dependsOnly({var::P(0)}) && sigmaP0.terms()[0].first[var::P(0)] == 1) {
    Gaussian a = sigmaP0.terms()[0].second;
    if (!a.isReal() || !a.re.isInteger())
      throw InconsistentPair("P0 scaled by a non-integer: exp(z*sigma(P0)) is not an E-monomial");
    Poly expected = Poly::variable(var::E(), static_cast<int>(a.re.num()));
    if (sigmaE != expected) throw InconsistentPair("sigma(E) must equal exp(z*sigma(P0))");
  }
}

Substitution Substitution::inSlot(int slot) const {
  Substitution r;
  for (int v = 0; v < kNumVars; ++v) {
    const auto& img = images_[static_cast<std::size_t>(v)];
    if (!img) continue;
    int dst = (var::slotOf(v) == 0) ? v + slot * kVarsPerSlot : v;
    r.set(dst, embed(*img, slot));
  }
  return r;
}

namespace enc {

Poly exp(int k, int slot) { return Poly::variable(var::E(slot), k); }
Poly sinh(int k, int slot) { return (exp(k, slot) - exp(-k, slot)).scaled(Rational(1, 2)); }
Poly cosh(int k, int slot) { return (exp(k, slot) + exp(-k, slot)).scaled(Rational(1, 2)); }
Poly kappa() { return Poly::variable(var::z, -1).scaled(Rational(1, 2)); }

}  // namespace enc

}  // namespace qpoincare
