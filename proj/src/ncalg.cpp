#include "qpoincare/ncalg.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace qpoincare {

int Monomial::degree() const { return std::accumulate(exp.begin(), exp.end(), 0); }

int Monomial::first() const {
  for (int l = 0; l < kLetters; ++l)
    if (exp[static_cast<std::size_t>(l)] != 0) return l;
  return -1;
}

Monomial Monomial::withoutFirst() const {
  Monomial r = *this;
  int f = first();
  if (f >= 0) --r.exp[static_cast<std::size_t>(f)];
  return r;
}

Monomial Monomial::prepended(int l) const {
  Monomial r = *this;
  if (r.exp[static_cast<std::size_t>(l)] == 255) throw ArithmeticOverflow("letter exponent overflow");
  ++r.exp[static_cast<std::size_t>(l)];
  return r;
}

std::vector<int> Monomial::word() const {
  std::vector<int> w;
  for (int l = 0; l < kLetters; ++l)
    for (int k = 0; k < exp[static_cast<std::size_t>(l)]; ++k) w.push_back(l);
  return w;
}

std::uint64_t Monomial::key() const {
  std::uint64_t k = 0;
  for (auto e : exp) k = (k << 8) | e;
  return k;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  // within a degree, more of a smaller letter comes first
  return b.exp <=> a.exp;
}

int letterDegree(const Element& x) {
  int d = 0;
  for (const auto& [m, c] : x.terms()) d = std::max(d, m.degree());
  return d;
}

Poly scalarPart(const Element& x) { return x.coeff(Monomial{}); }

bool isScalar(const Element& x) {
  return std::all_of(x.terms().begin(), x.terms().end(), [](const auto& t) { return t.first.isUnit(); });
}

Element RelationTable::bracket(int a, int b) const {
  if (a == b) return {};
  if (a > b) return brackets[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  return -brackets[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)];
}

namespace {

bool singleCopy(const Poly& c) { return !c.usesSlot(1) && !c.usesSlot(2); }

}  // namespace

void RelationTable::validate() const {
  if (letterNames.size() != kLetters) throw InvalidTable("a presentation needs exactly six letters");
  for (int a = 0; a < kLetters; ++a) {
    for (int b = 0; b < a; ++b) {
      const Element& br = brackets[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      if (letterDegree(br) > 1)
        throw InvalidTable("[" + letterNames[static_cast<std::size_t>(a)] + ", " +
                           letterNames[static_cast<std::size_t>(b)] + "] has letter degree above one");
      for (const auto& [m, c] : br.terms())
        if (!singleCopy(c)) throw InvalidTable("bracket coefficient uses tensor slots");
    }
    for (const auto& d : derivations[static_cast<std::size_t>(a)])
      if (!singleCopy(d)) throw InvalidTable("derivation value uses tensor slots");
  }
}

Element Generator::element() const {
  switch (kind) {
    case Kind::Letter:
      return letterElement(index);
    case Kind::Momentum:
      return unitElement(Poly::variable(var::P(index)));
    case Kind::GroupLike:
      return unitElement(Poly::variable(var::E()));
  }
  return {};
}

namespace {

// Collects coefficients per monomial. Each monomial keeps a binary ladder of
// partial sums, so merges stay balanced without holding every summand.
class Sum {
 public:
  void add(const Element& x) {
    for (const auto& [m, c] : x.terms()) push(m, Poly(c));
  }
  void add(const Element& x, const Poly& scale) {
    if (scale.isZero()) return;
    if (scale.isConstant()) {
      const Gaussian k = scale.constantTerm();
      for (const auto& [m, c] : x.terms()) push(m, c.scaled(k));
      return;
    }
    for (const auto& [m, c] : x.terms()) push(m, c * scale);
  }
  void subtract(const Element& x) {
    for (const auto& [m, c] : x.terms()) push(m, -c);
  }
  Element finish() {
    Element r;
    for (auto& [m, ladder] : parts_) {
      Poly total;
      for (auto& p : ladder) total += p;
      r.add(m, total);
    }
    return r;
  }

 private:
  void push(const Monomial& m, Poly p) {
    auto& ladder = parts_[m];
    for (auto& slot : ladder) {
      if (slot.isZero()) {
        slot = std::move(p);
        return;
      }
      p += slot;
      slot = Poly();
    }
    ladder.push_back(std::move(p));
  }
  std::map<Monomial, std::vector<Poly>> parts_;
};

}  // namespace

Algebra::Algebra(RelationTable table) : table_(std::move(table)) {
  table_.validate();
  for (int s = 0; s < kSlots; ++s) {
    for (int a = 0; a < kLetters; ++a) {
      auto ua = static_cast<std::size_t>(a);
      for (int b = 0; b < a; ++b) {
        slotBrackets_[static_cast<std::size_t>(s)][ua][static_cast<std::size_t>(b)] =
            table_.brackets[ua][static_cast<std::size_t>(b)].mapCoefficients(
                [s](const Poly& c) { return embed(c, s); });
      }
      for (int mu = 0; mu < 4; ++mu)
        slotDerivations_[static_cast<std::size_t>(s)][ua][static_cast<std::size_t>(mu)] =
            embed(table_.derivations[ua][static_cast<std::size_t>(mu)], s);
    }
  }
}

Poly Algebra::derive(int letter, const Poly& c, int slot) const {
  if (!c.usesSlot(slot)) return {};
  const auto& d = slotDerivations_[static_cast<std::size_t>(slot)][static_cast<std::size_t>(letter)];
  Poly r;
  for (int mu = 1; mu < 4; ++mu) {
    if (d[static_cast<std::size_t>(mu)].isZero()) continue;
    Poly dc = c.derivative(var::P(mu, slot));
    if (!dc.isZero()) r += dc * d[static_cast<std::size_t>(mu)];
  }
  if (!d[0].isZero()) {
    Poly dc = d_p0(c, slot);
    if (!dc.isZero()) r += dc * d[0];
  }
  return r;
}

Element Algebra::coeffTimesMonomial(const Poly& c, const Monomial& m, int slot) const {
  if (c.isZero()) return {};
  if (m.isUnit() || !c.usesSlot(slot)) return Element(m, c);
  const int b = m.first();
  const Monomial rest = m.withoutFirst();
  // c b = b c - [b, c]
  Element result = leftMultiplyLetter(b, coeffTimesMonomial(c, rest, slot), slot);
  Poly d = derive(b, c, slot);
  if (d.isZero()) return result;
  Sum sum;
  sum.add(result);
  sum.subtract(coeffTimesMonomial(d, rest, slot));
  return sum.finish();
}

Element Algebra::letterTimesMonomial(int letter, const Monomial& m, int slot) const {
  if (m.isUnit() || letter <= m.first()) return Element(m.prepended(letter), Poly(1));
  return reorder(letter, m, slot);
}

const Element& Algebra::reorder(int letter, const Monomial& m, int slot) const {
  auto& cache = cache_[static_cast<std::size_t>(slot)];
  const std::uint64_t key = m.key() * 8 + static_cast<std::uint64_t>(letter);
  {
    std::lock_guard lock(cacheMutex_);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const int b = m.first();
  const Monomial rest = m.withoutFirst();
  // l b rest = b (l rest) + [l, b] rest
  Sum sum;
  sum.add(leftMultiplyLetter(b, letterTimesMonomial(letter, rest, slot), slot));
  const Element& br =
      slotBrackets_[static_cast<std::size_t>(slot)][static_cast<std::size_t>(letter)][static_cast<std::size_t>(b)];
  for (const auto& [n, c] : br.terms()) {
    const Element tail = coeffTimesMonomial(c, rest, slot);
    sum.add(n.isUnit() ? tail : leftMultiplyLetter(n.first(), tail, slot));
  }
  Element result = sum.finish();
  std::lock_guard lock(cacheMutex_);
  return cache.emplace(key, std::move(result)).first->second;
}

Element Algebra::leftMultiplyLetter(int letter, const Element& x, int slot) const {
  Sum sum;
  for (const auto& [m, c] : x.terms()) {
    if (m.isUnit() || letter <= m.first())
      sum.add(Element(m.prepended(letter), c));
    else
      sum.add(reorder(letter, m, slot), c);
  }
  return sum.finish();
}

Element Algebra::leftMultiplyCoeff(const Poly& c, const Element& x, int slot) const {
  if (!c.usesSlot(slot)) return x.times(c);
  Sum sum;
  for (const auto& [m, cm] : x.terms()) sum.add(coeffTimesMonomial(c, m, slot), cm);
  return sum.finish();
}

const Element& Algebra::monomialProduct(const Monomial& m, const Monomial& n, int slot) const {
  auto& cache = productCache_[static_cast<std::size_t>(slot)];
  const std::pair key{m.key(), n.key()};
  {
    std::lock_guard lock(cacheMutex_);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const auto w = m.word();
  Element r(n, Poly(1));
  for (auto it = w.rbegin(); it != w.rend(); ++it) r = leftMultiplyLetter(*it, r, slot);
  std::lock_guard lock(cacheMutex_);
  return cache.emplace(key, std::move(r)).first->second;
}

Element Algebra::leftMultiplyMonomial(const Monomial& m, const Element& x, int slot) const {
  if (m.isUnit()) return x;
  Sum sum;
  for (const auto& [n, c] : x.terms()) sum.add(monomialProduct(m, n, slot), c);
  return sum.finish();
}

Element Algebra::multiply(const Element& a, const Element& b, int slot) const {
  Sum sum;
  for (const auto& [m, c] : a.terms()) sum.add(leftMultiplyMonomial(m, leftMultiplyCoeff(c, b, slot), slot));
  return sum.finish();
}

Element Algebra::commutator(const Element& a, const Element& b, int slot) const {
  return multiply(a, b, slot) - multiply(b, a, slot);
}

Element Algebra::normalOrder(std::span<const Word> words) const {
  Element total;
  for (const Word& w : words) {
    Element x = unitElement(Poly(1));
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      if (const int* l = std::get_if<int>(&*it))
        x = leftMultiplyLetter(*l, x);
      else
        x = leftMultiplyCoeff(std::get<Poly>(*it), x);
    }
    total += x;
  }
  return total;
}

Element Algebra::conjExp(const Poly& alpha, const Element& x, int maxTerms) const {
  bool ok = alpha.isMonomial() && alpha.dependsOnly({var::z, var::P(0)}) && alpha.terms()[0].first[var::z] == 1 &&
            alpha.terms()[0].first[var::P(0)] == 1 && alpha.terms()[0].second.isReal();
  if (!ok) throw BadExponent("conjugation exponent must be r*z*P0 with r rational");
  Element result = x;
  Element term = x;
  for (int n = 1;; ++n) {
    if (n > maxTerms) throw NonTerminating("ad-series did not terminate");
    term = (leftMultiplyCoeff(alpha, term) - term.times(alpha)).times(Poly(Gaussian(Rational(1, n))));
    if (term.isZero()) break;
    result += term;
  }
  return result;
}

Element Algebra::jacobi(const Generator& a, const Generator& b, const Generator& c) const {
  const Element x = a.element(), y = b.element(), w = c.element();
  return commutator(commutator(x, y), w) + commutator(commutator(y, w), x) + commutator(commutator(w, x), y);
}

Element applyMap(const GenMap& map, const Algebra& target, const Element& x, bool anti, int slot) {
  std::vector<Element> images;
  images.reserve(map.letterImages.size());
  for (const auto& img : map.letterImages)
    images.push_back(img.mapCoefficients([slot](const Poly& c) { return embed(c, slot); }));
  const Substitution sigma = map.sigma.inSlot(slot);

  std::map<Monomial, Element> memo;
  auto imageOf = [&](const Monomial& m) -> const Element& {
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
    const auto w = m.word();
    Element y = unitElement(Poly(1));
    if (anti) {
      for (int l : w) y = target.multiply(images[static_cast<std::size_t>(l)], y, slot);
    } else {
      for (auto r = w.rbegin(); r != w.rend(); ++r) y = target.multiply(images[static_cast<std::size_t>(*r)], y, slot);
    }
    return memo.emplace(m, std::move(y)).first->second;
  };

  Element result;
  for (const auto& [m, c] : x.terms()) {
    Poly sc = c.substitute(sigma);
    if (anti)
      result += target.leftMultiplyCoeff(sc, imageOf(m), slot);
    else
      result += imageOf(m).times(sc);
  }
  return result;
}

}  // namespace qpoincare
