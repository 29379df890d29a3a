#include "qpoincare/hopf.hpp"

namespace qpoincare {

Substitution HopfTables::coproductSubstitution() const {
  Substitution s;
  for (int mu = 0; mu < 4; ++mu) s.set(var::P(mu), coproductMomenta[static_cast<std::size_t>(mu)]);
  s.set(var::E(), coproductE);
  return s;
}

Substitution HopfTables::counitSubstitution() const {
  Substitution s;
  for (int mu = 0; mu < 4; ++mu) s.set(var::P(mu), Poly());
  s.set(var::E(), Poly(1));
  return s;
}

GenMap HopfTables::antipodeMap() const {
  GenMap m;
  m.name = "antipode";
  m.letterImages.assign(antipodeLetters.begin(), antipodeLetters.end());
  for (int mu = 0; mu < 4; ++mu) m.sigma.set(var::P(mu), antipodeMomenta[static_cast<std::size_t>(mu)]);
  m.sigma.set(var::E(), antipodeE);
  return m;
}

void HopfTables::validate() const {
  const Poly primitive = Poly::variable(var::P(0, 0)) + Poly::variable(var::P(0, 1));
  if (coproductMomenta[0] != primitive) return;
  if (coproductE != Poly::variable(var::E(0)) * Poly::variable(var::E(1)))
    throw InvalidTable("Delta(E) must be E (x) E when Delta(P0) is primitive");
  if (antipodeE != Poly::variable(var::E(), -1)) throw InvalidTable("S(E) must be E^-1 when Delta(P0) is primitive");
  if (antipodeMomenta[0] != -Poly::variable(var::P(0))) throw InvalidTable("S(P0) must be -P0");
  for (const auto& c : coproductMomenta)
    if (c.usesSlot(2)) throw InvalidTable("coproduct of a momentum uses a third slot");
}

template <std::size_t N>
LinearCombination<std::array<Monomial, N>> tensorMultiply(const Algebra& alg,
                                                          const LinearCombination<std::array<Monomial, N>>& a,
                                                          const LinearCombination<std::array<Monomial, N>>& b) {
  using Keys = std::array<Monomial, N>;
  using Result = LinearCombination<Keys>;
  Result result;
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      // Move ca to the right of kb one slot at a time.
      std::vector<std::pair<Keys, Poly>> states{{Keys{}, ca}};
      for (std::size_t s = 0; s < N; ++s) {
        std::vector<std::pair<Keys, Poly>> next;
        for (const auto& [keys, c] : states) {
          Element moved = alg.leftMultiplyCoeff(c, Element(kb[s], Poly(1)), static_cast<int>(s));
          for (const auto& [m, cm] : moved.terms()) {
            Keys k2 = keys;
            k2[s] = m;
            next.emplace_back(k2, cm);
          }
        }
        states = std::move(next);
      }
      for (const auto& [keys, c] : states) {
        Result acc(Keys{}, c * cb);
        for (std::size_t s = 0; s < N; ++s) {
          if (ka[s].isUnit()) {
            Result next;
            for (const auto& [k, v] : acc.terms()) {
              Keys k2 = k;
              k2[s] = keys[s];
              next.add(k2, v);
            }
            acc = std::move(next);
            continue;
          }
          Element prod = alg.leftMultiplyMonomial(ka[s], Element(keys[s], Poly(1)), static_cast<int>(s));
          Result next;
          for (const auto& [k, v] : acc.terms())
            for (const auto& [m, cm] : prod.terms()) {
              Keys k2 = k;
              k2[s] = m;
              next.add(k2, v * cm);
            }
          acc = std::move(next);
        }
        result += acc;
      }
    }
  }
  return result;
}

template TensorElement tensorMultiply<2>(const Algebra&, const TensorElement&, const TensorElement&);
template Tensor3Element tensorMultiply<3>(const Algebra&, const Tensor3Element&, const Tensor3Element&);

TensorElement tensorProduct(const Element& left, const Element& right) {
  TensorElement t;
  for (const auto& [m, c] : left.terms())
    for (const auto& [n, d] : right.terms()) t.add({m, n}, c * d);
  return t;
}

TensorElement tensorCommutator(const Algebra& alg, const TensorElement& a, const TensorElement& b) {
  return tensorMultiply(alg, a, b) - tensorMultiply(alg, b, a);
}

namespace {

TensorElement coproductOfMonomial(const HopfContext& h, const Monomial& m) {
  TensorElement acc({Monomial{}, Monomial{}}, Poly(1));
  for (int l : m.word()) acc = tensorMultiply(h.algebra, acc, h.tables.coproductLetters[static_cast<std::size_t>(l)]);
  return acc;
}

// Splits a slot-0/slot-1 coefficient term into its left part (with all
// shared variables and the scalar) and its right part relocated to slot 0.
std::pair<Poly, Poly> splitTerm(const Exponent& e, const Gaussian& c) {
  Exponent left = e, right;
  for (int k = 0; k < kVarsPerSlot; ++k) {
    int v1 = var::P(0, 1) + k;
    right[var::P(0, 0) + k] = e[v1];
    left[v1] = 0;
  }
  return {Poly::monomial(left, c), Poly::monomial(right, Gaussian(1))};
}

Substitution mergeSlots(const Substitution& a, const Substitution& b, int slotOfB) {
  Substitution r = a;
  for (int v = 0; v < kNumVars; ++v)
    if (var::slotOf(v) == slotOfB && b.image(v)) r.set(v, *b.image(v));
  return r;
}

}  // namespace

TensorElement coproduct(const HopfContext& h, const Element& x) {
  const Substitution sigma = h.tables.coproductSubstitution();
  TensorElement result;
  for (const auto& [m, c] : x.terms()) result += coproductOfMonomial(h, m).times(c.substitute(sigma));
  return result;
}

Poly counit(const HopfContext& h, const Element& x) { return scalarPart(x).substitute(h.tables.counitSubstitution()); }

Element antipode(const HopfContext& h, const Element& x) {
  return applyMap(h.tables.antipodeMap(), h.algebra, x, /*anti=*/true);
}

Element multiplyAntipodeLeft(const HopfContext& h, const TensorElement& t) {
  const GenMap s = h.tables.antipodeMap();
  std::map<Monomial, Element> memo;
  Element result;
  for (const auto& [keys, c] : t.terms()) {
    auto it = memo.find(keys[0]);
    if (it == memo.end()) it = memo.emplace(keys[0], antipode(h, Element(keys[0], Poly(1)))).first;
    for (const auto& [e, a] : c.terms()) {
      auto [f, g] = splitTerm(e, a);
      Element left = h.algebra.leftMultiplyCoeff(f.substitute(s.sigma), it->second);
      result += h.algebra.multiply(left, Element(keys[1], g));
    }
  }
  return result;
}

Element multiplyAntipodeRight(const HopfContext& h, const TensorElement& t) {
  const GenMap s = h.tables.antipodeMap();
  std::map<Monomial, Element> memo;
  Element result;
  for (const auto& [keys, c] : t.terms()) {
    auto it = memo.find(keys[1]);
    if (it == memo.end()) it = memo.emplace(keys[1], antipode(h, Element(keys[1], Poly(1)))).first;
    for (const auto& [e, a] : c.terms()) {
      auto [f, g] = splitTerm(e, a);
      Element right = h.algebra.leftMultiplyCoeff(g.substitute(s.sigma), it->second);
      result += h.algebra.multiply(Element(keys[0], f), right);
    }
  }
  return result;
}

Tensor3Element coassociativityResidual(const HopfContext& h, const Generator& g) {
  const TensorElement d = coproduct(h, g.element());
  const Substitution sigma = h.tables.coproductSubstitution();

  // Delta applied to slot 1, landing in slots 1 and 2.
  Substitution sigmaRight;
  for (int mu = 0; mu < 4; ++mu)
    sigmaRight.set(var::P(mu, 1), h.tables.coproductMomenta[static_cast<std::size_t>(mu)].moveSlots({1, 2, 2}));
  sigmaRight.set(var::E(1), h.tables.coproductE.moveSlots({1, 2, 2}));

  Tensor3Element lhs, rhs;
  for (const auto& [keys, c] : d.terms()) {
    // (Delta (x) id)
    const Poly cl = c.moveSlots({0, 2, 2}).substitute(sigma);
    const TensorElement dl = coproductOfMonomial(h, keys[0]);
    for (const auto& [k, v] : dl.terms()) lhs.add({k[0], k[1], keys[1]}, v * cl);
    // (id (x) Delta)
    const Poly cr = c.substitute(sigmaRight);
    const TensorElement dr = coproductOfMonomial(h, keys[1]);
    for (const auto& [k, v] : dr.terms())
      rhs.add({keys[0], k[0], k[1]}, v.moveSlots({1, 2, 2}) * cr);
  }
  return lhs - rhs;
}

Element axiomResidual(const HopfContext& h, Axiom kind, const Generator& g) {
  const Element x = g.element();
  const TensorElement d = coproduct(h, x);
  const Substitution eps = h.tables.counitSubstitution();
  switch (kind) {
    case Axiom::CounitLeft: {
      Element r;
      for (const auto& [keys, c] : d.terms())
        if (keys[0].isUnit()) r.add(keys[1], c.substitute(eps).moveSlots({0, 0, 0}));
      return r - x;
    }
    case Axiom::CounitRight: {
      Element r;
      for (const auto& [keys, c] : d.terms())
        if (keys[1].isUnit()) r.add(keys[0], c.substitute(eps.inSlot(1)));
      return r - x;
    }
    case Axiom::AntipodeLeft:
      return multiplyAntipodeLeft(h, d) - unitElement(counit(h, x));
    case Axiom::AntipodeRight:
      return multiplyAntipodeRight(h, d) - unitElement(counit(h, x));
    case Axiom::Coassociativity:
      break;
  }
  throw std::invalid_argument("coassociativity residual lives in the tensor cube");
}

TensorElement applyMapTensor(const GenMap& map, const Algebra& target, const TensorElement& t) {
  const Substitution both = mergeSlots(map.sigma.inSlot(0), map.sigma.inSlot(1), 1);
  std::map<Monomial, Element> left, right;
  TensorElement result;
  for (const auto& [keys, c] : t.terms()) {
    auto li = left.find(keys[0]);
    if (li == left.end()) li = left.emplace(keys[0], applyMap(map, target, Element(keys[0], Poly(1)), false, 0)).first;
    auto ri = right.find(keys[1]);
    if (ri == right.end())
      ri = right.emplace(keys[1], applyMap(map, target, Element(keys[1], Poly(1)), false, 1)).first;
    result += tensorProduct(li->second, ri->second).times(c.substitute(both));
  }
  return result;
}

}  // namespace qpoincare
