#pragma once

// Shared test helpers: seeded random generators and a naive word-rewriting
// normal-ordering oracle that shares no code with Algebra.

#include <random>
#include <vector>

#include "qpoincare/exprio.hpp"
#include "qpoincare/hopf.hpp"
#include "qpoincare/presentations.hpp"

namespace testing {

using namespace qpoincare;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  bool coin() { return uniform(0, 1) == 1; }

  Gaussian scalar() {
    Rational re(uniform(-5, 5), uniform(1, 3));
    Rational im = coin() ? Rational(0) : Rational(uniform(-3, 3), uniform(1, 2));
    if (re.isZero() && im.isZero()) re = Rational(1);
    return Gaussian(re, im);
  }

  /// Slot-0 coefficient of degree <= maxDegree in momenta and metric entries.
  Poly coefficient(int maxTerms = 3, int maxDegree = 2, bool metric = true) {
    Poly p;
    const int n = uniform(1, maxTerms);
    for (int t = 0; t < n; ++t) {
      Exponent e;
      // Degree counts momenta and metric entries; z and E are Laurent units.
      e[var::z] = uniform(-2, 2);
      const int deg = uniform(0, maxDegree);
      for (int d = 0; d < deg; ++d) {
        if (metric && coin())
          ++e[var::g(uniform(0, 3), uniform(0, 3))];
        else
          ++e[var::P(uniform(0, 3))];
      }
      e[var::E()] = uniform(-2, 2);
      p += Poly::monomial(e, scalar());
    }
    return p;
  }

  Monomial monomial(int maxDegree = 3) {
    Monomial m;
    const int deg = uniform(0, maxDegree);
    for (int d = 0; d < deg; ++d) ++m.exp[static_cast<std::size_t>(uniform(0, kLetters - 1))];
    return m;
  }

  Element element(int maxTerms = 3, int maxLetterDegree = 3, int maxCoeffDegree = 2) {
    Element x;
    const int n = uniform(1, maxTerms);
    for (int t = 0; t < n; ++t) x.add(monomial(maxLetterDegree), coefficient(2, maxCoeffDegree));
    return x;
  }

  /// Unordered word with interleaved coefficients.
  Word word(int maxLetters = 3, int maxCoeffDegree = 2) {
    Word w;
    const int n = uniform(0, maxLetters);
    for (int k = 0; k < n; ++k) {
      if (coin()) w.emplace_back(coefficient(2, maxCoeffDegree));
      w.emplace_back(uniform(0, kLetters - 1));
    }
    if (coin()) w.emplace_back(coefficient(2, maxCoeffDegree));
    return w;
  }

 private:
  std::mt19937_64 gen_;
};

/// [l, c] for a single-copy coefficient, straight from partial derivatives:
/// sum_k dc/dP_k D(P_k) + (dc/dP0 + z E dc/dE) D(P0).
inline Poly oracleDerive(const RelationTable& t, int letter, const Poly& c) {
  const auto& d = t.derivations[static_cast<std::size_t>(letter)];
  Poly r;
  for (int mu = 1; mu < 4; ++mu) r += c.derivative(var::P(mu)) * d[static_cast<std::size_t>(mu)];
  const Poly dp0 = c.derivative(var::P(0)) +
                   Poly::variable(var::z) * Poly::variable(var::E()) * c.derivative(var::E());
  return r + dp0 * d[0];
}

/// Leftmost rewriting of explicit words until every word is sorted letters
/// followed by at most one coefficient.
inline Element oracleNormalOrder(const RelationTable& t, std::vector<Word> pending) {
  Element out;
  while (!pending.empty()) {
    Word w = std::move(pending.back());
    pending.pop_back();
    bool rewritten = false;
    for (std::size_t k = 0; k + 1 < w.size() && !rewritten; ++k) {
      const int* a = std::get_if<int>(&w[k]);
      const int* b = std::get_if<int>(&w[k + 1]);
      if (!a && !b) {
        Word n(w.begin(), w.begin() + static_cast<long>(k));
        n.emplace_back(std::get<Poly>(w[k]) * std::get<Poly>(w[k + 1]));
        n.insert(n.end(), w.begin() + static_cast<long>(k) + 2, w.end());
        pending.push_back(std::move(n));
        rewritten = true;
      } else if (!a && b) {
        // c l = l c - [l, c]
        const Poly& c = std::get<Poly>(w[k]);
        Word swapped = w;
        std::swap(swapped[k], swapped[k + 1]);
        pending.push_back(std::move(swapped));
        Poly d = oracleDerive(t, *b, c);
        if (!d.isZero()) {
          Word n(w.begin(), w.begin() + static_cast<long>(k));
          n.emplace_back(-d);
          n.insert(n.end(), w.begin() + static_cast<long>(k) + 2, w.end());
          pending.push_back(std::move(n));
        }
        rewritten = true;
      } else if (a && b && *a > *b) {
        // a b = b a + [a, b]
        Word swapped = w;
        std::swap(swapped[k], swapped[k + 1]);
        pending.push_back(std::move(swapped));
        const Element br = t.bracket(*a, *b);
        for (const auto& [m, c] : br.terms()) {
          Word n(w.begin(), w.begin() + static_cast<long>(k));
          for (int l : m.word()) n.emplace_back(l);
          n.emplace_back(c);
          n.insert(n.end(), w.begin() + static_cast<long>(k) + 2, w.end());
          pending.push_back(std::move(n));
        }
        rewritten = true;
      }
    }
    if (rewritten) continue;
    Monomial m;
    Poly c(1);
    for (const auto& f : w) {
      if (const int* l = std::get_if<int>(&f))
        ++m.exp[static_cast<std::size_t>(*l)];
      else
        c = c * std::get<Poly>(f);
    }
    out.add(m, c);
  }
  return out;
}

/// Words of an element (letters then coefficient per term).
inline std::vector<Word> wordsOf(const Element& x) {
  std::vector<Word> ws;
  for (const auto& [m, c] : x.terms()) {
    Word w;
    for (int l : m.word()) w.emplace_back(l);
    w.emplace_back(c);
    ws.push_back(std::move(w));
  }
  return ws;
}

/// Concatenations of the words of x and y.
inline std::vector<Word> productWords(const std::vector<Word>& x, const std::vector<Word>& y) {
  std::vector<Word> out;
  for (const auto& a : x)
    for (const auto& b : y) {
      Word w = a;
      w.insert(w.end(), b.begin(), b.end());
      out.push_back(std::move(w));
    }
  return out;
}

inline std::vector<Word> negated(std::vector<Word> ws) {
  for (auto& w : ws) w.emplace_back(Poly(-1));
  return ws;
}

inline std::vector<Word> concat(std::vector<Word> a, const std::vector<Word>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

/// Words of [x, y].
inline std::vector<Word> commutatorWords(const std::vector<Word>& x, const std::vector<Word>& y) {
  return concat(productWords(x, y), negated(productWords(y, x)));
}

inline std::vector<Word> generatorWords(const Generator& g) { return wordsOf(g.element()); }

/// Jacobi residual through the oracle.
inline Element oracleJacobi(const RelationTable& t, const Generator& a, const Generator& b, const Generator& c) {
  const auto wa = generatorWords(a), wb = generatorWords(b), wc = generatorWords(c);
  auto all = concat(concat(commutatorWords(commutatorWords(wa, wb), wc), commutatorWords(commutatorWords(wb, wc), wa)),
                    commutatorWords(commutatorWords(wc, wa), wb));
  return oracleNormalOrder(t, std::move(all));
}

inline Poly P(int mu, int slot = 0) { return Poly::variable(var::P(mu, slot)); }
inline Poly E(int k = 1, int slot = 0) { return Poly::variable(var::E(slot), k); }
inline Poly Z(int k = 1) { return Poly::variable(var::z, k); }
inline Poly G(int mu, int nu) { return Poly::variable(var::g(mu, nu)); }
inline const Poly I = Poly::i();

/// Levi-Civita by counting transpositions while sorting, times the upper-index sign -1.
inline int oracleEpsilonUpper(int i, int j, int k) {
  int v[3] = {i, j, k};
  if (i == j || j == k || i == k) return 0;
  int swaps = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b + 1 < 3 - a; ++b)
      if (v[b] > v[b + 1]) {
        std::swap(v[b], v[b + 1]);
        ++swaps;
      }
  return swaps % 2 == 0 ? -1 : 1;
}

}  // namespace testing
