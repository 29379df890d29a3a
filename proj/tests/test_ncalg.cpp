#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qpoincare/verify.hpp"
#include "support.hpp"

using namespace qpoincare;
using namespace testing;

namespace {

constexpr int M1 = 0, M2 = 1, M3 = 2, N1 = 3, N3 = 5;
constexpr int J3 = 2, K3 = 5;

std::shared_ptr<const Presentation> kappaNew(const MetricSpec& m = MetricSpec::generic()) {
  return buildPresentation(PresentationKind::KappaNew, m);
}

std::shared_ptr<const Presentation> nullPlaneOverlaid() {
  const Overlay o = loadOverlay(std::string(QP_SOURCE_DIR) + "/overlays/null-plane.overlay");
  return std::make_shared<const Presentation>(
      applyOverlay(o, presentationData(PresentationKind::NullPlane, MetricSpec::nullPlane())));
}

std::vector<std::shared_ptr<const Presentation>> allPresentations() {
  return {buildPresentation(PresentationKind::KappaOriginal, MetricSpec::generic()), kappaNew(), nullPlaneOverlaid()};
}

Element L(int l, const Poly& c = Poly(1)) { return letterElement(l, c); }
Element U(const Poly& c) { return unitElement(c); }

Poly sinhOverZ() { return (Z(-1) * (E(1) - E(-1))).scaled(Rational(1, 2)); }

}  // namespace

TEST_CASE("normal_order examples") {
  auto p = kappaNew();
  const Algebra& a = p->algebra();
  const std::vector<Word> w1{Word{M2, M1}};
  const Element expected = a.multiply(L(M1), L(M2)) - (L(M1, G(1, 3)) + L(M2, G(2, 3)) + L(M3, G(3, 3))).times(I);
  CHECK(a.normalOrder(w1) == expected);
  CHECK(a.multiply(L(M1), L(M2)).terms().size() == 1);

  const std::vector<Word> w2{Word{P(0), M1}};
  CHECK(a.normalOrder(w2) == L(M1, P(0)));

  const std::vector<Word> w3{Word{P(0), N1}};
  const Poly rest = -(I * Z(-1) * G(0, 1) * (E(1) - E(-1))).scaled(Rational(1, 2)) -
                    I * (G(1, 1) * P(1) + G(1, 2) * P(2) + G(1, 3) * P(3));
  CHECK(a.normalOrder(w3) == L(N1, P(0)) + U(rest));
}

TEST_CASE("multiply examples") {
  auto p = kappaNew();
  const Algebra& a = p->algebra();
  Rng rng(21);
  const Element x = rng.element();
  CHECK(a.multiply(U(1), x) == x);
  CHECK(a.multiply(L(N1, P(0)), U(E())) == L(N1, P(0) * E()));
}

TEST_CASE("commutator examples") {
  auto p = kappaNew();
  CHECK(p->algebra().commutator(U(P(1)), U(P(2))).isZero());

  auto pn = kappaNew(MetricSpec::nullPlane());
  CHECK(pn->algebra().commutator(L(N3), U(P(0))) == U(I * sinhOverZ()));

  auto np = buildPresentation(PresentationKind::NullPlane, MetricSpec::nullPlane());
  CHECK(np->algebra().commutator(L(K3), U(P(0))) == U(sinhOverZ()));
}

TEST_CASE("conj_exp examples and errors") {
  auto p = kappaNew();
  const Algebra& a = p->algebra();
  const Poly alpha = (Z() * P(0)).scaled(3);
  const Poly tail = -(I * G(0, 1) * (E(1) - E(-1))).scaled(Rational(3, 2)) -
                    (I * Z() * (G(1, 1) * P(1) + G(1, 2) * P(2) + G(1, 3) * P(3))).scaled(3);
  CHECK(a.conjExp(alpha, L(N1)) == L(N1) + U(tail));
  CHECK(a.conjExp(alpha, U(P(1))) == U(P(1)));
  CHECK(a.conjExp(alpha, U(E())) == U(E()));
  CHECK_THROWS_AS(a.conjExp(P(1), L(N1)), BadExponent);
  CHECK_THROWS_AS(a.conjExp(alpha, L(N1), 1), NonTerminating);
}

TEST_CASE("apply_map examples") {
  const PresentationMap bc = buildMap("basis-change", MetricSpec::generic());
  CHECK(bc.apply(U(P(1))) == U(-P(1) * E()));
  CHECK(bc.apply(L(M1)) == L(M1));

  const PresentationMap iso = buildMap("null-iso", MetricSpec::generic());
  CHECK(iso.apply(L(J3)) == L(M3, -I));
  const PresentationMap dict = buildMap("null-dict", MetricSpec::generic());
  CHECK(dict.apply(L(J3)) == L(M3, -I));
}

TEST_CASE("anti-map reverses products") {
  auto p = kappaNew();
  const GenMap s = p->hopf().antipodeMap();
  const Element m12 = p->algebra().multiply(L(M1), L(M2));
  const Element expected = p->algebra().multiply(
      applyMap(s, p->algebra(), L(M2)), applyMap(s, p->algebra(), L(M1)));
  CHECK(applyMap(s, p->algebra(), m12, true) == expected);
}

TEST_CASE("jacobi examples agree with the oracle") {
  auto p = kappaNew();
  const Algebra& a = p->algebra();
  const auto m = [](int l) { return Generator::letter(l); };
  CHECK(a.jacobi(m(M1), m(M2), m(M3)).isZero());
  CHECK(a.jacobi(m(N1), m(N1 + 1), Generator::groupLike()).isZero());
  CHECK(a.jacobi(Generator::momentum(1), Generator::momentum(2), m(N1)).isZero());
  CHECK(oracleJacobi(a.table(), m(M1), m(M2), m(M3)).isZero());
  CHECK(oracleJacobi(a.table(), m(N1), m(N1 + 1), Generator::groupLike()).isZero());

  // As printed, the null-plane table fails on (E1, E2, F1). The table is not
  // confluent there, so the two rewriting strategies need not agree on the residual.
  auto np = buildPresentation(PresentationKind::NullPlane, MetricSpec::nullPlane());
  CHECK_FALSE(np->algebra().jacobi(m(0), m(1), m(3)).isZero());
  CHECK(nullPlaneOverlaid()->algebra().jacobi(m(0), m(1), m(3)).isZero());
  CHECK(oracleJacobi(nullPlaneOverlaid()->algebra().table(), m(0), m(1), m(3)).isZero());
}

TEST_CASE("normal form matches the naive rewriting oracle") {
  Rng rng(22);
  for (const auto& p : allPresentations()) {
    const Algebra& a = p->algebra();
    for (int n = 0; n < 200; ++n) {
      std::vector<Word> ws{rng.word(4), rng.word(3)};
      CHECK(a.normalOrder(ws) == oracleNormalOrder(a.table(), ws));
    }
  }
}

TEST_CASE("normal_order is idempotent") {
  Rng rng(23);
  for (const auto& p : allPresentations()) {
    const Algebra& a = p->algebra();
    for (int n = 0; n < 200; ++n) {
      const std::vector<Word> ws{rng.word(3), rng.word(3)};
      const Element once = a.normalOrder(ws);
      const auto again = wordsOf(once);
      CHECK(a.normalOrder(again) == once);
    }
  }
}

TEST_CASE("multiplication is associative") {
  Rng rng(24);
  for (const auto& p : allPresentations()) {
    const Algebra& a = p->algebra();
    for (int n = 0; n < 200; ++n) {
      const Element x = rng.element(2, 2), y = rng.element(2, 2), w = rng.element(2, 2);
      CHECK(a.multiply(a.multiply(x, y), w) == a.multiply(x, a.multiply(y, w)));
    }
  }
}

TEST_CASE("commutator is bilinear, antisymmetric and Leibniz") {
  Rng rng(25);
  for (const auto& p : allPresentations()) {
    const Algebra& a = p->algebra();
    for (int n = 0; n < 70; ++n) {
      const Element x = rng.element(2, 2), y = rng.element(2, 2), w = rng.element(2, 2);
      const Gaussian s = rng.scalar();
      CHECK(a.commutator(x, y + w.times(s)) == a.commutator(x, y) + a.commutator(x, w).times(s));
      CHECK(a.commutator(x, y) == -a.commutator(y, x));
      CHECK(a.commutator(x, a.multiply(y, w)) ==
            a.multiply(a.commutator(x, y), w) + a.multiply(y, a.commutator(x, w)));
    }
  }
}

TEST_CASE("conjugation is an automorphism with inverse") {
  Rng rng(26);
  for (const auto& p : allPresentations()) {
    const Algebra& a = p->algebra();
    const Poly alpha = (Z() * P(0)).scaled(3);
    for (int n = 0; n < 70; ++n) {
      const Element x = rng.element(2, 2), y = rng.element(2, 2);
      CHECK(a.conjExp(alpha, a.multiply(x, y)) == a.multiply(a.conjExp(alpha, x), a.conjExp(alpha, y)));
      CHECK(a.conjExp(alpha, a.conjExp(-alpha, x)) == x);
    }
  }
}

TEST_CASE("tables reject letter degree above one") {
  RelationTable t = kappaNew()->data().relations;
  t.brackets[1][0] = kappaNew()->algebra().multiply(L(M1), L(M2));
  CHECK_THROWS_AS(t.validate(), InvalidTable);
}
