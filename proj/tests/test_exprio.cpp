#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "support.hpp"

using namespace qpoincare;
using namespace testing;

namespace {

constexpr int M1 = 0, M2 = 1, M3 = 2;

Element L(int l, const Poly& c = Poly(1)) { return letterElement(l, c); }

std::shared_ptr<const Presentation> kappaNew() {
  return buildPresentation(PresentationKind::KappaNew, MetricSpec::generic());
}

struct Probe {
  const char* src;
  bool parseError;  // else ElaborationError
  std::size_t column;
};

}  // namespace

TEST_CASE("parse examples") {
  auto p = kappaNew();
  CHECK(parseScalar("sinh(z*P0)/z") == (Z(-1) * (E(1) - E(-1))).scaled(Rational(1, 2)));
  CHECK(parseScalar("1/(2*z)") == enc::kappa());
  CHECK(parseScalar("cosh(2*z*P0) - exp(-z*P0)") == enc::cosh(2) - E(-1));
  CHECK(parseScalar("(2 + 3*i)/3") == Poly(Gaussian(Rational(2, 3), Rational(1))));

  // [M1, M2] = -i eps^{12k} g^{ks} M^s with eps^{123} = -1.
  const Element m12 = parseElement("[M1, M2]", *p);
  CHECK(m12 == (L(M1, G(1, 3)) + L(M2, G(2, 3)) + L(M3, G(3, 3))).times(I));
  CHECK(parseElement("[M2, M1]", *p) == parseElement("-i*(g13*M1 + g23*M2 + g33*M3)", *p));

  CHECK_THROWS_AS(parse("exp(P1)", p.get()), ElaborationError);
  CHECK(std::holds_alternative<TensorElement>(parse("M1 (x) M2", p.get())));
  CHECK(std::holds_alternative<Tensor3Element>(parse("M1 (x) 1 (x) E", p.get())));
  CHECK(std::holds_alternative<Poly>(parse("z*P0", p.get())));
}

TEST_CASE("null-plane aliases") {
  auto np = buildPresentation(PresentationKind::NullPlane, MetricSpec::nullPlane());
  CHECK(parseScalar("P+ + P-", np.get()) == P(0) + P(3));
  CHECK(parseElement("[K3, P+]", *np) == unitElement(Z(-1) * enc::sinh(1)));
  CHECK(format(parseElement("[K3, P+]", *np), *np) == "z^-1*sinh(z*P+)");
  CHECK_THROWS_AS(parse("P+", kappaNew().get()), ParseError);
  CHECK(*np->wConstant() == parseElement("W", *np));
}

TEST_CASE("format examples") {
  auto p = kappaNew();
  CHECK(format(Element(), *p) == "0");
  CHECK(format(Poly()) == "0");
  const Element s = antipode(p->context(), L(3));
  const Element printed = parseElement("-N1 + 3*i*g01*sinh(z*P0) + 3*i*z*(g11*P1+g12*P2+g13*P3)", *p);
  CHECK(s == printed);
  CHECK(format(s, *p) == format(printed, *p));
  CHECK(format(s, *p) == "3*i*g01*sinh(z*P0) + 3*i*z*g13*P3 + 3*i*z*g12*P2 + 3*i*z*g11*P1 - N1");
  CHECK(format(parseTensor("M1 (x) E", *p), *p) == "M1 (x) E");
}

TEST_CASE("parse inverts format on random objects") {
  auto p = kappaNew();
  auto np = buildPresentation(PresentationKind::NullPlane, MetricSpec::nullPlane());
  Rng rng(51);
  for (int n = 0; n < 250; ++n) {
    const auto& ctx = n % 2 ? *np : *p;
    const Element x = rng.element(4, 3, 3);
    CHECK(parseElement(format(x, ctx), ctx) == x);
    const Poly c = rng.coefficient(4, 3);
    CHECK(parseScalar(format(c, &ctx), &ctx) == c);
    const TensorElement t = tensorProduct(rng.element(2, 2), rng.element(2, 2)) +
                            coproduct(ctx.context(), rng.element(1, 2, 1));
    CHECK(parseTensor(format(t, ctx), ctx) == t);
  }
  const Tensor3Element r = coassociativityResidual(p->context(), Generator::letter(3));
  CHECK(parseTensor3(format(r, *p), *p) == r);
  Tensor3Element t3;
  t3.add({Monomial::letter(0), Monomial{}, Monomial::letter(5)}, E(2, 0) * P(1, 2) * Z());
  CHECK(parseTensor3(format(t3, *p), *p) == t3);
}

TEST_CASE("format is injective") {
  auto p = kappaNew();
  Rng rng(52);
  std::map<std::string, Element> seen;
  for (int n = 0; n < 400; ++n) {
    const Element x = rng.element(2, 2, 1);
    auto [it, fresh] = seen.emplace(format(x, *p), x);
    if (!fresh) CHECK(it->second == x);
  }
  CHECK(seen.size() > 300);
}

TEST_CASE("negative corpus") {
  auto p = kappaNew();
  const Probe probes[] = {
      {"exp(P1)", false, 5},     {"[M1, M2", true, 8},      {"Q9", true, 1},          {"1/P1", false, 3},
      {"(M1", true, 4},          {"M1 +", true, 5},         {"sinh(z*P1)", false, 6}, {"cosh(P0)", false, 6},
      {"M1 ** 2", true, 5},      {")", true, 1},            {"[M1 M2]", true, 5},     {"M1 (x)", true, 7},
      {"g44", true, 1},          {"1/0", false, 3},         {"3.5", true, 2},         {"sinh(z*P0", true, 10},
      {"2^M1", true, 3},         {"", true, 1},             {"1/(1+z)", false, 3},    {"[M1, M2]]", true, 9},
      {"M1 $ M2", true, 4},      {"P+ * M1", true, 1},      {"M1^-1", false, 1},      {"exp(z*P0/2)", false, 5},
  };
  for (const auto& probe : probes) {
    CAPTURE(probe.src);
    if (probe.parseError) {
      try {
        parse(probe.src, p.get());
        FAIL("accepted");
      } catch (const ParseError& e) {
        CHECK(e.line() == 1);
        CHECK(e.column() == probe.column);
      }
    } else {
      try {
        parse(probe.src, p.get());
        FAIL("accepted");
      } catch (const ElaborationError& e) {
        CHECK(e.column() == probe.column);
      }
    }
  }
  try {
    parse("[M1, M2", p.get());
  } catch (const ParseError& e) {
    CHECK(e.expected() == std::vector<std::string>{"']'"});
  }
  CHECK_THROWS_AS(parse("M1", nullptr), ParseError);
}
