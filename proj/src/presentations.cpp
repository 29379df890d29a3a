#include "qpoincare/presentations.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace qpoincare {

namespace {

Poly Z(int k = 1) { return Poly::variable(var::z, k); }
Poly P(int mu) { return Poly::variable(var::P(mu)); }
Poly PL(int mu) { return Poly::variable(var::P(mu, 0)); }
Poly PR(int mu) { return Poly::variable(var::P(mu, 1)); }
Poly Ex(int k = 1) { return Poly::variable(var::E(), k); }
Poly EL(int k) { return Poly::variable(var::E(0), k); }
Poly ER(int k) { return Poly::variable(var::E(1), k); }
const Poly I = Poly::i();
Poly half(const Poly& p) { return p.scaled(Rational(1, 2)); }

int delta(int a, int b) { return a == b ? 1 : 0; }

// Letter indices shared by both kappa bases.
constexpr int M(int k) { return k - 1; }
constexpr int N(int k) { return k + 2; }

// Null-plane letters.
constexpr int kE1 = 0, kE2 = 1, kJ3 = 2, kF1 = 3, kF2 = 4, kK3 = 5;

TensorElement primitive(int letter) {
  TensorElement t;
  t.add({Monomial::letter(letter), Monomial{}}, Poly(1));
  t.add({Monomial{}, Monomial::letter(letter)}, Poly(1));
  return t;
}

void addTensor(TensorElement& t, int left, int right, const Poly& c) {
  t.add({left < 0 ? Monomial{} : Monomial::letter(left), right < 0 ? Monomial{} : Monomial::letter(right)}, c);
}

Rational parseRational(const std::string& tok) {
  auto slash = tok.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      auto n = std::stoll(tok, &used);
      if (used != tok.size()) throw MetricError("bad metric entry '" + tok + "'");
      return Rational(n);
    }
    auto n = std::stoll(tok.substr(0, slash), &used);
    if (used != slash) throw MetricError("bad metric entry '" + tok + "'");
    auto d = std::stoll(tok.substr(slash + 1), &used);
    if (used != tok.size() - slash - 1 || d == 0) throw MetricError("bad metric entry '" + tok + "'");
    return Rational(n, d);
  } catch (const std::logic_error&) {
    throw MetricError("bad metric entry '" + tok + "'");
  }
}

}  // namespace

int epsilonUpper(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  // standard Levi-Civita sign of (i, j, k), then the eps^{123} = -1 convention
  int inversions = (i > j) + (i > k) + (j > k);
  return inversions % 2 == 0 ? -1 : 1;
}

// ---------------------------------------------------------------- metric

MetricSpec MetricSpec::generic() { return MetricSpec(); }

MetricSpec MetricSpec::concrete(std::string name, const Matrix& entries) {
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < a; ++b)
      if (entries[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] !=
          entries[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)])
        throw MetricError("metric is not symmetric");
  MetricSpec m;
  m.mode_ = Mode::Concrete;
  m.name_ = std::move(name);
  m.entries_ = entries;
  return m;
}

MetricSpec MetricSpec::nullPlane() {
  Matrix g{};
  g[0][3] = g[3][0] = Gaussian(1);
  g[1][1] = g[2][2] = Gaussian(-1);
  return concrete("null", g);
}

MetricSpec MetricSpec::minkowski() {
  Matrix g{};
  g[0][0] = Gaussian(1);
  g[1][1] = g[2][2] = g[3][3] = Gaussian(-1);
  return concrete("minkowski", g);
}

MetricSpec MetricSpec::fromText(const std::string& text, std::string name) {
  std::istringstream in(text);
  std::vector<std::string> tokens;
  for (std::string tok; in >> tok;) tokens.push_back(tok);
  if (tokens.size() != 16)
    throw MetricError("metric needs 16 entries, found " + std::to_string(tokens.size()));
  Matrix g{};
  for (std::size_t k = 0; k < 16; ++k) g[k / 4][k % 4] = Gaussian(parseRational(tokens[k]));
  return concrete(std::move(name), g);
}

MetricSpec MetricSpec::fromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MetricError("cannot read metric file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return fromText(buf.str(), "file:" + path);
}

MetricSpec MetricSpec::byName(const std::string& name) {
  if (name == "generic") return generic();
  if (name == "null") return nullPlane();
  if (name == "minkowski") return minkowski();
  if (name.rfind("file:", 0) == 0) return fromFile(name.substr(5));
  throw MetricError("unknown metric '" + name + "' (generic|null|minkowski|file:PATH)");
}

Poly MetricSpec::g(int mu, int nu) const {
  if (mode_ == Mode::Generic) return Poly::variable(var::g(mu, nu));
  return Poly(entries_[static_cast<std::size_t>(mu)][static_cast<std::size_t>(nu)]);
}

Gaussian MetricSpec::determinant() const {
  if (mode_ == Mode::Generic) return Gaussian();
  Matrix a = entries_;
  Gaussian det(1);
  for (std::size_t col = 0; col < 4; ++col) {
    std::size_t pivot = col;
    while (pivot < 4 && a[pivot][col].isZero()) ++pivot;
    if (pivot == 4) return Gaussian();
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < 4; ++r) {
      Gaussian f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < 4; ++c) a[r][c] = a[r][c] - f * a[col][c];
    }
  }
  return det;
}

std::optional<std::string> MetricSpec::warning() const {
  if (mode_ == Mode::Concrete && determinant().isZero()) return "metric '" + name_ + "' is degenerate";
  return std::nullopt;
}

Substitution MetricSpec::binding() const {
  Substitution s;
  if (mode_ == Mode::Generic) return s;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = mu; nu < 4; ++nu) s.set(var::g(mu, nu), g(mu, nu));
  return s;
}

// ---------------------------------------------------------------- kappa, original basis

namespace {

// M^{mu nu} in terms of letters.
Element lorentzGenerator(int mu, int nu) {
  if (mu == nu) return {};
  if (mu > 0 && nu > 0) {
    Element r;
    for (int k = 1; k <= 3; ++k)
      if (int e = epsilonUpper(mu, nu, k)) r.add(Monomial::letter(M(k)), Poly(e));
    return r;
  }
  if (nu == 0) return letterElement(N(mu));
  return -letterElement(N(nu));
}

struct TensorComponent {
  int mu, nu;
  Gaussian c;
};

// Letter as a combination of M^{mu nu}.
std::vector<TensorComponent> letterComponents(int letter) {
  std::vector<TensorComponent> out;
  if (letter >= N(1)) {
    out.push_back({letter - N(1) + 1, 0, Gaussian(1)});
    return out;
  }
  int k = letter + 1;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      if (int e = epsilonUpper(k, i, j)) out.push_back({i, j, Gaussian(Rational(e, 2))});
  return out;
}

Element lorentzBracket(const MetricSpec& g, int mu, int nu, int la, int si) {
  Element r;
  r.addScaled(lorentzGenerator(nu, la), g.g(mu, si));
  r.addScaled(lorentzGenerator(mu, la), -g.g(nu, si));
  r.addScaled(lorentzGenerator(mu, si), g.g(nu, la));
  r.addScaled(lorentzGenerator(nu, si), -g.g(mu, la));
  return r.times(I);
}

// [M^{mu nu}, P_rho]
Poly lorentzMomentum(const MetricSpec& g, int mu, int nu, int rho) {
  if (mu == nu) return {};
  if (mu == 0) return -lorentzMomentum(g, nu, mu, rho);
  const Poly kappa = enc::kappa();
  const Poly oneMinusE2 = Poly(1) - Ex(-2);
  if (nu != 0) {
    const int i = mu, j = nu;
    if (rho == 0) return {};
    const int k = rho;
    Poly r = kappa * (g.g(0, i) * Poly(delta(j, k)) - g.g(0, j) * Poly(delta(i, k))) * oneMinusE2;
    for (int s = 1; s <= 3; ++s) r += (g.g(i, s) * Poly(delta(j, k)) - g.g(j, s) * Poly(delta(i, k))) * P(s);
    return r * I;
  }
  const int i = mu;
  if (rho == 0) {
    Poly r = kappa * g.g(i, 0) * oneMinusE2;
    for (int k = 1; k <= 3; ++k) r += g.g(i, k) * P(k);
    return r * I;
  }
  const int k = rho;
  Poly r;
  if (i == k) {
    r -= half(kappa) * g.g(0, 0) * (Poly(1) - Ex(-4));
    for (int s = 1; s <= 3; ++s) r -= g.g(0, s) * P(s) * Ex(-2);
    for (int a = 1; a <= 3; ++a)
      for (int b = 1; b <= 3; ++b) r += Z() * g.g(a, b) * P(a) * P(b);
  }
  r += g.g(0, i) * P(k) * (Ex(-2) - Poly(1));
  for (int s = 1; s <= 3; ++s) r -= Z().scaled(2) * g.g(i, s) * P(s) * P(k);
  return r * I;
}

// M^{ij} = eps^{ijk} M^k as (letter, sign) pairs.
Element spatialLorentz(int i, int j) { return lorentzGenerator(i, j); }

}  // namespace

RelationTable expandTensorRelations(const MetricSpec& metric) {
  RelationTable t;
  t.letterNames = {"M1", "M2", "M3", "N1", "N2", "N3"};
  for (int a = 0; a < kLetters; ++a) {
    const auto ca = letterComponents(a);
    for (int b = 0; b < a; ++b) {
      Element br;
      for (const auto& x : letterComponents(a))
        for (const auto& y : letterComponents(b))
          br.addScaled(lorentzBracket(metric, x.mu, x.nu, y.mu, y.nu), Poly(x.c * y.c));
      t.brackets[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = br;
    }
    for (int rho = 0; rho < 4; ++rho) {
      Poly d;
      for (const auto& x : ca) d += lorentzMomentum(metric, x.mu, x.nu, rho).scaled(x.c);
      t.derivations[static_cast<std::size_t>(a)][static_cast<std::size_t>(rho)] = d;
    }
  }
  return t;
}

namespace {

HopfTables kappaOriginalHopf() {
  HopfTables h;
  h.coproductMomenta[0] = PL(0) + PR(0);
  for (int k = 1; k <= 3; ++k) h.coproductMomenta[static_cast<std::size_t>(k)] = PL(k) * ER(-2) + PR(k);
  h.coproductE = EL(1) * ER(1);
  h.antipodeMomenta[0] = -P(0);
  for (int k = 1; k <= 3; ++k) h.antipodeMomenta[static_cast<std::size_t>(k)] = -(Ex(2) * P(k));
  h.antipodeE = Ex(-1);
  for (int k = 1; k <= 3; ++k) {
    h.coproductLetters[static_cast<std::size_t>(M(k))] = primitive(M(k));
    h.antipodeLetters[static_cast<std::size_t>(M(k))] = -letterElement(M(k));
  }
  for (int i = 1; i <= 3; ++i) {
    TensorElement d;
    addTensor(d, -1, N(i), Poly(1));
    addTensor(d, N(i), -1, ER(-2));
    // -(1/kappa) M^{ij} (x) P_j
    Element s = -letterElement(N(i));
    for (int j = 1; j <= 3; ++j) {
      const Element mij = spatialLorentz(i, j);
      for (const auto& [m, c] : mij.terms()) {
        addTensor(d, m.first(), -1, -Z().scaled(2) * c * PR(j));
        s.add(m, -Z().scaled(2) * c * P(j));
      }
    }
    h.coproductLetters[static_cast<std::size_t>(N(i))] = d;
    // -(M^{i0} + (1/kappa) M^{ij} P_j) e^{P0/kappa}
    h.antipodeLetters[static_cast<std::size_t>(N(i))] = s.times(Ex(2));
  }
  return h;
}

// ---------------------------------------------------------------- kappa, new basis

RelationTable kappaNewRelations(const MetricSpec& g) {
  RelationTable t;
  t.letterNames = {"M1", "M2", "M3", "N1", "N2", "N3"};
  const Poly sh = enc::sinh(1), ch = enc::cosh(1);
  auto set = [&t](int a, int b, Element e) {
    t.brackets[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = std::move(e);
  };
  // [M^i, M^j] = -i eps^{ijk} g^{ks} M^s
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j < i; ++j) {
      Element r;
      for (int k = 1; k <= 3; ++k)
        if (int e = epsilonUpper(i, j, k))
          for (int s = 1; s <= 3; ++s) r.add(Monomial::letter(M(s)), -I * Poly(e) * g.g(k, s));
      set(M(i), M(j), r);
    }
  // [N^i, M^j] = i eps^{jrs} g^{ir} N^s + i g^{i0} M^j ch - i delta^{ij} g^{k0} M^k ch
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      Element r;
      for (int rr = 1; rr <= 3; ++rr)
        for (int s = 1; s <= 3; ++s)
          if (int e = epsilonUpper(j, rr, s)) r.add(Monomial::letter(N(s)), I * Poly(e) * g.g(i, rr));
      r.add(Monomial::letter(M(j)), I * g.g(i, 0) * ch);
      if (i == j)
        for (int k = 1; k <= 3; ++k) r.add(Monomial::letter(M(k)), -I * g.g(k, 0) * ch);
      set(N(i), M(j), r);
    }
  // [N^i, N^j]
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j < i; ++j) {
      Element r;
      r.add(Monomial::letter(N(i)), I * g.g(j, 0) * ch);
      r.add(Monomial::letter(N(j)), -I * g.g(i, 0) * ch);
      for (int s = 1; s <= 3; ++s)
        if (int e = epsilonUpper(i, j, s))
          for (int k = 1; k <= 3; ++k)
            for (int rr = 1; rr <= 3; ++rr)
              r.add(Monomial::letter(M(rr)), -I * Z(2) * Poly(e) * g.g(k, rr) * P(s) * P(k));
      for (int rr = 1; rr <= 3; ++rr)
        for (int s = 1; s <= 3; ++s) {
          if (int e = epsilonUpper(j, rr, s)) r.add(Monomial::letter(M(rr)), I * Z() * Poly(e) * g.g(i, 0) * P(s) * sh);
          if (int e = epsilonUpper(i, rr, s)) r.add(Monomial::letter(M(rr)), -I * Z() * Poly(e) * g.g(j, 0) * P(s) * sh);
        }
      for (int k = 1; k <= 3; ++k)
        if (int e = epsilonUpper(i, j, k)) {
          r.add(Monomial::letter(M(k)), -I * Poly(e) * g.g(0, 0) * enc::cosh(2));
          for (int s = 1; s <= 3; ++s)
            r.add(Monomial::letter(M(k)), -I * Z().scaled(2) * Poly(e) * g.g(s, 0) * P(s) * sh);
        }
      set(N(i), N(j), r);
    }
  // momenta
  for (int i = 1; i <= 3; ++i) {
    auto& dm = t.derivations[static_cast<std::size_t>(M(i))];
    auto& dn = t.derivations[static_cast<std::size_t>(N(i))];
    dm[0] = Poly();
    for (int k = 1; k <= 3; ++k) {
      Poly v;
      for (int j = 1; j <= 3; ++j)
        if (int e = epsilonUpper(i, j, k)) {
          Poly inner = Z(-1) * g.g(0, j) * sh;
          for (int s = 1; s <= 3; ++s) inner += g.g(j, s) * P(s);
          v += inner.scaled(e);
        }
      dm[static_cast<std::size_t>(k)] = I * v;
    }
    Poly n0 = Z(-1) * g.g(i, 0) * sh;
    for (int k = 1; k <= 3; ++k) n0 += g.g(i, k) * P(k);
    dn[0] = I * n0;
    for (int k = 1; k <= 3; ++k) {
      if (i != k) continue;
      Poly v = -half(Z(-1)) * g.g(0, 0) * enc::sinh(2);
      for (int s = 1; s <= 3; ++s) v -= g.g(0, s) * P(s) * ch;
      dn[static_cast<std::size_t>(k)] = I * v;
    }
  }
  return t;
}

HopfTables kappaNewHopf(const MetricSpec& g) {
  HopfTables h;
  h.coproductMomenta[0] = PL(0) + PR(0);
  for (int k = 1; k <= 3; ++k) h.coproductMomenta[static_cast<std::size_t>(k)] = PL(k) * ER(1) + EL(-1) * PR(k);
  h.coproductE = EL(1) * ER(1);
  for (int mu = 0; mu < 4; ++mu) h.antipodeMomenta[static_cast<std::size_t>(mu)] = -P(mu);
  h.antipodeE = Ex(-1);
  for (int i = 1; i <= 3; ++i) {
    h.coproductLetters[static_cast<std::size_t>(M(i))] = primitive(M(i));
    h.antipodeLetters[static_cast<std::size_t>(M(i))] = -letterElement(M(i));
    TensorElement d;
    addTensor(d, N(i), -1, ER(1));
    addTensor(d, -1, N(i), EL(-1));
    for (int j = 1; j <= 3; ++j)
      for (int k = 1; k <= 3; ++k)
        if (int e = epsilonUpper(i, j, k)) {
          addTensor(d, M(j), -1, -Z() * Poly(e) * EL(-1) * PR(k));
          addTensor(d, -1, M(j), Z() * Poly(e) * PL(k) * ER(1));
        }
    h.coproductLetters[static_cast<std::size_t>(N(i))] = d;
    // -N^i + 3i (g^{i0} sinh + z g^{ik} P_k)
    Poly c = g.g(i, 0) * enc::sinh(1);
    for (int k = 1; k <= 3; ++k) c += Z() * g.g(i, k) * P(k);
    h.antipodeLetters[static_cast<std::size_t>(N(i))] = -letterElement(N(i)) + unitElement(I.scaled(3) * c);
  }
  h.conjugationExponent = Z().scaled(3) * P(0);
  return h;
}

// ---------------------------------------------------------------- null plane

Element nullW() {
  Element w;
  w.add(Monomial::letter(kE1), P(2));
  w.add(Monomial::letter(kE2), -P(1));
  w.add(Monomial::letter(kJ3), half(Z(-1)) * (Ex(1) - Ex(-1)));
  return w;
}

RelationTable nullPlaneRelations() {
  RelationTable t;
  t.letterNames = {"E1", "E2", "J3", "F1", "F2", "K3"};
  const Poly sh = enc::sinh(1), ch = enc::cosh(1);
  const Poly Pp = P(0), Pm = P(3);
  const Element W = nullW();
  auto set = [&t](int a, int b, Element e) {
    t.brackets[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = std::move(e);
  };
  auto L = [](int l, const Poly& c) { return letterElement(l, c); };

  // [J3, E_i] = -eps_{ij3} E_j with eps_{123} = +1
  set(kJ3, kE1, L(kE2, Poly(-1)));
  set(kJ3, kE2, L(kE1, Poly(1)));
  // [E_i, F_j] = delta_ij K3 + eps_ij3 cosh
  set(kF1, kE1, L(kK3, Poly(-1)));
  set(kF2, kE2, L(kK3, Poly(-1)));
  set(kF1, kE2, unitElement(ch));
  set(kF2, kE1, unitElement(-ch));
  // [J3, F_i] = -eps_{ij3} F_j
  set(kF1, kJ3, L(kF2, Poly(1)));
  set(kF2, kJ3, L(kF1, Poly(-1)));
  // [F1, F2] = z^2 P- W + z P- J3 sinh, transcribed with coefficients to the right
  set(kF2, kF1, -(W.times(Z(2) * Pm) + L(kJ3, Z() * Pm * sh)));
  // [K3, E_i] = E_i cosh
  set(kK3, kE1, L(kE1, ch));
  set(kK3, kE2, L(kE2, ch));
  // [K3, F1] = -F1 cosh + z E1 P- sinh - z^2 P2 W
  set(kK3, kF1, L(kF1, -ch) + L(kE1, Z() * Pm * sh) - W.times(Z(2) * P(2)));
  // [K3, F2] = -F2 cosh + z E2 P- sinh - z^2 P1 W
  set(kK3, kF2, L(kF2, -ch) + L(kE2, Z() * Pm * sh) - W.times(Z(2) * P(1)));

  auto D = [&t](int l) -> std::array<Poly, 4>& { return t.derivations[static_cast<std::size_t>(l)]; };
  const Poly shOverZ = half(Z(-1)) * (Ex(1) - Ex(-1));
  // [E_i, P_j] = delta_ij sinh/z ; [P-, E_i] = -P_i
  D(kE1)[1] = shOverZ;
  D(kE2)[2] = shOverZ;
  D(kE1)[3] = P(1);
  D(kE2)[3] = P(2);
  // [J3, P_i] = -eps_{ij3} P_j
  D(kJ3)[1] = -P(2);
  D(kJ3)[2] = P(1);
  // [F_i, P_j] = delta_ij P- cosh ; [P+, F_i] = -P_i
  D(kF1)[1] = Pm * ch;
  D(kF2)[2] = Pm * ch;
  D(kF1)[0] = P(1);
  D(kF2)[0] = P(2);
  // [K3, P+] = sinh/z ; [K3, P-] = -P- cosh
  D(kK3)[0] = shOverZ;
  D(kK3)[3] = -Pm * ch;
  (void)Pp;
  return t;
}

HopfTables nullPlaneHopf() {
  HopfTables h;
  h.coproductMomenta[0] = PL(0) + PR(0);
  for (int k = 1; k <= 3; ++k) h.coproductMomenta[static_cast<std::size_t>(k)] = EL(-1) * PR(k) + PL(k) * ER(1);
  h.coproductE = EL(1) * ER(1);
  for (int mu = 0; mu < 4; ++mu) h.antipodeMomenta[static_cast<std::size_t>(mu)] = -P(mu);
  h.antipodeE = Ex(-1);
  for (int l : {kE1, kE2, kJ3}) h.coproductLetters[static_cast<std::size_t>(l)] = primitive(l);

  const Poly z = Z();
  TensorElement f1;
  addTensor(f1, -1, kF1, EL(-1));
  addTensor(f1, kF1, -1, ER(1));
  addTensor(f1, kE1, -1, z * EL(-1) * PR(3));
  addTensor(f1, -1, kE1, -z * PL(3) * ER(1));
  addTensor(f1, kJ3, -1, z * EL(-1) * PR(2));
  addTensor(f1, -1, kJ3, -z * PL(2) * ER(1));
  h.coproductLetters[kF1] = f1;

  TensorElement f2;
  addTensor(f2, -1, kF2, EL(-1));
  addTensor(f2, kF2, -1, ER(1));
  addTensor(f2, kE2, -1, z * EL(-1) * PR(3));
  addTensor(f2, -1, kE2, -z * PL(3) * ER(1));
  addTensor(f2, kJ3, -1, -z * EL(-1) * PR(1));
  addTensor(f2, -1, kJ3, z * PL(1) * ER(1));
  h.coproductLetters[kF2] = f2;

  TensorElement k3;
  addTensor(k3, -1, kK3, EL(-1));
  addTensor(k3, kK3, -1, ER(1));
  addTensor(k3, kE1, -1, z * EL(-1) * PR(1));
  addTensor(k3, -1, kE1, -z * PL(1) * ER(1));
  addTensor(k3, kE2, -1, z * EL(-1) * PR(2));
  addTensor(k3, -1, kE2, -z * PL(2) * ER(1));
  h.coproductLetters[kK3] = k3;

  h.conjugationExponent = Z().scaled(3) * P(0);
  return h;
}

std::string pairId(const std::string& a, const std::string& b) { return "[" + a + "," + b + "]"; }

}  // namespace

// ---------------------------------------------------------------- Presentation

std::vector<std::string> presentationNames() { return {"kappa-original", "kappa-new", "null-plane"}; }

PresentationKind parsePresentationKind(const std::string& name) {
  if (name == "kappa-original") return PresentationKind::KappaOriginal;
  if (name == "kappa-new") return PresentationKind::KappaNew;
  if (name == "null-plane") return PresentationKind::NullPlane;
  throw UnknownPresentation("unknown presentation '" + name + "'");
}

std::string presentationName(PresentationKind kind) {
  switch (kind) {
    case PresentationKind::KappaOriginal:
      return "kappa-original";
    case PresentationKind::KappaNew:
      return "kappa-new";
    case PresentationKind::NullPlane:
      return "null-plane";
  }
  return {};
}

PresentationData presentationData(PresentationKind kind, const MetricSpec& metric) {
  PresentationData d;
  d.name = presentationName(kind);
  d.kind = kind;
  switch (kind) {
    case PresentationKind::KappaOriginal:
      d.metric = metric;
      d.relations = expandTensorRelations(metric);
      d.hopf = kappaOriginalHopf();
      break;
    case PresentationKind::KappaNew:
      d.metric = metric;
      d.relations = kappaNewRelations(metric);
      d.hopf = kappaNewHopf(metric);
      break;
    case PresentationKind::NullPlane:
      // metric-free as printed; the light-cone metric enters only through the maps
      d.metric = MetricSpec::nullPlane();
      d.relations = nullPlaneRelations();
      d.hopf = nullPlaneHopf();
      d.antipodeFromConjugation.fill(true);
      break;
  }
  return d;
}

Presentation::Presentation(PresentationData data) : data_(std::move(data)) {
  algebra_ = std::make_shared<const Algebra>(data_.relations);
  for (int l = 0; l < kLetters; ++l) {
    if (!data_.antipodeFromConjugation[static_cast<std::size_t>(l)]) continue;
    if (!data_.hopf.conjugationExponent) throw InvalidTable("conjugation antipode without an exponent");
    data_.hopf.antipodeLetters[static_cast<std::size_t>(l)] =
        -algebra_->conjExp(*data_.hopf.conjugationExponent, letterElement(l));
  }
  data_.hopf.validate();

  for (int a = 0; a < kLetters; ++a) {
    const std::string& an = data_.relations.letterNames[static_cast<std::size_t>(a)];
    for (int b = 0; b < a; ++b)
      relationList_.push_back({pairId(an, data_.relations.letterNames[static_cast<std::size_t>(b)]),
                               Generator::letter(a), Generator::letter(b), data_.relations.bracket(a, b)});
  }
  for (int a = 0; a < kLetters; ++a)
    for (int mu = 0; mu < 4; ++mu)
      relationList_.push_back({pairId(data_.relations.letterNames[static_cast<std::size_t>(a)], momentumName(mu)),
                               Generator::letter(a), Generator::momentum(mu),
                               unitElement(data_.relations.derivations[static_cast<std::size_t>(a)]
                                                                      [static_cast<std::size_t>(mu)])});
}

std::optional<int> Presentation::letterIndex(const std::string& name) const {
  const auto& names = letterNames();
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<int>(it - names.begin());
}

std::string Presentation::momentumName(int mu) const {
  if (data_.kind == PresentationKind::NullPlane) {
    if (mu == 0) return "P+";
    if (mu == 3) return "P-";
  }
  return "P" + std::to_string(mu);
}

std::string Presentation::generatorName(const Generator& g) const {
  switch (g.kind) {
    case Generator::Kind::Letter:
      return letterNames()[static_cast<std::size_t>(g.index)];
    case Generator::Kind::Momentum:
      return momentumName(g.index);
    case Generator::Kind::GroupLike:
      return "E";
  }
  return {};
}

const Relation* Presentation::findRelation(const Generator& a, const Generator& b) const {
  for (const auto& r : relationList_)
    if (r.a == a && r.b == b) return &r;
  return nullptr;
}

std::optional<Element> Presentation::wConstant() const {
  if (data_.kind != PresentationKind::NullPlane) return std::nullopt;
  return nullW();
}

std::shared_ptr<const Presentation> buildPresentation(PresentationKind kind, const MetricSpec& metric) {
  return std::make_shared<const Presentation>(presentationData(kind, metric));
}

std::shared_ptr<const Presentation> buildPresentation(const std::string& name, const MetricSpec& metric) {
  return buildPresentation(parsePresentationKind(name), metric);
}

// ---------------------------------------------------------------- maps

std::vector<std::string> mapNames() { return {"basis-change", "null-iso", "null-dict"}; }

std::pair<PresentationKind, PresentationKind> mapEndpoints(const std::string& name) {
  if (name == "basis-change") return {PresentationKind::KappaNew, PresentationKind::KappaOriginal};
  if (name == "null-iso") return {PresentationKind::NullPlane, PresentationKind::KappaOriginal};
  if (name == "null-dict") return {PresentationKind::NullPlane, PresentationKind::KappaNew};
  throw UnknownPresentation("unknown map '" + name + "'");
}

GenMap makeMap(const std::string& name) {
  mapEndpoints(name);
  GenMap m;
  m.name = name;
  m.letterImages.resize(kLetters);
  if (name == "null-dict") {
    m.letterImages[kE1] = letterElement(M(2), I);
    m.letterImages[kE2] = letterElement(M(1), -I);
    m.letterImages[kJ3] = letterElement(M(3), -I);
    m.letterImages[kF1] = letterElement(N(1), I);
    m.letterImages[kF2] = letterElement(N(2), I);
    m.letterImages[kK3] = letterElement(N(3), -I);
    m.sigma.validate();
    return m;
  }
  m.sigma.set(var::P(0), -P(0));
  for (int k = 1; k <= 3; ++k) m.sigma.set(var::P(k), -(P(k) * Ex(1)));
  m.sigma.set(var::E(), Ex(-1));
  m.sigma.validate();

  // (N^i + c z eps^{ijk} M^j P_k) e^{P0/2kappa}
  auto boost = [](int i, int sign) {
    Element r = letterElement(N(i), Ex(1));
    for (int j = 1; j <= 3; ++j)
      for (int k = 1; k <= 3; ++k)
        if (int e = epsilonUpper(i, j, k)) r.add(Monomial::letter(M(j)), Poly(sign * e) * Z() * P(k) * Ex(1));
    return r;
  };
  if (name == "basis-change") {
    for (int i = 1; i <= 3; ++i) {
      m.letterImages[static_cast<std::size_t>(M(i))] = letterElement(M(i));
      m.letterImages[static_cast<std::size_t>(N(i))] = boost(i, -1);
    }
    return m;
  }
  // null-iso; M^{ik} P_k = eps^{ikm} M^m P_k = -eps^{imk} M^m P_k
  m.letterImages[kE1] = letterElement(M(2), I);
  m.letterImages[kE2] = letterElement(M(1), -I);
  m.letterImages[kJ3] = letterElement(M(3), -I);
  m.letterImages[kF1] = boost(1, -1).times(I);
  m.letterImages[kF2] = boost(2, -1).times(I);
  m.letterImages[kK3] = boost(3, -1).times(-I);
  return m;
}

namespace {

Substitution invertSubstitution(const Substitution& sigma) {
  for (int v = 0; v <= kMetricVars; ++v)
    if (sigma.image(v) && *sigma.image(v) != Poly::variable(v))
      throw NotTriangular("map must fix z and the metric entries");
  Poly imgE = sigma.image(var::E()) ? *sigma.image(var::E()) : Ex(1);
  if (!imgE.isInvertibleMonomial() || !imgE.dependsOnly({var::z, var::E()}))
    throw NotTriangular("image of E is not an invertible monomial");
  const int k = imgE.terms()[0].first[var::E()];
  if (k != 1 && k != -1) throw NotTriangular("image of E must be E^{+-1} up to a unit");
  const Poly u = imgE * Ex(-k);
  Substitution inv;
  const Poly invE = (Ex(1) * u.inverse()).pow(k);
  inv.set(var::E(), invE);
  Substitution onlyE;
  onlyE.set(var::E(), invE);

  std::array<bool, 4> hit{};
  for (int mu = 0; mu < 4; ++mu) {
    Poly img = sigma.image(var::P(mu)) ? *sigma.image(var::P(mu)) : P(mu);
    if (!img.isMonomial()) throw NotTriangular("momentum image is not a monomial");
    const Exponent& e = img.terms()[0].first;
    int target = -1;
    for (int nu = 0; nu < 4; ++nu) {
      if (e[var::P(nu)] == 0) continue;
      if (e[var::P(nu)] != 1 || target >= 0) throw NotTriangular("momentum image must be linear in one momentum");
      target = nu;
    }
    if (target < 0 || hit[static_cast<std::size_t>(target)]) throw NotTriangular("momenta are not permuted");
    hit[static_cast<std::size_t>(target)] = true;
    Exponent rest = e;
    rest[var::P(target)] = 0;
    const Poly w = Poly::monomial(rest, img.terms()[0].second);
    if (!w.isInvertibleMonomial()) throw NotTriangular("momentum image has a non-invertible factor");
    inv.set(var::P(target), P(mu) * w.substitute(onlyE).inverse());
  }
  return inv;
}

}  // namespace

GenMap invertMap(const GenMap& map, const Algebra& source, const Algebra& target) {
  GenMap inv;
  inv.name = map.name + "^-1";
  inv.sigma = invertSubstitution(map.sigma);
  inv.letterImages.assign(kLetters, Element());

  struct Lead {
    int source;
    int letter;
    Poly coeff;
  };
  std::vector<Lead> leads;
  std::array<bool, kLetters> used{};
  for (int l = 0; l < kLetters; ++l) {
    const Element& img = map.letterImages[static_cast<std::size_t>(l)];
    if (letterDegree(img) != 1) throw NotTriangular("letter image must have letter degree one");
    int lead = -1;
    for (const auto& [m, c] : img.terms())
      if (!m.isUnit()) lead = std::max(lead, m.first());
    const Poly u = img.coeff(Monomial::letter(lead));
    if (!u.isInvertibleMonomial()) throw NotTriangular("leading coefficient is not invertible");
    if (used[static_cast<std::size_t>(lead)]) throw NotTriangular("two letters share a leading letter");
    used[static_cast<std::size_t>(lead)] = true;
    leads.push_back({l, lead, u});
  }
  std::sort(leads.begin(), leads.end(), [](const Lead& a, const Lead& b) { return a.letter < b.letter; });

  std::array<bool, kLetters> done{};
  for (const auto& ld : leads) {
    Element lower = map.letterImages[static_cast<std::size_t>(ld.source)] - letterElement(ld.letter, ld.coeff);
    for (const auto& [m, c] : lower.terms())
      if (!m.isUnit() && !done[static_cast<std::size_t>(m.first())])
        throw NotTriangular("lower terms are not triangular in the letter order");
    Element back = applyMap(inv, source, lower);
    const Poly scale = ld.coeff.substitute(inv.sigma).inverse();
    inv.letterImages[static_cast<std::size_t>(ld.letter)] = (letterElement(ld.source) - back).times(scale);
    done[static_cast<std::size_t>(ld.letter)] = true;
  }

  auto checkRoundTrip = [](const GenMap& f, const Algebra& fTarget, const GenMap& g, const Algebra& gTarget) {
    std::vector<Element> probes;
    for (int l = 0; l < kLetters; ++l) probes.push_back(letterElement(l));
    for (int mu = 0; mu < 4; ++mu) probes.push_back(unitElement(P(mu)));
    probes.push_back(unitElement(Ex(1)));
    probes.push_back(unitElement(Ex(-1)));
    for (const auto& x : probes)
      if (applyMap(g, gTarget, applyMap(f, fTarget, x)) != x) throw NotTriangular("round trip is not the identity");
  };
  checkRoundTrip(map, target, inv, source);
  checkRoundTrip(inv, source, map, target);
  return inv;
}

PresentationMap buildMap(const std::string& name, const MetricSpec& metric, std::shared_ptr<const Presentation> source,
                         std::shared_ptr<const Presentation> target) {
  auto [srcKind, tgtKind] = mapEndpoints(name);
  const MetricSpec targetMetric = name == "basis-change" ? metric : MetricSpec::nullPlane();
  if (!source) source = buildPresentation(srcKind, name == "basis-change" ? metric : MetricSpec::generic());
  if (!target) target = buildPresentation(tgtKind, targetMetric);
  PresentationMap pm;
  pm.name = name;
  pm.source = std::move(source);
  pm.target = std::move(target);
  pm.forward = makeMap(name);
  pm.inverse = invertMap(pm.forward, pm.source->algebra(), pm.target->algebra());
  return pm;
}

}  // namespace qpoincare
