#include "qpoincare/exprio.hpp"

#include <cctype>
#include <charconv>
#include <map>

namespace qpoincare {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column,
                       std::vector<std::string> expected)
    : std::runtime_error(message), line_(line), column_(column), expected_(std::move(expected)) {}

ElaborationError::ElaborationError(const std::string& message, std::size_t column)
    : std::runtime_error(message), column_(column) {}

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, LBracket, RBracket, Comma, Tensor, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::string describe(Tok t) {
  switch (t) {
    case Tok::Number:
      return "integer";
    case Tok::Ident:
      return "symbol";
    case Tok::Plus:
      return "'+'";
    case Tok::Minus:
      return "'-'";
    case Tok::Star:
      return "'*'";
    case Tok::Slash:
      return "'/'";
    case Tok::Caret:
      return "'^'";
    case Tok::LParen:
      return "'('";
    case Tok::RParen:
      return "')'";
    case Tok::LBracket:
      return "'['";
    case Tok::RBracket:
      return "']'";
    case Tok::Comma:
      return "','";
    case Tok::Tensor:
      return "'(x)'";
    case Tok::End:
      return "end of input";
  }
  return {};
}

std::pair<std::size_t, std::size_t> lineColumn(std::string_view src, std::size_t pos) {
  std::size_t line = 1, col = 1;
  for (std::size_t k = 0; k < pos && k < src.size(); ++k) {
    if (src[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::vector<Token> tokenize(std::string_view src, bool lightCone) {
  std::vector<Token> out;
  std::size_t k = 0;
  auto fail = [&](const std::string& msg) {
    auto [l, c] = lineColumn(src, k);
    throw ParseError(msg, l, c);
  };
  while (k < src.size()) {
    const char ch = src[k];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++k;
      continue;
    }
    const std::size_t start = k;
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
      out.push_back({Tok::Number, std::string(src.substr(start, k - start)), start});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      while (k < src.size() && std::isalnum(static_cast<unsigned char>(src[k]))) ++k;
      std::string id(src.substr(start, k - start));
      if (lightCone && id == "P" && k < src.size() && (src[k] == '+' || src[k] == '-')) id += src[k++];
      out.push_back({Tok::Ident, id, start});
      continue;
    }
    if (src.substr(k, 3) == "(x)") {
      out.push_back({Tok::Tensor, "(x)", start});
      k += 3;
      continue;
    }
    Tok t;
    switch (ch) {
      case '+':
        t = Tok::Plus;
        break;
      case '-':
        t = Tok::Minus;
        break;
      case '*':
        t = Tok::Star;
        break;
      case '/':
        t = Tok::Slash;
        break;
      case '^':
        t = Tok::Caret;
        break;
      case '(':
        t = Tok::LParen;
        break;
      case ')':
        t = Tok::RParen;
        break;
      case '[':
        t = Tok::LBracket;
        break;
      case ']':
        t = Tok::RBracket;
        break;
      case ',':
        t = Tok::Comma;
        break;
      default:
        fail(std::string("unexpected character '") + ch + "'");
        return out;
    }
    out.push_back({t, std::string(1, ch), start});
    ++k;
  }
  out.push_back({Tok::End, "", src.size()});
  return out;
}

int rank(const Value& v) { return static_cast<int>(v.index()); }

class Parser {
 public:
  Parser(std::string_view src, const Presentation* ctx)
      : src_(src),
        ctx_(ctx),
        tokens_(tokenize(src, ctx && ctx->kind() == PresentationKind::NullPlane)) {}

  Value run() {
    Value v = sum();
    expect(Tok::End, {"operator", "end of input"});
    return v;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  bool accept(Tok t) {
    if (peek().kind != t) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected) const {
    auto [l, c] = lineColumn(src_, peek().pos);
    throw ParseError(msg, l, c, std::move(expected));
  }
  void expect(Tok t, std::vector<std::string> expected = {}) {
    if (accept(t)) return;
    if (expected.empty()) expected = {describe(t)};
    std::string found = peek().kind == Tok::End ? "end of input" : "'" + peek().text + "'";
    fail("expected " + expected.front() + ", found " + found, expected);
  }
  [[noreturn]] void elaborate(const std::string& msg, std::size_t at) const {
    throw ElaborationError(msg, lineColumn(src_, at).second);
  }

  const Algebra& algebra(std::size_t at) const {
    if (!ctx_) elaborate("letters need a presentation", at);
    return ctx_->algebra();
  }

  Element toElement(const Value& v, std::size_t at) const {
    if (const Poly* p = std::get_if<Poly>(&v)) return unitElement(*p);
    if (const Element* e = std::get_if<Element>(&v)) return *e;
    elaborate("expected an element, found a tensor", at);
  }

  template <class T>
  T toTensor(const Value& v, std::size_t at) const {
    if (const Poly* p = std::get_if<Poly>(&v)) return T(typename T::Map::key_type{}, *p);
    if (const T* t = std::get_if<T>(&v)) return *t;
    elaborate("operands have different tensor ranks", at);
  }

  Value add(const Value& a, const Value& b, bool subtract, std::size_t at) const {
    const int r = std::max(rank(a), rank(b));
    auto combine = [subtract](auto x, const auto& y) { return subtract ? x - y : x + y; };
    switch (r) {
      case 0:
        return combine(std::get<Poly>(a), std::get<Poly>(b));
      case 1:
        return combine(toElement(a, at), toElement(b, at));
      case 2:
        return combine(toTensor<TensorElement>(a, at), toTensor<TensorElement>(b, at));
      default:
        return combine(toTensor<Tensor3Element>(a, at), toTensor<Tensor3Element>(b, at));
    }
  }

  Value multiply(const Value& a, const Value& b, std::size_t at) const {
    const int r = std::max(rank(a), rank(b));
    switch (r) {
      case 0:
        return std::get<Poly>(a) * std::get<Poly>(b);
      case 1:
        if (const Poly* p = std::get_if<Poly>(&a)) return algebra(at).leftMultiplyCoeff(*p, std::get<Element>(b));
        return algebra(at).multiply(std::get<Element>(a), toElement(b, at));
      case 2:
        return tensorMultiply(algebra(at), toTensor<TensorElement>(a, at), toTensor<TensorElement>(b, at));
      default:
        return tensorMultiply(algebra(at), toTensor<Tensor3Element>(a, at), toTensor<Tensor3Element>(b, at));
    }
  }

  Value negate(const Value& a) const {
    return std::visit([](const auto& x) -> Value { return -x; }, a);
  }

  Value sum() {
    Value v = tensor();
    for (;;) {
      const std::size_t at = peek().pos;
      if (accept(Tok::Plus))
        v = add(v, tensor(), false, at);
      else if (accept(Tok::Minus))
        v = add(v, tensor(), true, at);
      else
        return v;
    }
  }

  Value tensor() {
    const std::size_t start = peek().pos;
    std::vector<Value> factors{product()};
    while (accept(Tok::Tensor)) factors.push_back(product());
    if (factors.size() == 1) return factors.front();
    if (factors.size() > 3) elaborate("tensors have at most three factors", start);
    std::vector<Element> elems;
    for (std::size_t s = 0; s < factors.size(); ++s) {
      const int slot = static_cast<int>(s);
      elems.push_back(
          toElement(factors[s], start).mapCoefficients([slot](const Poly& c) { return embed(c, slot); }));
    }
    if (elems.size() == 2) {
      TensorElement t;
      for (const auto& [m0, c0] : elems[0].terms())
        for (const auto& [m1, c1] : elems[1].terms()) t.add({m0, m1}, c0 * c1);
      return t;
    }
    Tensor3Element t;
    for (const auto& [m0, c0] : elems[0].terms())
      for (const auto& [m1, c1] : elems[1].terms())
        for (const auto& [m2, c2] : elems[2].terms()) t.add({m0, m1, m2}, c0 * c1 * c2);
    return t;
  }

  Value product() {
    Value v = unary();
    for (;;) {
      const std::size_t at = peek().pos;
      if (accept(Tok::Star)) {
        v = multiply(v, unary(), at);
      } else if (accept(Tok::Slash)) {
        const std::size_t dAt = peek().pos;
        Value d = unary();
        const Poly* p = std::get_if<Poly>(&d);
        if (!p || !p->isInvertibleMonomial()) elaborate("division by a non-unit", dAt);
        v = multiply(v, p->inverse(), at);
      } else {
        return v;
      }
    }
  }

  Value unary() {
    if (accept(Tok::Minus)) return negate(unary());
    return power();
  }

  Value power() {
    const std::size_t at = peek().pos;
    Value base = primary();
    if (!accept(Tok::Caret)) return base;
    const bool negative = accept(Tok::Minus);
    if (peek().kind != Tok::Number) fail("expected an integer exponent", {"integer"});
    const long n = static_cast<long>(number(peek()));
    ++pos_;
    if (n > 1000) elaborate("exponent too large", at);
    const int e = static_cast<int>(negative ? -n : n);
    if (const Poly* p = std::get_if<Poly>(&base)) {
      if (e < 0 && !p->isInvertibleMonomial()) elaborate("negative power of a non-unit", at);
      return p->pow(e);
    }
    if (e < 0) elaborate("negative power of a non-scalar", at);
    Value r = Poly(1);
    for (int k = 0; k < e; ++k) r = multiply(r, base, at);
    return r;
  }

  std::int64_t number(const Token& t) const {
    std::int64_t n = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), n);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
      auto [l, c] = lineColumn(src_, t.pos);
      throw ParseError("integer literal out of range", l, c, {"integer"});
    }
    return n;
  }

  Value primary() {
    const Token t = peek();
    switch (t.kind) {
      case Tok::Number:
        ++pos_;
        return Poly(number(t));
      case Tok::LParen: {
        ++pos_;
        Value v = sum();
        expect(Tok::RParen);
        return v;
      }
      case Tok::LBracket: {
        ++pos_;
        Value a = sum();
        expect(Tok::Comma);
        Value b = sum();
        expect(Tok::RBracket);
        return commutator(a, b, t.pos);
      }
      case Tok::Ident:
        ++pos_;
        if (t.text == "exp" || t.text == "sinh" || t.text == "cosh") return function(t);
        return symbol(t);
      default:
        fail(std::string("expected an operand, found ") + (t.kind == Tok::End ? "end of input" : "'" + t.text + "'"),
             {"integer", "symbol", "'('", "'['"});
    }
  }

  Value commutator(const Value& a, const Value& b, std::size_t at) const {
    const int r = std::max(rank(a), rank(b));
    if (r == 0) return Poly();
    if (r == 1) return algebra(at).commutator(toElement(a, at), toElement(b, at));
    if (r == 2)
      return tensorCommutator(algebra(at), toTensor<TensorElement>(a, at), toTensor<TensorElement>(b, at));
    auto x = toTensor<Tensor3Element>(a, at), y = toTensor<Tensor3Element>(b, at);
    return tensorMultiply(algebra(at), x, y) - tensorMultiply(algebra(at), y, x);
  }

  Value function(const Token& name) {
    expect(Tok::LParen);
    const std::size_t at = peek().pos;
    Value arg = sum();
    expect(Tok::RParen);
    const Poly* p = std::get_if<Poly>(&arg);
    bool ok = p && p->isMonomial() && p->dependsOnly({var::z, var::P(0)});
    if (ok) {
      const auto& [e, c] = p->terms()[0];
      ok = e[var::z] == 1 && e[var::P(0)] == 1 && c.isReal() && c.re.den() == 1;
    }
    if (!ok) elaborate(name.text + " takes an integer multiple of z*P0", at);
    const auto k = p->terms()[0].second.re.num();
    if (k > 1000 || k < -1000) elaborate("argument too large", at);
    const int r = static_cast<int>(k);
    if (name.text == "exp") return enc::exp(r);
    if (name.text == "sinh") return enc::sinh(r);
    return enc::cosh(r);
  }

  Value symbol(const Token& t) const {
    const std::string& s = t.text;
    if (s == "i") return Poly::i();
    if (s == "z") return Poly::variable(var::z);
    if (s == "E") return Poly::variable(var::E());
    if (s.size() == 3 && s[0] == 'g' && s[1] >= '0' && s[1] <= '3' && s[2] >= '0' && s[2] <= '3')
      return Poly::variable(var::g(s[1] - '0', s[2] - '0'));
    if (s.size() == 2 && s[0] == 'P' && s[1] >= '0' && s[1] <= '3') return Poly::variable(var::P(s[1] - '0'));
    if (s == "P+") return Poly::variable(var::P(0));
    if (s == "P-") return Poly::variable(var::P(3));
    if (ctx_) {
      if (auto l = ctx_->letterIndex(s)) return letterElement(*l);
      if (s == "W")
        if (auto w = ctx_->wConstant()) return *w;
    }
    auto [l, c] = lineColumn(src_, t.pos);
    throw ParseError("unknown symbol '" + s + "'", l, c, {"symbol"});
  }

  std::string_view src_;
  const Presentation* ctx_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------- formatting

struct Names {
  const Presentation* ctx;

  std::string variable(int v) const {
    if (v == var::z) return "z";
    if (v <= kMetricVars) {
      for (int mu = 0; mu < 4; ++mu)
        for (int nu = mu; nu < 4; ++nu)
          if (var::g(mu, nu) == v) return "g" + std::to_string(mu) + std::to_string(nu);
    }
    if (v == var::E()) return "E";
    const int mu = v - var::P(0);
    return ctx ? ctx->momentumName(mu) : "P" + std::to_string(mu);
  }

  std::string letters(const Monomial& m) const {
    std::string s;
    for (int l = 0; l < kLetters; ++l) {
      const int n = m.exp[static_cast<std::size_t>(l)];
      if (n == 0) continue;
      if (!s.empty()) s += "*";
      s += ctx->letterNames()[static_cast<std::size_t>(l)];
      if (n != 1) s += "^" + std::to_string(n);
    }
    return s;
  }
};

struct Item {
  Gaussian scalar;
  std::string body;
};

std::string joinFactors(std::initializer_list<std::string> parts) {
  std::string s;
  for (const auto& p : parts) {
    if (p.empty()) continue;
    if (!s.empty()) s += "*";
    s += p;
  }
  return s;
}

// Sign and magnitude text of a scalar factor; empty magnitude means one.
std::pair<bool, std::string> scalarText(const Gaussian& c) {
  if (c.isReal()) {
    const bool neg = c.re < Rational(0);
    const Rational a = neg ? -c.re : c.re;
    return {neg, a == Rational(1) ? "" : a.str()};
  }
  if (c.re.isZero()) {
    const bool neg = c.im < Rational(0);
    const Rational b = neg ? -c.im : c.im;
    return {neg, b == Rational(1) ? "i" : b.str() + "*i"};
  }
  const bool neg = c.im < Rational(0);
  const Rational b = neg ? -c.im : c.im;
  return {false, "(" + c.re.str() + (neg ? " - " : " + ") + (b == Rational(1) ? "" : b.str() + "*") + "i)"};
}

// Product of variables in slot-0 numbering, skipping E.
std::string varsText(const Exponent& e, const Names& names) {
  std::string s;
  for (int v = 0; v < kNumVars; ++v) {
    if (e[v] == 0) continue;
    if (!s.empty()) s += "*";
    s += names.variable(v);
    if (e[v] != 1) s += "^" + std::to_string(e[v]);
  }
  return s;
}

std::string powerOfE(int k) { return k == 1 ? "E" : "E^" + std::to_string(k); }

std::string hyperbolic(const char* fn, int k, const Names& names) {
  const std::string arg = (k == 1 ? "" : std::to_string(k) + "*") + "z*" + names.variable(var::P(0));
  return std::string(fn) + "(" + arg + ")";
}

// Splits a coefficient into printable items, folding E^k +- E^-k pairs with
// equal weight into cosh/sinh.
std::vector<Item> coefficientItems(const Poly& c, const Names& names) {
  std::vector<Exponent> order;
  std::map<Exponent, std::map<int, Gaussian>> groups;
  for (const auto& [e, a] : c.terms()) {
    Exponent rest = e;
    rest[var::E()] = 0;
    auto [it, fresh] = groups.try_emplace(rest);
    if (fresh) order.push_back(rest);
    it->second[e[var::E()]] = a;
  }
  std::vector<Item> items;
  for (const auto& rest : order) {
    const auto& ks = groups[rest];
    const std::string body = varsText(rest, names);
    std::map<int, bool> done;
    for (const auto& [k, a] : ks) {
      if (done[k]) continue;
      if (k < 0) {
        auto partner = ks.find(-k);
        if (partner != ks.end()) {
          const Gaussian& b = partner->second;
          if (a == b || a == -b) {
            const char* fn = a == b ? "cosh" : "sinh";
            items.push_back({b + b, joinFactors({body, hyperbolic(fn, -k, names)})});
            done[-k] = true;
            continue;
          }
        }
      }
      items.push_back({a, joinFactors({body, k == 0 ? "" : powerOfE(k)})});
    }
  }
  return items;
}

struct Summand {
  bool negative;
  std::string text;
};

std::string joinSummands(const std::vector<Summand>& parts) {
  if (parts.empty()) return "0";
  std::string s;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k == 0)
      s += parts[k].negative ? "-" : "";
    else
      s += parts[k].negative ? " - " : " + ";
    s += parts[k].text;
  }
  return s;
}

Summand itemSummand(const Item& it, const std::string& letters) {
  auto [neg, mag] = scalarText(it.scalar);
  std::string text = joinFactors({mag, letters, it.body});
  return {neg, text.empty() ? "1" : text};
}

std::string polyText(const Poly& c, const Names& names) {
  std::vector<Summand> parts;
  for (const auto& it : coefficientItems(c, names)) parts.push_back(itemSummand(it, ""));
  return joinSummands(parts);
}

template <std::size_t N>
std::string tensorText(const LinearCombination<std::array<Monomial, N>>& x, const Names& names) {
  std::vector<Summand> parts;
  for (const auto& [keys, c] : x.terms()) {
    for (const auto& [e, a] : c.terms()) {
      std::array<Exponent, N> sides{};
      for (int v = 0; v <= kMetricVars; ++v) sides[0][v] = e[v];
      for (std::size_t s = 0; s < N; ++s)
        for (int k = 0; k < kVarsPerSlot; ++k)
          sides[s][var::P(0) + k] = e[var::P(0, static_cast<int>(s)) + k];
      auto [neg, mag] = scalarText(a);
      std::string text;
      for (std::size_t s = 0; s < N; ++s) {
        std::string side = joinFactors({s == 0 ? mag : "", names.letters(keys[s]), varsText(sides[s], names)});
        if (s > 0) text += " (x) ";
        text += side.empty() ? "1" : side;
      }
      parts.push_back({neg, text});
    }
  }
  return joinSummands(parts);
}

}  // namespace

Value parse(std::string_view src, const Presentation* context) { return Parser(src, context).run(); }

Poly parseScalar(std::string_view src, const Presentation* context) {
  Value v = parse(src, context);
  if (const Poly* p = std::get_if<Poly>(&v)) return *p;
  throw ElaborationError("expected a coefficient", 1);
}

Element parseElement(std::string_view src, const Presentation& context) {
  Value v = parse(src, &context);
  if (const Poly* p = std::get_if<Poly>(&v)) return unitElement(*p);
  if (const Element* e = std::get_if<Element>(&v)) return *e;
  throw ElaborationError("expected an element, found a tensor", 1);
}

TensorElement parseTensor(std::string_view src, const Presentation& context) {
  Value v = parse(src, &context);
  if (const Poly* p = std::get_if<Poly>(&v)) return TensorElement({}, *p);
  if (const TensorElement* t = std::get_if<TensorElement>(&v)) return *t;
  throw ElaborationError("expected a tensor of rank two", 1);
}

Tensor3Element parseTensor3(std::string_view src, const Presentation& context) {
  Value v = parse(src, &context);
  if (const Poly* p = std::get_if<Poly>(&v)) return Tensor3Element({}, *p);
  if (const Tensor3Element* t = std::get_if<Tensor3Element>(&v)) return *t;
  throw ElaborationError("expected a tensor of rank three", 1);
}

std::string format(const Poly& c, const Presentation* context) { return polyText(c, Names{context}); }

std::string format(const Element& x, const Presentation& context) {
  const Names names{&context};
  std::vector<Summand> parts;
  for (const auto& [m, c] : x.terms()) {
    const auto items = coefficientItems(c, names);
    if (m.isUnit()) {
      for (const auto& it : items) parts.push_back(itemSummand(it, ""));
    } else if (items.size() == 1) {
      parts.push_back(itemSummand(items.front(), names.letters(m)));
    } else {
      parts.push_back({false, names.letters(m) + "*(" + polyText(c, names) + ")"});
    }
  }
  return joinSummands(parts);
}

std::string format(const TensorElement& x, const Presentation& context) { return tensorText(x, Names{&context}); }

std::string format(const Tensor3Element& x, const Presentation& context) { return tensorText(x, Names{&context}); }

std::string format(const Value& v, const Presentation& context) {
  return std::visit(
      [&context](const auto& x) -> std::string {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Poly>)
          return format(x, &context);
        else
          return format(x, context);
      },
      v);
}

}  // namespace qpoincare
