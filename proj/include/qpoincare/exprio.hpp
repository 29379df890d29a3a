#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qpoincare/hopf.hpp"
#include "qpoincare/presentations.hpp"

namespace qpoincare {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column, std::vector<std::string> expected = {});

  /// 1-based.
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::vector<std::string> expected_;
};

class ElaborationError : public std::runtime_error {
 public:
  ElaborationError(const std::string& message, std::size_t column);
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

/// A parsed expression: a coefficient, an element, or a tensor of rank 2 or 3.
using Value = std::variant<Poly, Element, TensorElement, Tensor3Element>;

/// Parses and evaluates `src`. Letters, W and the P+/P- aliases need a
/// presentation; without one only coefficients are accepted.
///
///   sum     := tensor (('+' | '-') tensor)*
///   tensor  := product ('(x)' product)*          at most three factors
///   product := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' '-'? INT)?
///   primary := INT | symbol | '(' sum ')' | '[' sum ',' sum ']' | fn '(' sum ')'
///   fn      := exp | sinh | cosh                 argument r*z*P0, r integer
Value parse(std::string_view src, const Presentation* context);

Poly parseScalar(std::string_view src, const Presentation* context = nullptr);
/// Coefficients are promoted to elements.
Element parseElement(std::string_view src, const Presentation& context);
TensorElement parseTensor(std::string_view src, const Presentation& context);
Tensor3Element parseTensor3(std::string_view src, const Presentation& context);

/// Canonical text; parse(format(x)) == x.
std::string format(const Poly& c, const Presentation* context = nullptr);
std::string format(const Element& x, const Presentation& context);
std::string format(const TensorElement& x, const Presentation& context);
std::string format(const Tensor3Element& x, const Presentation& context);
std::string format(const Value& v, const Presentation& context);

}  // namespace qpoincare
