#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>

#include "gfmg/grid.hpp"

namespace gfmg {

/// Second-order Taylor jet: value, first and second derivative at a point.
struct Jet2 {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;

  static Jet2 constant(double c) { return {c, 0.0, 0.0}; }
  static Jet2 variable(double x) { return {x, 1.0, 0.0}; }

  bool operator==(const Jet2&) const = default;
};

inline Jet2 operator+(Jet2 a, Jet2 b) { return {a.value + b.value, a.d1 + b.d1, a.d2 + b.d2}; }
inline Jet2 operator-(Jet2 a, Jet2 b) { return {a.value - b.value, a.d1 - b.d1, a.d2 - b.d2}; }
inline Jet2 operator-(Jet2 a) { return {-a.value, -a.d1, -a.d2}; }
inline Jet2 operator*(Jet2 a, Jet2 b) {
  return {a.value * b.value, a.d1 * b.value + a.value * b.d1,
          a.d2 * b.value + 2.0 * a.d1 * b.d1 + a.value * b.d2};
}

/// g(a) for a scalar function with derivatives g0 = g(a), g1 = g'(a), g2 = g''(a).
inline Jet2 chain(Jet2 a, double g0, double g1, double g2) {
  return {g0, g1 * a.d1, g2 * a.d1 * a.d1 + g1 * a.d2};
}

inline Jet2 reciprocal(Jet2 a) {
  const double inv = 1.0 / a.value;
  return chain(a, inv, -inv * inv, 2.0 * inv * inv * inv);
}
inline Jet2 operator/(Jet2 a, Jet2 b) { return a * reciprocal(b); }

inline Jet2 sin(Jet2 a) {
  const double s = std::sin(a.value), c = std::cos(a.value);
  return chain(a, s, c, -s);
}
inline Jet2 cos(Jet2 a) {
  const double s = std::sin(a.value), c = std::cos(a.value);
  return chain(a, c, -s, -c);
}
inline Jet2 exp(Jet2 a) {
  const double e = std::exp(a.value);
  return chain(a, e, e, e);
}
inline Jet2 pow(Jet2 a, int n) {
  if (n == 0) return Jet2::constant(1.0);
  const double v = a.value;
  const double g1 = n * std::pow(v, n - 1);
  const double g2 = n == 1 ? 0.0 : n * (n - 1) * std::pow(v, n - 2);
  return chain(a, std::pow(v, n), g1, g2);
}

class ParseError : public ConfigError {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : ConfigError(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

struct ExprNode;

/// Immutable parsed expression in the variable x.
///
/// Grammar (whitespace-insensitive):
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('-' | '+') unary | power
///   power   := primary ('^' unary)?
///   primary := number | 'x' | 'pi' | name | func '(' expr ')' | '(' expr ')'
///   func    := 'sin' | 'cos' | 'exp'
/// Exponents must be constant. A negative or non-integer exponent is only
/// accepted on a positive constant base.
class ExpressionTree {
 public:
  ExpressionTree() = default;

  double eval(double x) const;
  /// Throws std::domain_error on division by zero.
  Jet2 eval_jet(double x) const;

  const std::string& source() const { return source_; }
  bool depends_on_x() const;

 private:
  friend ExpressionTree parse_expression(const std::string&, const std::map<std::string, double>&);
  std::shared_ptr<const ExprNode> root_;
  std::string source_;
};

/// `constants` binds extra names (e.g. "p") to values.
ExpressionTree parse_expression(const std::string& src, const std::map<std::string, double>& constants = {});

Jet2 eval_jet(const ExpressionTree& e, double x);

}  // namespace gfmg
