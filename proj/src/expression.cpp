#include "gfmg/expression.hpp"

#include <cctype>
#include <cstdlib>
#include <numbers>
#include <variant>

namespace gfmg {

enum class UnaryOp { negate, sin, cos, exp };
enum class BinaryOp { add, sub, mul, div };

struct ExprNode {
  struct Constant {
    double value;
  };
  struct Variable {};
  struct Unary {
    UnaryOp op;
    std::shared_ptr<const ExprNode> arg;
  };
  struct Binary {
    BinaryOp op;
    std::shared_ptr<const ExprNode> lhs, rhs;
  };
  struct IntPower {
    std::shared_ptr<const ExprNode> base;
    int exponent;
  };
  std::variant<Constant, Variable, Unary, Binary, IntPower> kind;
};

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

template <class T>
NodePtr make(T k) {
  return std::make_shared<const ExprNode>(ExprNode{std::move(k)});
}

double apply(UnaryOp op, double v) {
  switch (op) {
    case UnaryOp::negate:
      return -v;
    case UnaryOp::sin:
      return std::sin(v);
    case UnaryOp::cos:
      return std::cos(v);
    case UnaryOp::exp:
      return std::exp(v);
  }
  return v;
}

Jet2 apply(UnaryOp op, Jet2 v) {
  switch (op) {
    case UnaryOp::negate:
      return -v;
    case UnaryOp::sin:
      return sin(v);
    case UnaryOp::cos:
      return cos(v);
    case UnaryOp::exp:
      return exp(v);
  }
  return v;
}

double value_of(double v) { return v; }
double value_of(const Jet2& v) { return v.value; }

template <class T>
T evaluate(const ExprNode& n, const T& x) {
  return std::visit(
      [&x](const auto& k) -> T {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, ExprNode::Constant>) {
          if constexpr (std::is_same_v<T, Jet2>) {
            return Jet2::constant(k.value);
          } else {
            return k.value;
          }
        } else if constexpr (std::is_same_v<K, ExprNode::Variable>) {
          return x;
        } else if constexpr (std::is_same_v<K, ExprNode::Unary>) {
          return apply(k.op, evaluate(*k.arg, x));
        } else if constexpr (std::is_same_v<K, ExprNode::Binary>) {
          const T a = evaluate(*k.lhs, x);
          const T b = evaluate(*k.rhs, x);
          switch (k.op) {
            case BinaryOp::add:
              return a + b;
            case BinaryOp::sub:
              return a - b;
            case BinaryOp::mul:
              return a * b;
            case BinaryOp::div:
              if (value_of(b) == 0.0) throw std::domain_error("division by zero");
              return a / b;
          }
          return a;
        } else {
          const T b = evaluate(*k.base, x);
          if constexpr (std::is_same_v<T, Jet2>) {
            return pow(b, k.exponent);
          } else {
            return std::pow(b, k.exponent);
          }
        }
      },
      n.kind);
}

bool uses_x(const ExprNode& n) {
  return std::visit(
      [](const auto& k) -> bool {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, ExprNode::Constant>) {
          return false;
        } else if constexpr (std::is_same_v<K, ExprNode::Variable>) {
          return true;
        } else if constexpr (std::is_same_v<K, ExprNode::Unary>) {
          return uses_x(*k.arg);
        } else if constexpr (std::is_same_v<K, ExprNode::Binary>) {
          return uses_x(*k.lhs) || uses_x(*k.rhs);
        } else {
          return uses_x(*k.base);
        }
      },
      n.kind);
}

class Parser {
 public:
  Parser(const std::string& src, const std::map<std::string, double>& constants)
      : src_(src), constants_(constants) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip_space();
    if (pos_ != src_.size()) {
      throw ParseError(std::string("unexpected '") + src_[pos_] + "'", pos_);
    }
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make(ExprNode::Binary{BinaryOp::add, lhs, term()});
      } else if (accept('-')) {
        lhs = make(ExprNode::Binary{BinaryOp::sub, lhs, term()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make(ExprNode::Binary{BinaryOp::mul, lhs, unary()});
      } else if (accept('/')) {
        lhs = make(ExprNode::Binary{BinaryOp::div, lhs, unary()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(ExprNode::Unary{UnaryOp::negate, unary()});
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    skip_space();
    const std::size_t caret = pos_;
    if (!accept('^')) return base;
    NodePtr exponent = unary();
    if (uses_x(*exponent)) throw ParseError("exponent must not depend on x", caret);
    const double p = evaluate(*exponent, 0.0);
    const bool base_const = !uses_x(*base);
    if (base_const) {
      const double b = evaluate(*base, 0.0);
      if (std::floor(p) != p && !(b > 0.0)) {
        throw ParseError("non-integer exponent needs a positive base", caret);
      }
      return make(ExprNode::Constant{std::pow(b, p)});
    }
    if (std::floor(p) != p || p < 0.0 || p > 64.0) {
      throw ParseError("exponent on an x-dependent base must be an integer in 0..64", caret);
    }
    return make(ExprNode::IntPower{base, static_cast<int>(p)});
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of expression", pos_);
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    if (accept('(')) {
      NodePtr e = expr();
      expect(')');
      return e;
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  NodePtr number() {
    const char* begin = src_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) throw ParseError("malformed number", pos_);
    pos_ += static_cast<std::size_t>(end - begin);
    return make(ExprNode::Constant{v});
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name = src_.substr(start, pos_ - start);
    if (name == "x") return make(ExprNode::Variable{});
    if (name == "pi") return make(ExprNode::Constant{std::numbers::pi});
    if (name == "sin" || name == "cos" || name == "exp") {
      expect('(');
      NodePtr arg = expr();
      expect(')');
      const UnaryOp op = name == "sin" ? UnaryOp::sin : name == "cos" ? UnaryOp::cos : UnaryOp::exp;
      return make(ExprNode::Unary{op, arg});
    }
    if (auto it = constants_.find(name); it != constants_.end()) {
      return make(ExprNode::Constant{it->second});
    }
    throw ParseError("unknown identifier '" + name + "'", start);
  }

  const std::string& src_;
  const std::map<std::string, double>& constants_;
  std::size_t pos_ = 0;
};

}  // namespace

double ExpressionTree::eval(double x) const {
  if (!root_) throw std::logic_error("evaluating an empty expression");
  return evaluate(*root_, x);
}

Jet2 ExpressionTree::eval_jet(double x) const {
  if (!root_) throw std::logic_error("evaluating an empty expression");
  return evaluate(*root_, Jet2::variable(x));
}

bool ExpressionTree::depends_on_x() const { return root_ && uses_x(*root_); }

ExpressionTree parse_expression(const std::string& src, const std::map<std::string, double>& constants) {
  ExpressionTree t;
  t.root_ = Parser(src, constants).parse();
  t.source_ = src;
  return t;
}

Jet2 eval_jet(const ExpressionTree& e, double x) { return e.eval_jet(x); }

}  // namespace gfmg
