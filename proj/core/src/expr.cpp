#include "circgeo/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>
#include <system_error>
#include <type_traits>
#include <vector>

#include "circgeo/errors.hpp"

namespace circgeo {

namespace {

ExprPtr make(auto node) { return std::make_shared<const ExprNode>(ExprNode{std::move(node)}); }

bool is_integral_exponent(double r) { return std::trunc(r) == r && std::fabs(r) < 2147483647.0; }

const std::vector<std::string> kOperand = {"number", "x1", "x2", "x3", "function", "'('", "'-'"};

class Parser {
 public:
  explicit Parser(std::string_view source) : src_(source) {}

  ExprPtr parse() {
    skip_ws();
    if (pos_ == src_.size()) throw ParseError(pos_, {"expression"}, "empty input");
    ExprPtr e = expr();
    skip_ws();
    if (pos_ != src_.size())
      throw ParseError(pos_, {"'+'", "'-'", "'*'", "'/'", "end of input"},
                       std::string("unexpected '") + src_[pos_] + "'");
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail({std::string("'") + c + "'"});
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    skip_ws();
    std::string what = pos_ < src_.size() ? std::string("unexpected '") + src_[pos_] + "'"
                                          : std::string("unexpected end of input");
    std::string list;
    for (const auto& e : expected) list += (list.empty() ? "" : ", ") + e;
    throw ParseError(pos_, std::move(expected), what + ", expected one of {" + list + "}");
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = make(Binary{BinaryOp::Add, lhs, term()});
      else if (accept('-'))
        lhs = make(Binary{BinaryOp::Sub, lhs, term()});
      else
        return lhs;
    }
  }

  ExprPtr term() {
    ExprPtr lhs = factor();
    for (;;) {
      if (accept('*'))
        lhs = make(Binary{BinaryOp::Mul, lhs, factor()});
      else if (accept('/'))
        lhs = make(Binary{BinaryOp::Div, lhs, factor()});
      else
        return lhs;
    }
  }

  ExprPtr factor() {
    if (accept('-')) return make(Unary{UnaryOp::Neg, factor()});
    ExprPtr base = atom();
    if (accept('^')) {
      const bool negative = accept('-');
      skip_ws();
      if (!starts_number()) fail({"number"});
      const double e = number();
      return make(Power{base, negative ? -e : e});
    }
    return base;
  }

  bool starts_number() const {
    if (pos_ >= src_.size()) return false;
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return true;
    return c == '.' && pos_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]));
  }

  double number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
        pos_ = look;
        digits();
      }
    }
    double value = 0.0;
    const auto [end, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
    if (ec != std::errc() || end != src_.data() + pos_ || !std::isfinite(value))
      throw ParseError(start, {"number"}, "number literal out of range");
    return value;
  }

  ExprPtr atom() {
    skip_ws();
    if (starts_number()) return make(Constant{number()});
    if (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) {
      const std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      const std::string_view id = src_.substr(start, pos_ - start);
      if (id == "x1") return make(Coordinate{1});
      if (id == "x2") return make(Coordinate{2});
      if (id == "x3") return make(Coordinate{3});
      UnaryOp op;
      if (id == "sqrt")
        op = UnaryOp::Sqrt;
      else if (id == "exp")
        op = UnaryOp::Exp;
      else if (id == "log")
        op = UnaryOp::Log;
      else if (id == "sin")
        op = UnaryOp::Sin;
      else if (id == "cos")
        op = UnaryOp::Cos;
      else
        throw ParseError(start, {"x1", "x2", "x3", "sqrt", "exp", "log", "sin", "cos"},
                         "unknown identifier '" + std::string(id) + "'");
      expect('(');
      ExprPtr arg = expr();
      expect(')');
      return make(Unary{op, arg});
    }
    if (accept('(')) {
      ExprPtr inner = expr();
      expect(')');
      return inner;
    }
    fail(kOperand);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

std::string format_number(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, end);
}

const char* unary_name(UnaryOp op) {
  switch (op) {
    case UnaryOp::Neg: return "-";
    case UnaryOp::Sqrt: return "sqrt";
    case UnaryOp::Exp: return "exp";
    case UnaryOp::Log: return "log";
    case UnaryOp::Sin: return "sin";
    case UnaryOp::Cos: return "cos";
  }
  return "?";
}

char binary_symbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return '+';
    case BinaryOp::Sub: return '-';
    case BinaryOp::Mul: return '*';
    case BinaryOp::Div: return '/';
  }
  return '?';
}

// Shared evaluator for plain doubles and jets. Domain checks run on the value
// before each operation so both paths reject the same inputs and report the
// same subexpression.
template <class T>
class Evaluator {
 public:
  Evaluator(const Point& p, const char* operation) : p_(p), operation_(operation) {}

  T operator()(const ExprNode& node) const {
    T r = std::visit([&](const auto& n) { return eval(node, n); }, node.node);
    if (!finite(r)) fail(node, "non-finite result");
    return r;
  }

 private:
  static constexpr bool kJet = std::is_same_v<T, Jet2>;

  static double val(const T& t) {
    if constexpr (kJet)
      return t.value();
    else
      return t;
  }
  static bool finite(const T& t) {
    if constexpr (kJet)
      return t.is_finite();
    else
      return std::isfinite(t);
  }

  [[noreturn]] void fail(const ExprNode& node, const char* why) const {
    throw DomainError(operation_, to_string(node), why);
  }

  T eval(const ExprNode&, const Constant& c) const { return T(c.value); }

  T eval(const ExprNode&, const Coordinate& c) const {
    if constexpr (kJet)
      return Jet2::variable(c.index, p_);
    else
      return p_[static_cast<std::size_t>(c.index - 1)];
  }

  T eval(const ExprNode& node, const Unary& u) const {
    using std::cos, std::exp, std::log, std::sin, std::sqrt;
    const T a = (*this)(*u.arg);
    const double v = val(a);
    switch (u.op) {
      case UnaryOp::Neg: return -a;
      case UnaryOp::Sqrt:
        if (v < 0.0 || (kJet && v == 0.0)) fail(node, "square root of a negative number");
        return sqrt(a);
      case UnaryOp::Exp: return exp(a);
      case UnaryOp::Log:
        if (!(v > 0.0)) fail(node, "logarithm of a non-positive number");
        return log(a);
      case UnaryOp::Sin: return sin(a);
      case UnaryOp::Cos: return cos(a);
    }
    fail(node, "unknown unary operation");
  }

  T eval(const ExprNode& node, const Binary& b) const {
    const T lhs = (*this)(*b.lhs);
    const T rhs = (*this)(*b.rhs);
    switch (b.op) {
      case BinaryOp::Add: return lhs + rhs;
      case BinaryOp::Sub: return lhs - rhs;
      case BinaryOp::Mul: return lhs * rhs;
      case BinaryOp::Div:
        if (val(rhs) == 0.0) fail(node, "division by zero");
        return lhs / rhs;
    }
    fail(node, "unknown binary operation");
  }

  T eval(const ExprNode& node, const Power& pw) const {
    const T base = (*this)(*pw.base);
    const double v = val(base);
    if (is_integral_exponent(pw.exponent)) {
      const int n = static_cast<int>(pw.exponent);
      if (v == 0.0 && n < 0) fail(node, "negative power of zero");
      if constexpr (kJet) {
        return pow(base, n);
      } else {
        if (n == 0) return 1.0;
        if (n == 1) return base;
        return std::pow(v, n);
      }
    }
    if (v < 0.0) fail(node, "real power of a negative number");
    if (v == 0.0 && (kJet || pw.exponent < 0.0)) fail(node, "real power of zero is not differentiable");
    if constexpr (kJet)
      return pow(base, pw.exponent);
    else
      return std::pow(v, pw.exponent);
  }

  const Point& p_;
  const char* operation_;
};

bool equal(const ExprNode& a, const ExprNode& b);

struct EqualVisitor {
  const ExprNode& other;
  bool operator()(const Constant& c) const {
    const auto* o = std::get_if<Constant>(&other.node);
    return o && o->value == c.value;
  }
  bool operator()(const Coordinate& c) const {
    const auto* o = std::get_if<Coordinate>(&other.node);
    return o && o->index == c.index;
  }
  bool operator()(const Unary& u) const {
    const auto* o = std::get_if<Unary>(&other.node);
    return o && o->op == u.op && equal(*o->arg, *u.arg);
  }
  bool operator()(const Binary& b) const {
    const auto* o = std::get_if<Binary>(&other.node);
    return o && o->op == b.op && equal(*o->lhs, *b.lhs) && equal(*o->rhs, *b.rhs);
  }
  bool operator()(const Power& p) const {
    const auto* o = std::get_if<Power>(&other.node);
    return o && o->exponent == p.exponent && equal(*o->base, *p.base);
  }
};

bool equal(const ExprNode& a, const ExprNode& b) { return std::visit(EqualVisitor{b}, a.node); }

}  // namespace

std::string to_string(const ExprNode& node) {
  struct Printer {
    std::string operator()(const Constant& c) const {
      return c.value < 0.0 ? "(" + format_number(c.value) + ")" : format_number(c.value);
    }
    std::string operator()(const Coordinate& c) const { return "x" + std::to_string(c.index); }
    std::string operator()(const Unary& u) const {
      if (u.op == UnaryOp::Neg) return "(-" + to_string(*u.arg) + ")";
      return std::string(unary_name(u.op)) + "(" + to_string(*u.arg) + ")";
    }
    std::string operator()(const Binary& b) const {
      return "(" + to_string(*b.lhs) + " " + binary_symbol(b.op) + " " + to_string(*b.rhs) + ")";
    }
    std::string operator()(const Power& p) const {
      return "(" + to_string(*p.base) + ")^" + format_number(p.exponent);
    }
  };
  return std::visit(Printer{}, node.node);
}

ScalarFieldExpr ScalarFieldExpr::parse(std::string_view source) {
  return ScalarFieldExpr(Parser(source).parse());
}

ScalarFieldExpr::ScalarFieldExpr() : root_(make(Constant{0.0})) {}

ScalarFieldExpr ScalarFieldExpr::constant(double c) { return ScalarFieldExpr(make(Constant{c})); }

ScalarFieldExpr ScalarFieldExpr::coordinate(int index) {
  if (index < 1 || index > 3)
    throw UsageError("coordinate", "coordinate index " + std::to_string(index) + " out of range 1..3");
  return ScalarFieldExpr(make(Coordinate{index}));
}

ScalarFieldExpr ScalarFieldExpr::unary(UnaryOp op, const ScalarFieldExpr& arg) {
  return ScalarFieldExpr(make(Unary{op, arg.root_}));
}

ScalarFieldExpr ScalarFieldExpr::binary(BinaryOp op, const ScalarFieldExpr& lhs,
                                        const ScalarFieldExpr& rhs) {
  return ScalarFieldExpr(make(Binary{op, lhs.root_, rhs.root_}));
}

ScalarFieldExpr ScalarFieldExpr::power(const ScalarFieldExpr& base, double exponent) {
  return ScalarFieldExpr(make(Power{base.root_, exponent}));
}

std::string ScalarFieldExpr::to_string() const { return circgeo::to_string(*root_); }

double ScalarFieldExpr::value(const Point& p) const {
  return Evaluator<double>(p, "eval_value")(*root_);
}

Jet2 ScalarFieldExpr::jet(const Point& p) const { return Evaluator<Jet2>(p, "eval_jet")(*root_); }

bool operator==(const ScalarFieldExpr& a, const ScalarFieldExpr& b) {
  return equal(*a.root_, *b.root_);
}

}  // namespace circgeo
