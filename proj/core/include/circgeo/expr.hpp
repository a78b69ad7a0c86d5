#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>

#include "circgeo/jet.hpp"
#include "circgeo/types.hpp"

namespace circgeo {

// Expression trees for smooth scalar fields of X^1, X^2, X^3.
//
// Grammar (whitespace-insensitive):
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := '-' factor | atom ('^' ['-'] number)?
//   atom   := number | 'x1' | 'x2' | 'x3' | func '(' expr ')' | '(' expr ')'
//   func   := 'sqrt' | 'exp' | 'log' | 'sin' | 'cos'
//
// Unary minus applies to a whole factor, so "-x1^2" is -(x1^2). There is no
// implicit multiplication: "2x1" is a syntax error.

enum class UnaryOp { Neg, Sqrt, Exp, Log, Sin, Cos };
enum class BinaryOp { Add, Sub, Mul, Div };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct Constant {
  double value;
};
struct Coordinate {
  int index;  // 1..3
};
struct Unary {
  UnaryOp op;
  ExprPtr arg;
};
struct Binary {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};
struct Power {
  ExprPtr base;
  double exponent;
};

struct ExprNode {
  std::variant<Constant, Coordinate, Unary, Binary, Power> node;
};

// Immutable after construction; copies share the tree.
class ScalarFieldExpr {
 public:
  // Throws ParseError (offset + expected tokens) on malformed input.
  static ScalarFieldExpr parse(std::string_view source);

  static ScalarFieldExpr constant(double c);
  static ScalarFieldExpr coordinate(int index);
  static ScalarFieldExpr unary(UnaryOp op, const ScalarFieldExpr& arg);
  static ScalarFieldExpr binary(BinaryOp op, const ScalarFieldExpr& lhs, const ScalarFieldExpr& rhs);
  static ScalarFieldExpr power(const ScalarFieldExpr& base, double exponent);

  const ExprNode& root() const { return *root_; }

  // The constant 0.
  ScalarFieldExpr();

  // Fully parenthesised text that parses back to the same tree.
  std::string to_string() const;

  // Throws DomainError naming the offending subexpression.
  double value(const Point& p) const;
  Jet2 jet(const Point& p) const;

  friend bool operator==(const ScalarFieldExpr& a, const ScalarFieldExpr& b);

 private:
  explicit ScalarFieldExpr(ExprPtr root) : root_(std::move(root)) {}
  ExprPtr root_;
};

std::string to_string(const ExprNode& node);

inline ScalarFieldExpr parse(std::string_view source) { return ScalarFieldExpr::parse(source); }
inline double eval_value(const ScalarFieldExpr& f, const Point& p) { return f.value(p); }
inline Jet2 eval_jet(const ScalarFieldExpr& f, const Point& p) { return f.jet(p); }

}  // namespace circgeo
