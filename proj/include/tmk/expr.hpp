#pragma once

#include <memory>
#include <span>
#include <string>

#include "tmk/jet.hpp"

namespace tmk {

// Closed-form scalar expressions over chart coordinates x1..xn.
//
// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := NUMBER | COORD | FUNC '(' expr ')' | 'pow' '(' expr ',' RAT ')'
//           | '(' expr ')' | '-' factor
//   COORD  := 'x' DIGIT+          (1-based, bounded by the chart dimension)
//   FUNC   := exp | log | sqrt | sin | cos
//   RAT    := INT | INT '/' INT
class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

class Expr {
public:
  enum class Kind { Number, Coord, Neg, Add, Sub, Mul, Div, Func, Pow };
  enum class FuncId { Exp, Log, Sqrt, Sin, Cos };

  Kind kind;
  double number = 0.0;      // Number
  int coord = 0;            // Coord, 0-based
  FuncId func = FuncId::Exp;
  long long pow_p = 0, pow_q = 1;
  ExprPtr a, b;

  static ExprPtr make_number(double v);
  static ExprPtr make_coord(int index0);
  static ExprPtr make_unary(Kind k, ExprPtr x);
  static ExprPtr make_binary(Kind k, ExprPtr x, ExprPtr y);
  static ExprPtr make_func(FuncId f, ExprPtr x);
  static ExprPtr make_pow(ExprPtr x, long long p, long long q);
};

// Parses `source` against the grammar with coordinates x1..xn.
// Throws SyntaxError (position-tagged), ArityError, UnknownSymbol.
ExprPtr parse_expr(const std::string& source, int n);

// Prints an expression that reparses to an identically-evaluating tree.
std::string print_expr(const ExprPtr& e);

// Plain-real evaluation.  Division mirrors the jet path (multiply by the
// reciprocal) so values agree bitwise with eval_jet(...).value().
double eval_value(const ExprPtr& e, std::span<const double> x);

// Jet evaluation with exact derivatives to `order` (0..3).
Jet eval_jet(const ExprPtr& e, std::span<const double> x, int order);

}  // namespace tmk
