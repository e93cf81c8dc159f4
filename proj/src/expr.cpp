#include "tmk/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>

namespace tmk {

ExprPtr Expr::make_number(double v) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Number;
  e->number = v;
  return e;
}

ExprPtr Expr::make_coord(int index0) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Coord;
  e->coord = index0;
  return e;
}

ExprPtr Expr::make_unary(Kind k, ExprPtr x) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->a = std::move(x);
  return e;
}

ExprPtr Expr::make_binary(Kind k, ExprPtr x, ExprPtr y) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->a = std::move(x);
  e->b = std::move(y);
  return e;
}

ExprPtr Expr::make_func(FuncId f, ExprPtr x) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Func;
  e->func = f;
  e->a = std::move(x);
  return e;
}

ExprPtr Expr::make_pow(ExprPtr x, long long p, long long q) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Pow;
  e->a = std::move(x);
  e->pow_p = p;
  e->pow_q = q;
  return e;
}

namespace {

class Parser {
public:
  Parser(const std::string& src, int n) : src_(src), n_(n) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    skip_ws();
    if (pos_ != src_.size()) {
      throw SyntaxError("unexpected trailing input", pos_);
    }
    return e;
  }

private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  bool peek_char(char c) {
    skip_ws();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  bool accept(char c) {
    if (peek_char(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      throw SyntaxError(std::string("expected '") + c + "'", pos_);
    }
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::make_binary(Expr::Kind::Add, lhs, term());
      } else if (accept('-')) {
        lhs = Expr::make_binary(Expr::Kind::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr term() {
    ExprPtr lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::make_binary(Expr::Kind::Mul, lhs, factor());
      } else if (accept('/')) {
        lhs = Expr::make_binary(Expr::Kind::Div, lhs, factor());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr factor() {
    skip_ws();
    if (pos_ >= src_.size()) throw SyntaxError("unexpected end of input", pos_);
    const char c = src_[pos_];
    if (c == '-') {
      ++pos_;
      return Expr::make_unary(Expr::Kind::Neg, factor());
    }
    if (c == '(') {
      ++pos_;
      ExprPtr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return number();
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      return identifier();
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
  }

  ExprPtr number() {
    const std::size_t start = pos_;
    const char* begin = src_.c_str() + start;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) throw SyntaxError("malformed number", start);
    pos_ = start + static_cast<std::size_t>(end - begin);
    return Expr::make_number(v);
  }

  long long integer() {
    skip_ws();
    const std::size_t start = pos_;
    bool neg = false;
    if (accept('-')) neg = true;
    skip_ws();
    std::size_t digits_start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    if (pos_ == digits_start) throw SyntaxError("expected integer", start);
    long long v = 0;
    auto res = std::from_chars(src_.c_str() + digits_start, src_.c_str() + pos_, v);
    if (res.ec != std::errc()) throw SyntaxError("integer out of range", start);
    return neg ? -v : v;
  }

  ExprPtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    const std::string name = src_.substr(start, pos_ - start);

    // Coordinate reference: 'x' followed by digits only.
    if (name.size() >= 2 && name[0] == 'x' &&
        name.find_first_not_of("0123456789", 1) == std::string::npos) {
      const long index1 = std::strtol(name.c_str() + 1, nullptr, 10);
      if (index1 < 1 || index1 > n_) {
        throw UnknownSymbol("coordinate " + name + " out of range for dimension " +
                            std::to_string(n_));
      }
      return Expr::make_coord(static_cast<int>(index1 - 1));
    }

    if (name == "pow") {
      expect('(');
      ExprPtr base = expr();
      if (peek_char(')')) {
        throw ArityError("pow expects two arguments");
      }
      expect(',');
      const long long p = integer();
      long long q = 1;
      if (accept('/')) q = integer();
      if (q == 0) throw SyntaxError("pow denominator must be nonzero", pos_);
      expect(')');
      return Expr::make_pow(base, p, q);
    }

    Expr::FuncId f;
    if (name == "exp") f = Expr::FuncId::Exp;
    else if (name == "log") f = Expr::FuncId::Log;
    else if (name == "sqrt") f = Expr::FuncId::Sqrt;
    else if (name == "sin") f = Expr::FuncId::Sin;
    else if (name == "cos") f = Expr::FuncId::Cos;
    else {
      throw UnknownSymbol("unknown identifier '" + name + "'");
    }
    expect('(');
    ExprPtr arg = expr();
    if (peek_char(',')) {
      throw ArityError(name + " expects one argument");
    }
    expect(')');
    return Expr::make_func(f, arg);
  }

  const std::string& src_;
  int n_;
  std::size_t pos_ = 0;
};

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
      return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div:
      return 2;
    case Expr::Kind::Neg:
      return 3;
    default:
      return 4;
  }
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void print_rec(const ExprPtr& e, std::string& out) {
  auto child = [&out](const ExprPtr& c, int min_prec) {
    if (precedence(*c) < min_prec) {
      out += '(';
      print_rec(c, out);
      out += ')';
    } else {
      print_rec(c, out);
    }
  };
  switch (e->kind) {
    case Expr::Kind::Number: {
      const double v = e->number;
      if (v < 0.0 || std::signbit(v)) {
        out += '(';
        out += format_double(v);
        out += ')';
      } else {
        out += format_double(v);
      }
      break;
    }
    case Expr::Kind::Coord:
      out += 'x';
      out += std::to_string(e->coord + 1);
      break;
    case Expr::Kind::Neg:
      out += '-';
      child(e->a, 3);
      break;
    // Right children of +,-,*,/ are parenthesized one level tighter than
    // the parser's left associativity so the reparsed tree regroups exactly
    // as printed (bitwise-identical evaluation).
    case Expr::Kind::Add:
      child(e->a, 1);
      out += " + ";
      child(e->b, 2);
      break;
    case Expr::Kind::Sub:
      child(e->a, 1);
      out += " - ";
      child(e->b, 2);
      break;
    case Expr::Kind::Mul:
      child(e->a, 2);
      out += "*";
      child(e->b, 3);
      break;
    case Expr::Kind::Div:
      child(e->a, 2);
      out += "/";
      child(e->b, 3);
      break;
    case Expr::Kind::Func: {
      switch (e->func) {
        case Expr::FuncId::Exp: out += "exp"; break;
        case Expr::FuncId::Log: out += "log"; break;
        case Expr::FuncId::Sqrt: out += "sqrt"; break;
        case Expr::FuncId::Sin: out += "sin"; break;
        case Expr::FuncId::Cos: out += "cos"; break;
      }
      out += '(';
      print_rec(e->a, out);
      out += ')';
      break;
    }
    case Expr::Kind::Pow:
      out += "pow(";
      print_rec(e->a, out);
      out += ", ";
      out += std::to_string(e->pow_p);
      if (e->pow_q != 1) {
        out += '/';
        out += std::to_string(e->pow_q);
      }
      out += ')';
      break;
  }
}

double pow_value(double v, long long p, long long q) {
  if (q < 0) {
    p = -p;
    q = -q;
  }
  if (q == 1) {
    if (p == 0) return 1.0;
    if (v == 0.0 && p < 0) throw DomainError("negative power of zero");
    return std::pow(v, static_cast<double>(p));
  }
  if (v <= 0.0) {
    throw DomainError("fractional power of non-positive value " + std::to_string(v));
  }
  return std::pow(v, static_cast<double>(p) / static_cast<double>(q));
}

}  // namespace

ExprPtr parse_expr(const std::string& source, int n) {
  return Parser(source, n).parse();
}

std::string print_expr(const ExprPtr& e) {
  std::string out;
  print_rec(e, out);
  return out;
}

double eval_value(const ExprPtr& e, std::span<const double> x) {
  switch (e->kind) {
    case Expr::Kind::Number:
      return e->number;
    case Expr::Kind::Coord:
      return x[static_cast<std::size_t>(e->coord)];
    case Expr::Kind::Neg:
      return -eval_value(e->a, x);
    case Expr::Kind::Add:
      return eval_value(e->a, x) + eval_value(e->b, x);
    case Expr::Kind::Sub:
      return eval_value(e->a, x) - eval_value(e->b, x);
    case Expr::Kind::Mul:
      return eval_value(e->a, x) * eval_value(e->b, x);
    case Expr::Kind::Div: {
      const double d = eval_value(e->b, x);
      if (d == 0.0) throw DomainError("division by zero");
      return eval_value(e->a, x) * (1.0 / d);
    }
    case Expr::Kind::Func: {
      const double u = eval_value(e->a, x);
      switch (e->func) {
        case Expr::FuncId::Exp:
          return std::exp(u);
        case Expr::FuncId::Log:
          if (u <= 0.0) throw DomainError("log of non-positive value " + std::to_string(u));
          return std::log(u);
        case Expr::FuncId::Sqrt:
          if (u < 0.0) throw DomainError("sqrt of negative value " + std::to_string(u));
          return std::sqrt(u);
        case Expr::FuncId::Sin:
          return std::sin(u);
        case Expr::FuncId::Cos:
          return std::cos(u);
      }
      break;
    }
    case Expr::Kind::Pow:
      return pow_value(eval_value(e->a, x), e->pow_p, e->pow_q);
  }
  throw Error("eval_value: corrupt expression node");
}

Jet eval_jet(const ExprPtr& e, std::span<const double> x, int order) {
  const int n = static_cast<int>(x.size());
  switch (e->kind) {
    case Expr::Kind::Number:
      return Jet::constant(n, order, e->number);
    case Expr::Kind::Coord:
      return Jet::coordinate(n, order, e->coord, x[static_cast<std::size_t>(e->coord)]);
    case Expr::Kind::Neg:
      return -eval_jet(e->a, x, order);
    case Expr::Kind::Add:
      return eval_jet(e->a, x, order) + eval_jet(e->b, x, order);
    case Expr::Kind::Sub:
      return eval_jet(e->a, x, order) - eval_jet(e->b, x, order);
    case Expr::Kind::Mul:
      return eval_jet(e->a, x, order) * eval_jet(e->b, x, order);
    case Expr::Kind::Div:
      return eval_jet(e->a, x, order) / eval_jet(e->b, x, order);
    case Expr::Kind::Func: {
      const Jet u = eval_jet(e->a, x, order);
      switch (e->func) {
        case Expr::FuncId::Exp: return exp(u);
        case Expr::FuncId::Log: return log(u);
        case Expr::FuncId::Sqrt: return sqrt(u);
        case Expr::FuncId::Sin: return sin(u);
        case Expr::FuncId::Cos: return cos(u);
      }
      break;
    }
    case Expr::Kind::Pow:
      return pow_rational(eval_jet(e->a, x, order), e->pow_p, e->pow_q);
  }
  throw Error("eval_jet: corrupt expression node");
}

}  // namespace tmk
