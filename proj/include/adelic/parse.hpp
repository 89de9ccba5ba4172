#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "adelic/algebra.hpp"

namespace adelic {

/// Expression syntax shared by every textual input: integers, identifiers,
/// `+ - * / ^` (integer exponents, possibly negative), parentheses, implicit
/// multiplication by juxtaposition, and adele literals
/// `(generic: <expr>; at @a: <expr>; at @inf: <expr>)`.
struct Expr {
  enum class Kind { Num, Var, Add, Sub, Mul, Div, Neg, Pow, AdeleLit };
  Kind kind = Kind::Num;
  mpz_class num;
  std::string name;
  std::int64_t exp = 0;
  std::vector<std::shared_ptr<const Expr>> kids;
  // adele literals: kids[0] is the generic part
  std::vector<std::pair<std::string, std::shared_ptr<const Expr>>> overrides;
};
using ExprPtr = std::shared_ptr<const Expr>;

ExprPtr parse_expr(std::string_view text);

/// `@3`, `@-1`, `@inf`, `@(z+1)`.
Place parse_place(std::string_view text, const Field& k);

/// Rational function in the single variable `var` (z names the generator of
/// F_{p^m}).
RatFn eval_ratfn(const Expr& e, const Field& k, const std::string& var);
RatFn parse_ratfn(std::string_view text, const Field& k, const std::string& var = "u");

/// A local element written in t (exact).
LocalElem parse_local(std::string_view text, const Field& k);

Adele eval_adele(const Expr& e, const Field& k);
Adele parse_adele(std::string_view text, const Field& k);

/// Polynomial in T with adele coefficients.
AdelePoly eval_adele_poly(const Expr& e, const Field& k);
AdelePoly parse_adele_poly(std::string_view text, const Field& k);
AdelicPoly parse_adelic_poly(std::string_view text, const Field& k);
AlgebraElement parse_element(std::string_view text, const AdelicPoly& p);

/// Polynomial in `var` with coefficients in Sigma = k(u).
Polynomial<RatFn> parse_sigma_poly(std::string_view text, const Field& k, const std::string& var);

std::string to_string(const Polynomial<RatFn>& p, const std::string& var);

/// Walk an expression with a context supplying the value semantics.
/// The context provides number(mpz), var(name), adele(expr), div(a, b) and
/// pow(a, e); + - * and unary minus come from the value type.
template <class V, class Ctx>
V evaluate(const Expr& e, Ctx& ctx) {
  switch (e.kind) {
    case Expr::Kind::Num:
      return ctx.number(e.num);
    case Expr::Kind::Var:
      return ctx.var(e.name);
    case Expr::Kind::Add:
      return evaluate<V>(*e.kids[0], ctx) + evaluate<V>(*e.kids[1], ctx);
    case Expr::Kind::Sub:
      return evaluate<V>(*e.kids[0], ctx) - evaluate<V>(*e.kids[1], ctx);
    case Expr::Kind::Mul:
      return evaluate<V>(*e.kids[0], ctx) * evaluate<V>(*e.kids[1], ctx);
    case Expr::Kind::Div:
      return ctx.div(evaluate<V>(*e.kids[0], ctx), evaluate<V>(*e.kids[1], ctx));
    case Expr::Kind::Neg:
      return -evaluate<V>(*e.kids[0], ctx);
    case Expr::Kind::Pow:
      return ctx.pow(evaluate<V>(*e.kids[0], ctx), e.exp);
    case Expr::Kind::AdeleLit:
      return ctx.adele(e);
  }
  throw ParseError("bad expression");
}

}  // namespace adelic
