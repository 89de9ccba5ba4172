#include "adelic/parse.hpp"

#include <cctype>

namespace adelic {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  ExprPtr parse_all() {
    ExprPtr e = at_generic_keyword() ? adele_literal() : expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at column " + std::to_string(pos_ + 1) + " in '" + std::string(s_) + "'");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  bool at_generic_keyword() {
    skip_ws();
    return s_.substr(pos_, 7) == "generic";
  }

  static ExprPtr make(Expr::Kind k, std::vector<ExprPtr> kids) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->kids = std::move(kids);
    return e;
  }

  ExprPtr expr() {
    ExprPtr left = term();
    while (true) {
      if (eat('+'))
        left = make(Expr::Kind::Add, {left, term()});
      else if (eat('-'))
        left = make(Expr::Kind::Sub, {left, term()});
      else
        return left;
    }
  }

  bool starts_primary() {
    skip_ws();
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return c == '(' || std::isalpha(static_cast<unsigned char>(c));
  }

  ExprPtr term() {
    ExprPtr left = unary();
    while (true) {
      if (eat('*'))
        left = make(Expr::Kind::Mul, {left, unary()});
      else if (eat('/'))
        left = make(Expr::Kind::Div, {left, unary()});
      else if (starts_primary())
        left = make(Expr::Kind::Mul, {left, power()});
      else
        return left;
    }
  }

  ExprPtr unary() {
    if (eat('-')) return make(Expr::Kind::Neg, {unary()});
    if (eat('+')) return unary();
    return power();
  }

  std::int64_t signed_int() {
    skip_ws();
    bool neg = false;
    if (eat('(')) {
      const std::int64_t v = signed_int();
      expect(')');
      return v;
    }
    if (eat('-')) neg = true;
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer exponent");
    const std::int64_t v = std::stoll(std::string(s_.substr(start, pos_ - start)));
    return neg ? -v : v;
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (eat('^')) {
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Pow;
      e->kids = {base};
      e->exp = signed_int();
      return e;
    }
    return base;
  }

  ExprPtr primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr inner = at_generic_keyword() ? adele_literal() : expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Num;
      e->num = mpz_class(std::string(s_.substr(start, pos_ - start)));
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Var;
      e->name = std::string(s_.substr(start, pos_ - start));
      return e;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string place_token() {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != '@') fail("expected a place '@...'");
    const std::size_t start = pos_++;
    if (pos_ < s_.size() && s_[pos_] == '(') {
      int depth = 0;
      while (pos_ < s_.size()) {
        if (s_[pos_] == '(') ++depth;
        if (s_[pos_] == ')' && --depth == 0) {
          ++pos_;
          break;
        }
        ++pos_;
      }
    } else {
      if (pos_ < s_.size() && s_[pos_] == '-') ++pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    return std::string(s_.substr(start, pos_ - start));
  }

  void keyword(std::string_view kw) {
    skip_ws();
    if (s_.substr(pos_, kw.size()) != kw) fail("expected '" + std::string(kw) + "'");
    pos_ += kw.size();
  }

  ExprPtr adele_literal() {
    keyword("generic");
    expect(':');
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::AdeleLit;
    e->kids = {expr()};
    while (eat(';')) {
      keyword("at");
      std::string place = place_token();
      expect(':');
      e->overrides.emplace_back(std::move(place), expr());
    }
    return e;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

FieldElem number_in(const Field& k, const mpz_class& n) { return k.from_rational(mpq_class(n)); }

FieldElem generator_of(const Field& k) {
  if (k.is_rational() || k.degree() == 1) throw ParseError("z names the generator of F_{p^m} with m > 1 only");
  return k.generator();
}

struct RatFnCtx {
  const Field& k;
  std::string v;
  RatFn number(const mpz_class& n) { return RatFn::constant(number_in(k, n)); }
  RatFn var(const std::string& name) {
    if (name == v) return RatFn::variable(k);
    if (name == "z") return RatFn::constant(generator_of(k));
    throw ParseError("unknown symbol '" + name + "' (expected " + v + ")");
  }
  RatFn adele(const Expr&) { throw ParseError("adele literal not allowed here"); }
  RatFn div(const RatFn& a, const RatFn& b) {
    if (b.is_zero()) throw ParseError("division by zero");
    return a / b;
  }
  RatFn pow(const RatFn& a, std::int64_t e) {
    if (e < 0 && a.is_zero()) throw ParseError("division by zero");
    return a.pow(e);
  }
};

struct AdeleCtx {
  const Field& k;
  Adele number(const mpz_class& n) { return Adele::constant(number_in(k, n)); }
  Adele var(const std::string& name) {
    if (name == "u") return Adele(RatFn::variable(k));
    if (name == "z") return Adele::constant(generator_of(k));
    throw ParseError("unknown symbol '" + name + "' in an adele (expected u)");
  }
  Adele adele(const Expr& e) {
    const RatFn g = eval_ratfn(*e.kids[0], k, "u");
    Adele::Overrides o;
    for (const auto& [place, ex] : e.overrides) {
      const Place x = parse_place(place, k);
      if (o.count(x)) throw ParseError("duplicate override at " + place);
      o.emplace(x, LocalElem(eval_ratfn(*ex, k, "t")));
    }
    return Adele(g, std::move(o));
  }
  Adele div(const Adele& a, const Adele& b) {
    if (!is_idele(b)) throw ParseError("division by a non-invertible adele");
    return a / b;
  }
  Adele pow(const Adele& a, std::int64_t e) {
    if (e < 0 && !is_idele(a)) throw ParseError("negative power of a non-invertible adele");
    return a.pow(e);
  }
};

struct AdelePolyCtx {
  const Field& k;
  AdeleCtx inner{k};
  AdelePoly number(const mpz_class& n) { return AdelePoly::constant(inner.number(n)); }
  AdelePoly var(const std::string& name) {
    if (name == "T") return AdelePoly::x(Adele::zero(k));
    return AdelePoly::constant(inner.var(name));
  }
  AdelePoly adele(const Expr& e) { return AdelePoly::constant(inner.adele(e)); }
  AdelePoly div(const AdelePoly& a, const AdelePoly& b) {
    if (b.degree() != 0) throw ParseError("can only divide by expressions free of T");
    const Adele inv = inner.div(Adele::constant(k.one()), b[0]);
    return a.scaled(inv);
  }
  AdelePoly pow(const AdelePoly& a, std::int64_t e) {
    if (e >= 0) return a.pow(static_cast<unsigned>(e));
    if (a.degree() != 0) throw ParseError("negative power of an expression in T");
    return AdelePoly::constant(inner.pow(a[0], e));
  }
};

struct SigmaPolyCtx {
  const Field& k;
  std::string v;
  using SP = Polynomial<RatFn>;
  RatFnCtx inner{k, "u"};
  SP number(const mpz_class& n) { return SP::constant(inner.number(n)); }
  SP var(const std::string& name) {
    if (name == v) return SP::x(RatFn(k));
    return SP::constant(inner.var(name));
  }
  SP adele(const Expr&) { throw ParseError("adele literal not allowed here"); }
  SP div(const SP& a, const SP& b) {
    if (b.degree() != 0) throw ParseError("can only divide by expressions free of " + v);
    return a.scaled(inner.div(RatFn::constant(k.one()), b[0]));
  }
  SP pow(const SP& a, std::int64_t e) {
    if (e >= 0) return a.pow(static_cast<unsigned>(e));
    if (a.degree() != 0) throw ParseError("negative power of an expression in " + v);
    return SP::constant(inner.pow(a[0], e));
  }
};

}  // namespace

ExprPtr parse_expr(std::string_view text) { return Parser(text).parse_all(); }

Place parse_place(std::string_view text, const Field& k) {
  if (text.empty() || text[0] != '@') throw ParseError("place must start with '@': " + std::string(text));
  const std::string_view body = text.substr(1);
  if (body == "inf") return Place::infinity(k);
  const RatFn v = parse_ratfn(body, k, "u");
  if (!v.is_constant()) throw ParseError("place must be a field element: " + std::string(text));
  return Place::finite(v.is_zero() ? k.zero() : v.num()[0]);
}

RatFn eval_ratfn(const Expr& e, const Field& k, const std::string& var) {
  RatFnCtx ctx{k, var};
  return evaluate<RatFn>(e, ctx);
}

RatFn parse_ratfn(std::string_view text, const Field& k, const std::string& var) {
  return eval_ratfn(*parse_expr(text), k, var);
}

LocalElem parse_local(std::string_view text, const Field& k) { return LocalElem(parse_ratfn(text, k, "t")); }

Adele eval_adele(const Expr& e, const Field& k) {
  AdeleCtx ctx{k};
  return evaluate<Adele>(e, ctx);
}

Adele parse_adele(std::string_view text, const Field& k) { return eval_adele(*parse_expr(text), k); }

AdelePoly eval_adele_poly(const Expr& e, const Field& k) {
  AdelePolyCtx ctx{k};
  return evaluate<AdelePoly>(e, ctx);
}

AdelePoly parse_adele_poly(std::string_view text, const Field& k) { return eval_adele_poly(*parse_expr(text), k); }

AdelicPoly parse_adelic_poly(std::string_view text, const Field& k) {
  AdelePoly p = parse_adele_poly(text, k);
  if (p.degree() < 1) throw ParseError("polynomial in T must have positive degree");
  if (!p.is_monic()) throw ParseError("polynomial in T must be monic");
  return AdelicPoly::from_monic(p);
}

AlgebraElement parse_element(std::string_view text, const AdelicPoly& p) {
  return alg_reduce(parse_adele_poly(text, p.field()), p);
}

Polynomial<RatFn> parse_sigma_poly(std::string_view text, const Field& k, const std::string& var) {
  SigmaPolyCtx ctx{k, var};
  return evaluate<Polynomial<RatFn>>(*parse_expr(text), ctx);
}

std::string to_string(const Polynomial<RatFn>& p, const std::string& var) {
  return p.to_string(var, [](const RatFn& c) { return c.to_string("u"); });
}

}  // namespace adelic
