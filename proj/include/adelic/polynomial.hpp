#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "adelic/errors.hpp"

namespace adelic {

/// Dense univariate polynomial with coefficients in a commutative ring R.
///
/// R must provide is_zero(), zero_like(), one_like(), int_like(n), ==, and the
/// ring operators. Division-based algorithms (divmod by a non-monic divisor,
/// gcd, xgcd) additionally need R::inverse(). The zero polynomial remembers a
/// zero of R so it can still produce coefficients of the right ring.
template <class R>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(R zero) : zero_(std::move(zero)) {}
  Polynomial(R zero, std::vector<R> coeffs) : zero_(std::move(zero)), c_(std::move(coeffs)) { normalize(); }

  static Polynomial constant(const R& c) { return Polynomial(c.zero_like(), {c}); }
  static Polynomial monomial(const R& c, std::size_t k) {
    std::vector<R> v(k + 1, c.zero_like());
    v[k] = c;
    return Polynomial(c.zero_like(), std::move(v));
  }
  /// The indeterminate X over the ring of `proto`.
  static Polynomial x(const R& proto) { return monomial(proto.one_like(), 1); }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  std::size_t size() const { return c_.size(); }
  const std::vector<R>& coeffs() const { return c_; }
  const R& zero_elem() const { return zero_; }
  const R& operator[](std::size_t i) const { return i < c_.size() ? c_[i] : zero_; }
  const R& leading() const { return c_.empty() ? zero_ : c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == zero_.one_like(); }

  Polynomial zero_like() const { return Polynomial(zero_); }
  Polynomial one_like() const { return constant(zero_.one_like()); }
  Polynomial int_like(std::int64_t n) const { return constant(zero_.int_like(n)); }

  R operator()(const R& x) const {
    R r = zero_;
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
  }

  /// Horner evaluation at a value of another ring, given a coefficient map.
  template <class S, class Map>
  S evaluate(const S& x, const S& zero, Map&& embed) const {
    S r = zero;
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + embed(c_[i]);
    return r;
  }

  template <class S, class Map>
  Polynomial<S> map(const S& zero, Map&& f) const {
    std::vector<S> out;
    out.reserve(c_.size());
    for (const R& a : c_) out.push_back(f(a));
    return Polynomial<S>(zero, std::move(out));
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return zero_like();
    std::vector<R> d;
    d.reserve(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * zero_.int_like(static_cast<std::int64_t>(i)));
    return Polynomial(zero_, std::move(d));
  }

  Polynomial operator-() const {
    std::vector<R> v;
    v.reserve(c_.size());
    for (const R& a : c_) v.push_back(-a);
    return Polynomial(zero_, std::move(v));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<R> v(std::max(a.c_.size(), b.c_.size()), a.zero_);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i < a.c_.size() && i < b.c_.size())
        v[i] = a.c_[i] + b.c_[i];
      else
        v[i] = i < a.c_.size() ? a.c_[i] : b.c_[i];
    }
    return Polynomial(a.zero_, std::move(v));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial(a.zero_);
    std::vector<R> v(a.c_.size() + b.c_.size() - 1, a.zero_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
    }
    return Polynomial(a.zero_, std::move(v));
  }
  Polynomial scaled(const R& s) const {
    std::vector<R> v;
    v.reserve(c_.size());
    for (const R& a : c_) v.push_back(a * s);
    return Polynomial(zero_, std::move(v));
  }
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial pow(unsigned k) const {
    Polynomial r = one_like();
    Polynomial b = *this;
    while (k) {
      if (k & 1) r *= b;
      b *= b;
      k >>= 1;
    }
    return r;
  }

  bool operator==(const Polynomial& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!(c_[i] == o.c_[i])) return false;
    return true;
  }

  /// Multiplication by X^k.
  Polynomial shifted(std::size_t k) const {
    if (is_zero()) return *this;
    std::vector<R> v(k, zero_);
    v.insert(v.end(), c_.begin(), c_.end());
    return Polynomial(zero_, std::move(v));
  }

  /// Quotient and remainder. A monic divisor needs no inverses in R.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
    if (d.is_zero()) throw ZeroInput("polynomial division by zero");
    const bool monic = d.is_monic();
    R inv_lc = monic ? zero_.one_like() : d.leading().inverse();
    std::vector<R> r = c_;
    const std::size_t n = d.c_.size() - 1;
    if (r.size() <= n) return {Polynomial(zero_), *this};
    std::vector<R> q(r.size() - n, zero_);
    for (std::size_t k = r.size(); k-- > n;) {
      if (r[k].is_zero()) continue;
      R c = monic ? r[k] : r[k] * inv_lc;
      q[k - n] = c;
      for (std::size_t i = 0; i <= n; ++i) r[k - n + i] = r[k - n + i] - c * d.c_[i];
    }
    r.resize(n);
    return {Polynomial(zero_, std::move(q)), Polynomial(zero_, std::move(r))};
  }
  Polynomial operator%(const Polynomial& d) const { return divmod(d).second; }
  Polynomial operator/(const Polynomial& d) const { return divmod(d).first; }

  Polynomial monic() const {
    if (is_zero()) return *this;
    return scaled(leading().inverse());
  }

  /// Composition this(g).
  Polynomial compose(const Polynomial& g) const {
    Polynomial r(zero_);
    for (std::size_t i = c_.size(); i-- > 0;) r = r * g + constant(c_[i]);
    return r;
  }

  /// Coefficients reversed to degree `deg` (X^deg * this(1/X)).
  Polynomial reversed(std::size_t deg) const {
    std::vector<R> v(deg + 1, zero_);
    for (std::size_t i = 0; i < c_.size() && i <= deg; ++i) v[deg - i] = c_[i];
    return Polynomial(zero_, std::move(v));
  }

  /// Lowest index with a nonzero coefficient; -1 for zero.
  long order() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return static_cast<long>(i);
    return -1;
  }

  /// Pretty form in variable `var`, highest degree first.
  std::string to_string(const std::string& var, const std::function<std::string(const R&)>& show) const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i].is_zero()) continue;
      std::string coef = show(c_[i]);
      bool negative = !coef.empty() && coef[0] == '-' && coef.find_first_of("+ ", 1) == std::string::npos;
      if (negative) coef = coef.substr(1);
      const bool compound = coef.find_first_of("+-/ ") != std::string::npos;
      if (s.empty())
        s += negative ? "-" : "";
      else
        s += negative ? " - " : " + ";
      if (i == 0) {
        s += compound ? "(" + coef + ")" : coef;
        continue;
      }
      if (coef != "1") s += (compound ? "(" + coef + ")" : coef) + "*";
      s += var;
      if (i > 1) s += "^" + std::to_string(i);
    }
    return s;
  }

 private:
  void normalize() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  R zero_;
  std::vector<R> c_;
};

/// Result of the extended Euclidean algorithm: a*f + b*g = gcd (monic).
template <class R>
struct XgcdResult {
  Polynomial<R> gcd;
  Polynomial<R> a;
  Polynomial<R> b;
};

template <class R>
XgcdResult<R> xgcd(const Polynomial<R>& f, const Polynomial<R>& g) {
  Polynomial<R> r0 = f, r1 = g;
  Polynomial<R> s0 = f.one_like(), s1 = f.zero_like();
  Polynomial<R> t0 = f.zero_like(), t1 = f.one_like();
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Polynomial<R> s2 = s0 - q * s1;
    Polynomial<R> t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const R inv = r0.leading().inverse();
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

template <class R>
Polynomial<R> gcd(const Polynomial<R>& f, const Polynomial<R>& g) {
  Polynomial<R> a = f, b = g;
  while (!b.is_zero()) {
    Polynomial<R> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

/// base^e mod m for monic or invertible-leading m.
template <class R>
Polynomial<R> powmod(Polynomial<R> base, std::uint64_t e, const Polynomial<R>& m) {
  Polynomial<R> r = base.one_like() % m;
  base = base % m;
  while (e) {
    if (e & 1) r = (r * base) % m;
    base = (base * base) % m;
    e >>= 1;
  }
  return r;
}

/// Resultant over a field via the Euclidean remainder sequence.
template <class R>
R resultant(const Polynomial<R>& f, const Polynomial<R>& g) {
  const R zero = f.zero_elem();
  if (f.is_zero() || g.is_zero()) return zero;
  Polynomial<R> a = f, b = g;
  R acc = zero.one_like();
  while (true) {
    const long da = a.degree(), db = b.degree();
    if (db == 0) {
      R r = acc;
      for (long i = 0; i < da; ++i) r = r * b.leading();
      return r;
    }
    Polynomial<R> rem = a % b;
    if (rem.is_zero()) return zero;
    const long dr = rem.degree();
    // res(a, b) = (-1)^{da db} lc(b)^{da - dr} res(b, rem)
    if ((da * db) % 2 == 1) acc = -acc;
    for (long i = 0; i < da - dr; ++i) acc = acc * b.leading();
    a = std::move(b);
    b = std::move(rem);
  }
}

}  // namespace adelic
