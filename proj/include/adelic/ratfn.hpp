#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>

#include "adelic/poly.hpp"

namespace adelic {

/// A rational function num/den over k in lowest terms with monic denominator.
///
/// Used both for the function field Sigma = k(u) and, through `germ`, for
/// exact local elements of k(t) inside K_x = k((t)).
class RatFn {
 public:
  RatFn() = default;
  explicit RatFn(const Field& k) : num_(k.zero()), den_(Poly::constant(k.one())) {}
  explicit RatFn(Poly num);
  RatFn(Poly num, Poly den);
  static RatFn constant(const FieldElem& c) { return RatFn(poly_const(c)); }
  static RatFn variable(const Field& k) { return RatFn(poly_x(k)); }

  const Field& field() const { return num_.zero_elem().field(); }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  /// True when the denominator is 1.
  bool is_polynomial() const { return den_.degree() == 0; }
  RatFn zero_like() const { return RatFn(field()); }
  RatFn one_like() const { return constant(field().one()); }
  RatFn int_like(std::int64_t n) const { return constant(field().from_int(n)); }
  RatFn inverse() const;
  RatFn pow(std::int64_t e) const;

  RatFn operator-() const;
  friend RatFn operator+(const RatFn& a, const RatFn& b);
  friend RatFn operator-(const RatFn& a, const RatFn& b) { return a + (-b); }
  friend RatFn operator*(const RatFn& a, const RatFn& b);
  friend RatFn operator/(const RatFn& a, const RatFn& b) { return a * b.inverse(); }
  RatFn& operator+=(const RatFn& o) { return *this = *this + o; }
  RatFn& operator-=(const RatFn& o) { return *this = *this - o; }
  RatFn& operator*=(const RatFn& o) { return *this = *this * o; }
  bool operator==(const RatFn& o) const { return num_ == o.num_ && den_ == o.den_; }

  FieldElem operator()(const FieldElem& a) const;  // throws ZeroInput at a pole

  /// Order of vanishing at X = 0.
  std::int64_t order_at_zero() const;
  /// Leading coefficient of the expansion at X = 0.
  FieldElem leading_at_zero() const;
  /// f(X^k).
  RatFn inflate(unsigned k) const;

  std::string to_string(const std::string& var = "u") const;

 private:
  void canonicalize();

  Poly num_{FieldElem{}};
  Poly den_{FieldElem{}};
};

/// A closed point of P^1 over k: a finite point u = a, or infinity.
class Place {
 public:
  static Place finite(const FieldElem& a) { return Place(&a.field(), false, a); }
  static Place infinity(const Field& k) { return Place(&k, true, k.zero()); }

  bool is_infinite() const { return inf_; }
  const FieldElem& point() const;
  const Field& field() const { return *field_; }
  std::string to_string() const;

  bool operator==(const Place& o) const { return inf_ == o.inf_ && (inf_ || a_ == o.a_); }
  /// Finite points in field enumeration order, infinity last.
  std::strong_ordering operator<=>(const Place& o) const;

 private:
  Place(const Field* k, bool inf, FieldElem a) : field_(k), inf_(inf), a_(std::move(a)) {}
  const Field* field_;
  bool inf_;
  FieldElem a_;
};

/// Finite formal sum of places with nonzero integer coefficients.
class Divisor {
 public:
  using Map = std::map<Place, std::int64_t>;

  Divisor() = default;
  explicit Divisor(Map m);

  const Map& support() const { return m_; }
  std::int64_t operator[](const Place& x) const;
  std::int64_t degree() const;
  bool is_effective() const;
  void add(const Place& x, std::int64_t k);
  bool operator==(const Divisor& o) const { return m_ == o.m_; }
  /// D >= E coefficientwise.
  bool dominates(const Divisor& o) const;
  std::string to_string() const;

 private:
  Map m_;
};

/// Order of vanishing of f at x; deg(den) - deg(num) at infinity.
std::int64_t ratfn_valuation(const RatFn& f, const Place& x);

/// Divisor of f including infinity. Throws NeedsLargerField when the
/// numerator or denominator has an irreducible factor of degree > 1.
Divisor ratfn_divisor(const RatFn& f);

/// Poles of f (places with negative valuation), split over k or NeedsLargerField.
std::vector<Place> ratfn_poles(const RatFn& f);

/// The germ of f at x written in the local parameter t: f(a + t) at a finite
/// point, f(1/t) at infinity.
RatFn germ(const RatFn& f, const Place& x);

/// Inverse of `germ`: a function of t at x written back in u.
RatFn ungerm(const RatFn& g, const Place& x);

}  // namespace adelic
