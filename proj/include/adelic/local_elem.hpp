#pragma once

#include <string>
#include <variant>

#include "adelic/series.hpp"

namespace adelic {

/// An element of K_x = k((t)).
///
/// Exact elements are rational functions of the local parameter t (this
/// covers every jet and every germ of a global function). Elements that are
/// only known as truncated series (algebraic local components such as a
/// square root of 1 + t) carry their precision; mixing the two expands the
/// exact operand just far enough to match.
class LocalElem {
 public:
  LocalElem() = default;
  explicit LocalElem(RatFn exact) : v_(std::move(exact)) {}
  /// Exact series (jets) are stored as exact rational functions.
  explicit LocalElem(const TruncSeries& s);
  static LocalElem zero(const Field& k) { return LocalElem(RatFn(k)); }
  static LocalElem constant(const FieldElem& c) { return LocalElem(RatFn::constant(c)); }
  /// The local parameter t.
  static LocalElem parameter(const Field& k) { return LocalElem(RatFn::variable(k)); }

  const Field& field() const;
  bool is_exact() const { return std::holds_alternative<RatFn>(v_); }
  const RatFn& exact() const { return std::get<RatFn>(v_); }
  const TruncSeries& approx() const { return std::get<TruncSeries>(v_); }

  /// Expansion known modulo t^precision (or better).
  TruncSeries series(std::int64_t precision) const;
  /// Expansion with at least `rel` known coefficients past the valuation.
  TruncSeries series_rel(std::int64_t rel) const;
  /// Precision of the stored data (kExact for exact elements).
  std::int64_t precision() const;

  bool is_zero() const;
  bool known_zero() const;
  std::int64_t valuation() const;
  /// Valuation, or the precision when the element is an unresolved zero.
  std::int64_t valuation_bound() const;
  FieldElem leading() const;

  LocalElem zero_like() const { return zero(field()); }
  LocalElem one_like() const { return constant(field().one()); }
  LocalElem int_like(std::int64_t n) const { return constant(field().from_int(n)); }
  LocalElem inverse() const;
  LocalElem pow(std::int64_t e) const;

  LocalElem operator-() const;
  friend LocalElem operator+(const LocalElem& a, const LocalElem& b);
  friend LocalElem operator-(const LocalElem& a, const LocalElem& b) { return a + (-b); }
  friend LocalElem operator*(const LocalElem& a, const LocalElem& b);
  friend LocalElem operator/(const LocalElem& a, const LocalElem& b) { return a * b.inverse(); }
  LocalElem& operator+=(const LocalElem& o) { return *this = *this + o; }
  LocalElem& operator*=(const LocalElem& o) { return *this = *this * o; }
  bool operator==(const LocalElem& o) const;

  /// Jets as `t^v*(c0 + c1*t + ...)`; other exact elements as a fraction in t.
  std::string to_string() const;

 private:
  std::variant<RatFn, TruncSeries> v_;
};

/// Series in s with s^e = t for an element of K_x, relative precision `rel`.
TruncSeries to_ramified(const LocalElem& a, std::int64_t e, std::int64_t rel);

}  // namespace adelic
