#pragma once

#include <compare>
#include <cstdint>
#include <gmpxx.h>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace adelic {

class FieldElem;

/// The base field k: a finite field F_{p^m} or the rationals.
///
/// Fields are interned: `Field::prime(5)` always returns the same object, so
/// elements can hold a plain pointer to their field and compare fields by
/// address. Elements of F_{p^m} are encoded as integers in [0, p^m) whose
/// base-p digits are the coefficients of the residue polynomial in the
/// generator z (the class of the indeterminate modulo `modulus()`).
class Field {
 public:
  static const Field& prime(std::uint64_t p);
  /// F_{p^m} with the lexicographically smallest monic irreducible modulus.
  static const Field& galois(std::uint64_t p, int m);
  static const Field& rationals();
  /// Accepts "F_5", "F_5^2" and "Q".
  static const Field& parse(std::string_view spec);

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

  bool is_rational() const { return p_ == 0; }
  bool is_finite() const { return p_ != 0; }
  std::uint64_t characteristic() const { return p_; }
  int degree() const { return m_; }
  /// Number of elements; 0 for the rationals.
  std::uint64_t order() const { return q_; }
  /// Ascending coefficients over F_p, monic of degree `degree()`.
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }
  std::string name() const;

  FieldElem zero() const;
  FieldElem one() const;
  FieldElem from_int(std::int64_t n) const;
  FieldElem from_rational(const mpq_class& q) const;
  /// The element with canonical index `code` (finite fields only).
  FieldElem element(std::uint64_t code) const;
  /// The generator z of F_{p^m} over F_p (equals from_int(0) + z).
  FieldElem generator() const;

  /// Canonical enumeration: finite fields by code; rationals 0, 1, -1, 2, -2, ...
  FieldElem nth_element(std::uint64_t index) const;

  // Raw code arithmetic for finite fields.
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t neg(std::uint64_t a) const;
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t inv(std::uint64_t a) const;

 private:
  Field(std::uint64_t p, int m, std::vector<std::uint64_t> modulus);
  std::uint64_t mul_slow(std::uint64_t a, std::uint64_t b) const;
  void build_tables();

  std::uint64_t p_;
  int m_;
  std::uint64_t q_;
  std::vector<std::uint64_t> modulus_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
};

/// An element of a `Field`, in canonical reduced form.
class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(const Field* field, std::uint64_t code) : field_(field), value_(code) {}
  FieldElem(const Field* field, mpq_class q);

  const Field& field() const { return *field_; }
  const Field* field_ptr() const { return field_; }
  bool valid() const { return field_ != nullptr; }

  bool is_zero() const;
  bool is_one() const;
  FieldElem zero_like() const { return field_->zero(); }
  FieldElem one_like() const { return field_->one(); }
  FieldElem int_like(std::int64_t n) const { return field_->from_int(n); }
  FieldElem inverse() const;
  FieldElem pow(std::int64_t e) const;

  std::uint64_t code() const { return std::get<std::uint64_t>(value_); }
  const mpq_class& rational() const { return std::get<mpq_class>(value_); }

  FieldElem operator-() const;
  FieldElem& operator+=(const FieldElem& o);
  FieldElem& operator-=(const FieldElem& o);
  FieldElem& operator*=(const FieldElem& o);
  FieldElem& operator/=(const FieldElem& o);
  friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
  friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
  friend FieldElem operator*(FieldElem a, const FieldElem& b) { return a *= b; }
  friend FieldElem operator/(FieldElem a, const FieldElem& b) { return a /= b; }

  bool operator==(const FieldElem& o) const;
  /// Canonical order (code order for finite fields, numeric for Q).
  std::strong_ordering operator<=>(const FieldElem& o) const;

  std::string to_string() const;

 private:
  void check_same(const FieldElem& o) const;

  const Field* field_ = nullptr;
  std::variant<std::uint64_t, mpq_class> value_{std::uint64_t{0}};
};

std::ostream& operator<<(std::ostream& os, const FieldElem& a);

}  // namespace adelic
