#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "adelic/ratfn.hpp"

namespace adelic {

/// Precision value meaning "exact" (a finite Laurent polynomial).
inline constexpr std::int64_t kExact = std::numeric_limits<std::int64_t>::max() / 4;

/// Relative precision used when an exact series with infinitely many terms
/// (e.g. the inverse of 1 + t) has to be materialized.
inline constexpr std::int64_t kDefaultRelativePrecision = 64;

inline std::int64_t prec_add(std::int64_t a, std::int64_t b) {
  if (a >= kExact || b >= kExact) return kExact;
  return a + b;
}

/// Laurent series c_0 t^v + c_1 t^{v+1} + ... known modulo t^N.
///
/// N = kExact marks an exact Laurent polynomial (a jet). Arithmetic
/// propagates the smallest valid precision, so a result never claims more
/// than its inputs determine.
class TruncSeries {
 public:
  TruncSeries() = default;
  static TruncSeries zero(const Field& k, std::int64_t precision = kExact);
  static TruncSeries from_coeffs(const Field& k, std::int64_t first_exp, std::vector<FieldElem> c,
                                 std::int64_t precision = kExact);
  static TruncSeries monomial(const FieldElem& c, std::int64_t exp);
  /// Expansion of a rational function in the local parameter at 0, known
  /// modulo t^precision. Laurent polynomials come back exact.
  static TruncSeries expand(const RatFn& f, std::int64_t precision);

  const Field& field() const { return *field_; }
  std::int64_t precision() const { return prec_; }
  bool is_exact() const { return prec_ >= kExact; }
  /// Exactly zero.
  bool is_zero() const { return c_.empty() && is_exact(); }
  /// No nonzero coefficient below the precision.
  bool known_zero() const { return c_.empty(); }
  /// Throws PrecisionExhausted when no nonzero coefficient is known.
  std::int64_t valuation() const;
  /// Valuation if known, else the precision.
  std::int64_t valuation_bound() const { return c_.empty() ? prec_ : val_; }
  /// Number of known coefficients from the valuation on (kExact when exact).
  std::int64_t relative_precision() const;
  FieldElem coeff(std::int64_t exp) const;
  FieldElem leading() const;
  const std::vector<FieldElem>& raw() const { return c_; }
  std::int64_t first_exp() const { return val_; }

  TruncSeries truncated(std::int64_t precision) const;
  TruncSeries shifted(std::int64_t k) const;
  /// t -> s^e
  TruncSeries inflated(std::int64_t e) const;
  /// t -> w * t
  TruncSeries scaled_variable(const FieldElem& w) const;
  TruncSeries inverse(std::int64_t rel_prec_if_exact) const;
  TruncSeries inverse() const { return inverse(kDefaultRelativePrecision); }
  TruncSeries pow(std::int64_t e) const;

  TruncSeries zero_like() const { return zero(*field_); }
  TruncSeries one_like() const { return monomial(field_->one(), 0); }
  TruncSeries int_like(std::int64_t n) const { return monomial(field_->from_int(n), 0); }

  TruncSeries operator-() const;
  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) { return a + (-b); }
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
  TruncSeries& operator+=(const TruncSeries& o) { return *this = *this + o; }
  TruncSeries& operator*=(const TruncSeries& o) { return *this = *this * o; }
  TruncSeries scaled(const FieldElem& c) const;

  /// Structural equality: same precision and same known coefficients.
  bool operator==(const TruncSeries& o) const;
  /// Coefficients agree below the smaller of the two precisions.
  bool agrees_with(const TruncSeries& o) const;

  /// Rendered as `t^v*(c0 + c1*t + ...)`, with a trailing O(t^r) term when
  /// the series is truncated (r counted from v).
  std::string to_string(const std::string& var = "t") const;

 private:
  void normalize();

  const Field* field_ = nullptr;
  std::int64_t val_ = 0;
  std::vector<FieldElem> c_;
  std::int64_t prec_ = kExact;
};

}  // namespace adelic
