#pragma once

#include <map>
#include <string>
#include <vector>

#include "adelic/local_elem.hpp"

namespace adelic {

/// An adele of P^1: a global rational function together with finitely many
/// places where the component is replaced by a local element.
///
/// Overrides equal to the germ of the generic part are dropped, so equality
/// is structural.
class Adele {
 public:
  using Overrides = std::map<Place, LocalElem>;

  Adele() = default;
  explicit Adele(RatFn generic, Overrides overrides = {});
  static Adele zero(const Field& k) { return Adele(RatFn(k)); }
  static Adele constant(const FieldElem& c) { return Adele(RatFn::constant(c)); }

  const Field& field() const { return generic_.field(); }
  const RatFn& generic() const { return generic_; }
  const Overrides& overrides() const { return overrides_; }
  bool has_override(const Place& x) const { return overrides_.count(x) != 0; }
  /// The component in K_x, written in the local parameter at x.
  LocalElem component(const Place& x) const;
  /// Override places, in canonical order.
  std::vector<Place> override_places() const;

  bool is_zero() const { return generic_.is_zero() && overrides_.empty(); }
  bool is_global() const { return overrides_.empty(); }
  Adele zero_like() const { return zero(field()); }
  Adele one_like() const { return constant(field().one()); }
  Adele int_like(std::int64_t n) const { return constant(field().from_int(n)); }
  /// Componentwise inverse; throws NotAUnit unless the adele is an idele.
  Adele inverse() const;
  Adele pow(std::int64_t e) const;

  Adele operator-() const;
  friend Adele operator+(const Adele& a, const Adele& b);
  friend Adele operator-(const Adele& a, const Adele& b) { return a + (-b); }
  friend Adele operator*(const Adele& a, const Adele& b);
  friend Adele operator/(const Adele& a, const Adele& b) { return a * b.inverse(); }
  Adele& operator+=(const Adele& o) { return *this = *this + o; }
  Adele& operator-=(const Adele& o) { return *this = *this - o; }
  Adele& operator*=(const Adele& o) { return *this = *this * o; }
  bool operator==(const Adele& o) const { return generic_ == o.generic_ && overrides_ == o.overrides_; }

  /// `generic: <f>; at @a: <jet>; ...`, or just `<f>` without overrides.
  std::string to_string() const;

 private:
  void normalize();

  RatFn generic_;
  Overrides overrides_;
};

/// Places outside which the adele is the germ of a function with neither
/// zeros nor poles: override places together with the zeros and poles of the
/// generic part. Throws NeedsLargerField if the generic part does not split.
std::vector<Place> adele_support(const Adele& a);

/// Valuation of the component at x; throws ZeroInput for a zero component.
std::int64_t adele_valuation(const Adele& a, const Place& x);

bool is_idele(const Adele& a);

/// Sum of v_x(a_x) over all places, computed from the override valuations and
/// the divisor of the generic part off the override set.
std::int64_t content_idele(const Adele& a);

/// In A_X^+: integral at every place.
bool is_integral(const Adele& a);

/// v_x(a_x) >= D_x on supp(D) and integral elsewhere.
bool in_UD(const Adele& a, const Divisor& d);

/// True iff f has no pole on P^1 (so f is constant).
bool sigma_discreteness_probe(const RatFn& f);

}  // namespace adelic
