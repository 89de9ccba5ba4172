#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "adelic/adele.hpp"
#include "adelic/local.hpp"

namespace adelic {

using AdelePoly = Polynomial<Adele>;

/// Monic p(T) = T^n + c_{n-1} T^{n-1} + ... + c_0 over the adeles.
class AdelicPoly {
 public:
  AdelicPoly() = default;
  /// Lower coefficients c_0..c_{n-1}; the leading 1 is implicit.
  explicit AdelicPoly(std::vector<Adele> lower);
  /// From a monic polynomial; throws PreconditionViolation otherwise.
  static AdelicPoly from_monic(const AdelePoly& p);
  /// Override-free embedding of a monic polynomial over Sigma.
  static AdelicPoly global(const Polynomial<RatFn>& p);

  const Field& field() const { return lower_.front().field(); }
  std::int64_t degree() const { return static_cast<std::int64_t>(lower_.size()); }
  const std::vector<Adele>& lower() const { return lower_; }
  const AdelePoly& full() const { return full_; }
  Polynomial<RatFn> generic() const;
  /// Places where some coefficient carries an override.
  std::vector<Place> override_places() const;
  std::string to_string() const;

 private:
  std::vector<Adele> lower_;
  AdelePoly full_;
};

std::string to_string(const AdelePoly& p, const std::string& var = "T");

/// p_x(T) in K_x[T].
LocalPoly project_at(const AdelicPoly& p, const Place& x);

enum class PlaceClass { NonIntegral, IntegralNonSeparable, IntegralSeparable };
std::string to_string(PlaceClass c);

PlaceClass classify_place(const AdelicPoly& p, const Place& x);

/// Places with class other than IntegralSeparable. Throws
/// PreconditionViolation when the generic part is inseparable (the set would
/// be infinite).
std::vector<Place> bad_set(const AdelicPoly& p);

/// Places that must be examined to see every non-IntegralSeparable place:
/// overrides, coefficient poles, zeros and poles of the generic
/// discriminant, and infinity.
std::vector<Place> bad_set_candidates(const AdelicPoly& p);

struct SeparabilityResult {
  bool separable = false;
  std::optional<Place> witness;  // a place where p_x is inseparable
  AdelePoly a, b;                // a*p + b*p' = 1 when separable
  bool verified = false;
};

/// Bezout certificate built from extended Euclid over Sigma[T] and over
/// K_x[T] at override places, then checked by exact adelic arithmetic.
SeparabilityResult is_separable(const AdelicPoly& p);

/// Generic discriminant nonzero and p_x separable at every override place.
bool pointwise_separable(const AdelicPoly& p);

struct LocalDecomposition {
  Place x = Place::infinity(Field::prime(2));
  PlaceClass cls = PlaceClass::IntegralSeparable;
  LocalPoly poly{LocalElem{}};
  std::vector<LocalFactor> factors;
  std::int64_t precision = 0;

  std::size_t factor_count() const { return factors.size(); }
};

LocalDecomposition decompose_at(const AdelicPoly& p, const Place& x, std::int64_t precision = kDefaultPrecision);

/// c_0 + c_1 T + ... + c_{n-1} T^{n-1} modulo p.
struct AlgebraElement {
  std::vector<Adele> c;

  const Field& field() const { return c.front().field(); }
  AdelePoly poly() const;
  std::string to_string() const;
  bool operator==(const AlgebraElement& o) const { return c == o.c; }
};

AlgebraElement alg_reduce(const AdelePoly& a, const AdelicPoly& p);
AlgebraElement alg_embed(const Adele& f, const AdelicPoly& p);
AlgebraElement alg_one(const AdelicPoly& p);
AlgebraElement alg_add(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement alg_neg(const AlgebraElement& a);
AlgebraElement alg_mul(const AlgebraElement& a, const AlgebraElement& b, const AdelicPoly& p);
AlgebraElement alg_pow(const AlgebraElement& a, std::int64_t e, const AdelicPoly& p);
/// Res(p, a) = det of multiplication by a.
Adele alg_norm(const AlgebraElement& a, const AdelicPoly& p);
bool alg_is_unit(const AlgebraElement& a, const AdelicPoly& p);
/// Inverse of a unit by Cayley-Hamilton on the multiplication matrix.
AlgebraElement alg_inverse(const AlgebraElement& a, const AdelicPoly& p);

/// The components of a at x written as a polynomial over K_x.
LocalPoly element_at(const AlgebraElement& a, const Place& x);

/// alpha_{x,j} for each factor of the decomposition.
std::vector<TruncSeries> localize_element(const AlgebraElement& a, const LocalDecomposition& d);

/// Ceiling on the adaptive precision used to resolve valuations.
inline constexpr std::int64_t kMaxPrecision = 1024;

/// Decomposition at x fine enough that `ok` accepts the localized components;
/// doubles the precision until kMaxPrecision, then PrecisionExhausted.
struct LocalView {
  LocalDecomposition decomp;
  std::vector<TruncSeries> alpha;
};
LocalView localize_adaptive(const AlgebraElement& a, const AdelicPoly& p, const Place& x, std::int64_t precision,
                            const std::function<bool(const std::vector<TruncSeries>&)>& ok);

struct ContentEntry {
  Place x;
  int j;
  std::int64_t e;
  std::int64_t val;
};

struct ContentReport {
  std::int64_t total = 0;
  std::vector<ContentEntry> breakdown;  // nonzero entries, canonical order
  std::vector<Place> examined;
};

/// Places carrying every possibly nonzero local valuation of a.
std::vector<Place> content_support(const AlgebraElement& a, const AdelicPoly& p);

/// Sum of v_{x,j}(alpha_{x,j}); checks sum_j v_{x,j} = v_x(N(a)) at every
/// examined place and the total against the content of the norm idele.
ContentReport content_valuation(const AlgebraElement& a, const AdelicPoly& p,
                                std::int64_t precision = kDefaultPrecision);

struct IndexReport {
  std::int64_t total = 0;
  int widenings = 0;  // cutoff doublings needed (0 when the first pair agreed)
  std::vector<std::pair<Place, std::int64_t>> per_place;
};

/// Index form of the content: at each window place, dim L/(L cap aL) -
/// dim aL/(L cap aL) for L the product of the k[[s_j]], computed by rank
/// computations on jets in the window [-c, c) per factor.
IndexReport content_index(const AlgebraElement& a, const AdelicPoly& p, const std::vector<Place>& window,
                          std::int64_t precision = kDefaultPrecision);

/// Every local component integral (valuation route).
bool is_integral_over_plus(const AlgebraElement& a, const AdelicPoly& p, std::int64_t precision = kDefaultPrecision);

/// Characteristic polynomial of multiplication by a has coefficients in A_X^+.
bool charpoly_integral(const AlgebraElement& a, const AdelicPoly& p);

}  // namespace adelic
