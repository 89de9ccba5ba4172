#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adelic/local_elem.hpp"

namespace adelic {

/// Polynomials over K_x.
using LocalPoly = Polynomial<LocalElem>;
using SeriesPoly = Polynomial<TruncSeries>;

/// Root precision used when the caller does not ask for one.
inline constexpr std::int64_t kDefaultPrecision = 16;

std::string to_string(const LocalPoly& p, const std::string& var = "T");

/// (-1)^{n(n-1)/2} Res(P, P'), computed as a determinant of multiplication
/// by P' on K_x[T]/(P). Exact when the coefficients are.
LocalElem discriminant(const LocalPoly& p);

/// Reduction of an integral polynomial modulo t.
Poly residue_poly(const LocalPoly& p);

bool is_integral(const LocalPoly& p);

/// The three equivalent forms of "P is separable with separable residue",
/// each computed on its own.
struct ResidueReport {
  std::optional<std::int64_t> disc_valuation;  // empty when disc(P) = 0
  bool disc_unit = false;
  bool residue_squarefree = false;
  bool bezout_integral = false;  // P*S + P'*R = 1 with S, R integral

  bool separable() const { return disc_unit; }
  bool consistent() const { return disc_unit == residue_squarefree && disc_unit == bezout_integral; }
};

/// Requires a monic polynomial with exact integral coefficients.
ResidueReport residue_separable(const LocalPoly& p);

/// Newton iteration for the root of q lifting the simple residue root r0.
/// q must have integral coefficients; the result is known modulo t^precision.
TruncSeries newton_lift(const SeriesPoly& q, const FieldElem& r0, std::int64_t precision);

/// The n roots of P in A_x, known modulo t^precision, ordered by residue.
std::vector<TruncSeries> hensel_split(const LocalPoly& p, std::int64_t precision);

/// (Q(a_1), ..., Q(a_n)).
std::vector<TruncSeries> psi_eval(const LocalPoly& q, const std::vector<TruncSeries>& roots);
/// The polynomial of degree < n taking `values` at `roots` (Lagrange).
SeriesPoly psi_interp(const std::vector<TruncSeries>& values, const std::vector<TruncSeries>& roots);

/// One edge of the lower convex hull of {(i, v(a_i))}, slope h/e.
struct NewtonSegment {
  std::int64_t h = 0;
  std::int64_t e = 1;
  std::int64_t length = 0;
  std::int64_t start = 0;
};

struct NewtonPolygon {
  std::vector<NewtonSegment> segments;  // increasing slope
  std::int64_t zero_roots = 0;          // multiplicity of T = 0 (a_0 = 0 exactly)
};

/// Requires exact coefficients.
NewtonPolygon newton_polygon(const LocalPoly& p);

/// A factor K_{x,j} of K_x[T]/(P): the totally ramified extension
/// k((s)), s^e = t, together with the root of P it carries.
struct LocalFactor {
  int label = 0;  // j, from 1
  std::int64_t e = 1;
  TruncSeries root;        // series in s
  std::int64_t val_h = 0;  // v_t(root) = val_h / e (root nonzero)
  bool zero_root = false;

  std::string to_string(const std::string& place) const;
};

/// Tame Newton-Puiseux factorization: roots known to `precision` terms past
/// their valuation. Repeated residual roots are resolved by recursing on the
/// shifted polynomial.
std::vector<LocalFactor> local_factor(const LocalPoly& p, std::int64_t precision);

/// Hensel splitting when P is integral with separable residue, otherwise
/// `local_factor`. Both paths label factors in the same order.
std::vector<LocalFactor> local_decompose(const LocalPoly& p, std::int64_t precision);

/// P evaluated at a factor root: a series in s.
TruncSeries eval_at_root(const LocalPoly& p, const LocalFactor& f);

/// v_{x,j}(Q(root_j)) in units of s; throws PrecisionExhausted when the
/// known terms do not determine it.
std::int64_t factor_valuation(const LocalPoly& q, const LocalFactor& f);

}  // namespace adelic
