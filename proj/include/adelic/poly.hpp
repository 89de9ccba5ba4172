#pragma once

#include <string>
#include <vector>

#include "adelic/field.hpp"
#include "adelic/polynomial.hpp"

namespace adelic {

/// Polynomials over the base field k.
using Poly = Polynomial<FieldElem>;

inline Poly poly_zero(const Field& k) { return Poly(k.zero()); }
inline Poly poly_const(const FieldElem& c) { return Poly::constant(c); }
inline Poly poly_x(const Field& k) { return Poly::x(k.zero()); }
/// X - a
inline Poly poly_linear(const FieldElem& a) { return Poly(a.zero_like(), {-a, a.one_like()}); }

std::string to_string(const Poly& f, const std::string& var = "u");

/// Roots of a polynomial over k with multiplicity, plus the part that has no
/// roots in k: g = lc(g) * prod (X - r) * cofactor, with cofactor monic.
struct SplitResult {
  std::vector<FieldElem> roots;  // canonical order, repeated by multiplicity
  Poly cofactor;

  bool complete() const { return cofactor.degree() == 0; }
};

/// All roots of g in k. With `require_full`, throws NeedsLargerField naming an
/// irreducible factor of the cofactor when g does not split into linear factors.
SplitResult poly_split_roots(const Poly& g, bool require_full = false);

/// Distinct roots in canonical order.
std::vector<FieldElem> distinct_roots(const Poly& g);

/// Some irreducible factor of f of smallest degree (finite fields); over Q the
/// monic f itself is returned when it has no rational root.
Poly irreducible_factor(const Poly& f);

bool is_squarefree(const Poly& f);

/// Solutions c in k of c^e = a, canonical order.
std::vector<FieldElem> kth_roots(const FieldElem& a, long e);

/// f(a + X).
Poly taylor_shift(const Poly& f, const FieldElem& a);

}  // namespace adelic
