#pragma once

#include <cstdint>
#include <vector>

#include "adelic/errors.hpp"
#include "adelic/field.hpp"
#include "adelic/polynomial.hpp"

namespace adelic {

template <class R>
using Matrix = std::vector<std::vector<R>>;

/// Characteristic polynomial det(X*I - A) by Berkowitz's division-free
/// algorithm, so it works over any commutative ring (adeles included).
/// Returns ascending coefficients c_0..c_n with c_n = 1.
template <class R>
std::vector<R> charpoly(const Matrix<R>& a) {
  const std::size_t n = a.size();
  if (n == 0) return {};
  const R zero = a[0][0].zero_like();
  std::vector<R> vect{zero.one_like()};  // descending
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<R> t(r + 2, zero);
    t[0] = zero.one_like();
    t[1] = -a[r][r];
    std::vector<R> v(r, zero);
    for (std::size_t i = 0; i < r; ++i) v[i] = a[i][r];
    for (std::size_t k = 2; k <= r + 1; ++k) {
      R dot = zero;
      for (std::size_t i = 0; i < r; ++i) dot = dot + a[r][i] * v[i];
      t[k] = -dot;
      std::vector<R> w(r, zero);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) w[i] = w[i] + a[i][j] * v[j];
      v = std::move(w);
    }
    std::vector<R> next(r + 2, zero);
    for (std::size_t i = 0; i <= r + 1; ++i)
      for (std::size_t j = 0; j <= i && j <= r; ++j) next[i] = next[i] + t[i - j] * vect[j];
    vect = std::move(next);
  }
  return std::vector<R>(vect.rbegin(), vect.rend());
}

template <class R>
R determinant(const Matrix<R>& a) {
  if (a.empty()) throw PreconditionViolation("determinant of an empty matrix");
  std::vector<R> c = charpoly(a);
  return a.size() % 2 == 0 ? c[0] : -c[0];
}

/// Matrix of multiplication by a on R[T]/(p) in the basis 1, T, ..., T^{n-1}
/// (column j holds a*T^j). p must be monic.
template <class R>
Matrix<R> multiplication_matrix(const Polynomial<R>& a, const Polynomial<R>& p) {
  const std::size_t n = static_cast<std::size_t>(p.degree());
  Matrix<R> m(n, std::vector<R>(n, p.zero_elem()));
  Polynomial<R> col = a % p;
  const Polynomial<R> x = Polynomial<R>::x(p.zero_elem());
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) m[i][j] = col[i];
    col = (col * x) % p;
  }
  return m;
}

/// N(a) = det(multiplication by a) = Res(p, a) for monic p.
template <class R>
R algebra_norm(const Polynomial<R>& a, const Polynomial<R>& p) {
  return determinant(multiplication_matrix(a, p));
}

/// (-1)^{n(n-1)/2} Res(p, p') for monic p.
template <class R>
R discriminant_of(const Polynomial<R>& p) {
  const std::int64_t n = p.degree();
  const R res = algebra_norm(p.derivative(), p);
  return (n * (n - 1) / 2) % 2 ? -res : res;
}

/// Row echelon data of a matrix over k.
struct Echelon {
  Matrix<FieldElem> rows;          // reduced rows
  std::vector<std::size_t> pivots;  // pivot column per row
};

/// Reduced row echelon form by Gaussian elimination.
Echelon row_reduce(Matrix<FieldElem> m, std::size_t cols);

std::size_t rank(const Matrix<FieldElem>& m, std::size_t cols);

/// Basis of {x : m x = 0}, each vector of length `cols`.
std::vector<std::vector<FieldElem>> kernel(const Matrix<FieldElem>& m, std::size_t cols, const Field& k);

}  // namespace adelic
