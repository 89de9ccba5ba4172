#include "adelic/linalg.hpp"

#include "adelic/errors.hpp"

namespace adelic {

Echelon row_reduce(Matrix<FieldElem> m, std::size_t cols) {
  Echelon e;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t piv = row;
    while (piv < m.size() && m[piv][col].is_zero()) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[row], m[piv]);
    const FieldElem inv = m[row][col].inverse();
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      const FieldElem f = m[r][col];
      for (std::size_t c = 0; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    e.pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  e.rows = std::move(m);
  return e;
}

std::size_t rank(const Matrix<FieldElem>& m, std::size_t cols) { return row_reduce(m, cols).pivots.size(); }

std::vector<std::vector<FieldElem>> kernel(const Matrix<FieldElem>& m, std::size_t cols, const Field& k) {
  const Echelon e = row_reduce(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<FieldElem>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<FieldElem> v(cols, k.zero());
    v[free] = k.one();
    for (std::size_t r = 0; r < e.rows.size(); ++r) v[e.pivots[r]] = -e.rows[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace adelic
