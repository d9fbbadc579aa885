#include "filtmult/linalg.hpp"

#include <utility>

namespace filtmult::linalg {

namespace {

// Reduces [m | rhs] in place; returns false when m is singular.
bool gauss_jordan(Matrix& m, Matrix& rhs) {
  const std::size_t n = m.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return false;
    std::swap(m[pivot], m[col]);
    std::swap(rhs[pivot], rhs[col]);
    const Rational inv = Rational(1) / m[col][col];
    for (auto& v : m[col]) v *= inv;
    for (auto& v : rhs[col]) v *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t c = 0; c < n; ++c) m[r][c] -= f * m[col][c];
      for (std::size_t c = 0; c < rhs[r].size(); ++c) rhs[r][c] -= f * rhs[col][c];
    }
  }
  return true;
}

}  // namespace

std::optional<Matrix> inverse(const Matrix& m) {
  const std::size_t n = m.size();
  Matrix work = m;
  Matrix id(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  if (!gauss_jordan(work, id)) return std::nullopt;
  return id;
}

std::optional<std::vector<Rational>> solve(const Matrix& m, const std::vector<Rational>& b) {
  Matrix work = m;
  Matrix rhs(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) rhs[i] = {b[i]};
  if (!gauss_jordan(work, rhs)) return std::nullopt;
  std::vector<Rational> x(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) x[i] = rhs[i][0];
  return x;
}

Rational determinant(Matrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

std::vector<Rational> multiply(const Matrix& m, const std::vector<Rational>& v) {
  std::vector<Rational> out(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  }
  return out;
}

}  // namespace filtmult::linalg
