#pragma once

// Dense Gaussian elimination used as an independent check on the sparse
// echelon code. Deliberately naive.

#include "deforma/exactalg/rational.hpp"

#include <vector>

namespace oracle {

using Dense = std::vector<std::vector<deforma::Rational>>;

inline std::size_t dense_rank(Dense m) {
  std::size_t r = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      deforma::Rational f = m[i][c] / m[r][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

inline Dense zeros(std::size_t r, std::size_t c) { return Dense(r, std::vector<deforma::Rational>(c, 0)); }

inline Dense multiply(const Dense& a, const Dense& b) {
  Dense out = zeros(a.size(), b.empty() ? 0 : b[0].size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < b[k].size(); ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

}  // namespace oracle
