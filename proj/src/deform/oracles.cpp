#include "deforma/deform/oracles.hpp"

#include <algorithm>
#include <functional>

namespace deforma {

namespace {

using Dense = std::vector<std::vector<Rational>>;

// Row reduction of a dense matrix.
std::size_t dense_rank(Dense m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][c] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k)
        if (m[rank][k] != 0) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

std::size_t power(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

std::size_t encode(const std::vector<int>& digits, std::size_t base) {
  std::size_t r = 0;
  for (int x : digits) r = r * base + x;
  return r;
}

std::vector<int> decode(std::size_t key, int length, std::size_t base) {
  std::vector<int> out(length);
  for (int i = length - 1; i >= 0; --i) {
    out[i] = static_cast<int>(key % base);
    key /= base;
  }
  return out;
}

// Betti numbers from the ranks of the maps out of and into each cochain group.
CohomologyReport assemble(int lo, int hi, const std::function<std::size_t(int)>& dim_at,
                          const std::function<std::size_t(int)>& rank_out) {
  CohomologyReport r;
  for (int deg = lo; deg <= hi; ++deg) {
    std::size_t dim = dim_at(deg);
    std::size_t out = dim ? rank_out(deg) : 0;
    std::size_t in = dim_at(deg - 1) ? rank_out(deg - 1) : 0;
    r.kernel_dim[deg] = dim - out;
    r.image_rank[deg] = in;
    r.betti[deg] = dim - out - in;
  }
  return r;
}

}  // namespace

CohomologyReport hochschild_oracle(const DenseProduct& mu, int lo, int hi, int max_arity, int min_arity) {
  const std::size_t n = mu.size();
  if (n == 0) throw Error(ErrorKind::Validation, "EmptyAlgebra", "the algebra has no basis");
  if (lo > hi) throw Error(ErrorKind::Validation, "BadRange", "empty degree range");
  if (min_arity < 1) throw Error(ErrorKind::Validation, "BadArity", "cochains start in arity 1");
  for (const auto& plane : mu) {
    if (plane.size() != n) throw Error(ErrorKind::Validation, "ShapeMismatch", "structure constants are not n x n x n");
    for (const auto& row : plane)
      if (row.size() != n) throw Error(ErrorKind::Validation, "ShapeMismatch", "structure constants are not n x n x n");
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t o = 0; o < n; ++o) {
          Rational left = 0, right = 0;
          for (std::size_t k = 0; k < n; ++k) {
            left += mu[k][a][b] * mu[o][k][c];
            right += mu[k][b][c] * mu[o][a][k];
          }
          if (left != right) throw Error(ErrorKind::Validation, "NotAssociative", "the product is not associative");
        }
  if (hi + 2 > max_arity)
    throw Error(ErrorKind::Truncation, "TruncationUnderflow",
                "degree " + std::to_string(hi) + " needs cochains of arity " + std::to_string(hi + 2));

  auto arity_ok = [&](int a) { return a >= min_arity && a <= max_arity; };
  auto dim_at = [&](int deg) -> std::size_t { return arity_ok(deg + 1) ? power(n, deg + 2) : 0; };
  // delta: C^a -> C^{a+1}; column (o, I) is a cochain, row (k, J) a value
  auto rank_out = [&](int deg) -> std::size_t {
    int a = deg + 1;
    if (!arity_ok(a + 1)) return 0;
    const std::size_t cols = power(n, a + 1), rows = power(n, a + 2);
    Dense m(rows, std::vector<Rational>(cols));
    const std::size_t in_a = power(n, a), in_b = power(n, a + 1);
    for (std::size_t jk = 0; jk < in_b; ++jk) {
      auto J = decode(jk, a + 1, n);
      for (std::size_t k = 0; k < n; ++k) {
        std::size_t row = k * in_b + jk;
        // a_0 f(a_1 .. a_a)
        std::vector<int> tail(J.begin() + 1, J.end());
        for (std::size_t o = 0; o < n; ++o) m[row][o * in_a + encode(tail, n)] += mu[k][J[0]][o];
        // (-1)^{a+1} f(a_0 .. a_{a-1}) a_a
        std::vector<int> head(J.begin(), J.end() - 1);
        for (std::size_t o = 0; o < n; ++o)
          m[row][o * in_a + encode(head, n)] += (a % 2 ? 1 : -1) * mu[k][o][J[a]];
      }
      // sum_i (-1)^i f(.. a_{i-1} a_i ..)
      for (int i = 1; i <= a; ++i)
        for (std::size_t p = 0; p < n; ++p) {
          Rational c = mu[p][J[i - 1]][J[i]];
          if (c == 0) continue;
          std::vector<int> merged(J.begin(), J.begin() + i - 1);
          merged.push_back(static_cast<int>(p));
          merged.insert(merged.end(), J.begin() + i + 1, J.end());
          for (std::size_t k = 0; k < n; ++k) m[k * in_b + jk][k * in_a + encode(merged, n)] += (i % 2 ? -1 : 1) * c;
        }
    }
    return dense_rank(std::move(m));
  };
  return assemble(lo, hi, dim_at, rank_out);
}

CohomologyReport ce_oracle(const DenseProduct& br, CECoefficients coefficients, int lo, int hi, int min_arity) {
  const int n = static_cast<int>(br.size());
  if (n == 0) throw Error(ErrorKind::Validation, "EmptyAlgebra", "the algebra has no basis");
  if (lo > hi) throw Error(ErrorKind::Validation, "BadRange", "empty degree range");
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (br[k][i][j] != -br[k][j][i]) throw Error(ErrorKind::Validation, "NotLie", "the bracket is not antisymmetric");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int o = 0; o < n; ++o) {
          Rational s = 0;
          for (int k = 0; k < n; ++k)
            s += br[k][a][b] * br[o][k][c] + br[k][b][c] * br[o][k][a] + br[k][c][a] * br[o][k][b];
          if (s != 0) throw Error(ErrorKind::Validation, "NotLie", "the bracket fails the Jacobi identity");
        }
  const bool adjoint = coefficients == CECoefficients::Adjoint;
  const int shift = adjoint ? 1 : 0;
  const int outputs = adjoint ? n : 1;
  if (min_arity == 0 && adjoint) min_arity = 1;

  // strictly increasing tuples of each length
  std::vector<std::vector<std::vector<int>>> subsets(n + 1);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) s.push_back(i);
    subsets[s.size()].push_back(s);
  }
  for (auto& level : subsets) std::sort(level.begin(), level.end());
  auto position = [&](const std::vector<int>& s) {
    auto& level = subsets[s.size()];
    return static_cast<std::size_t>(std::lower_bound(level.begin(), level.end(), s) - level.begin());
  };
  auto arity_ok = [&](int a) { return a >= min_arity && a <= n; };
  auto dim_at = [&](int deg) -> std::size_t {
    int a = deg + shift;
    return arity_ok(a) ? subsets[a].size() * outputs : 0;
  };
  auto rank_out = [&](int deg) -> std::size_t {
    int a = deg + shift;
    if (!arity_ok(a + 1)) return 0;
    const std::size_t cols = subsets[a].size();
    Dense m(subsets[a + 1].size() * outputs, std::vector<Rational>(cols * outputs));
    for (std::size_t jr = 0; jr < subsets[a + 1].size(); ++jr) {
      const auto& J = subsets[a + 1][jr];
      // sum_i (-1)^i x_i . f(.. omit i ..)
      if (adjoint)
        for (int i = 0; i <= a; ++i) {
          std::vector<int> rest = J;
          rest.erase(rest.begin() + i);
          std::size_t col = position(rest);
          for (int k = 0; k < n; ++k)
            for (int o = 0; o < n; ++o) m[jr * outputs + k][col * outputs + o] += (i % 2 ? -1 : 1) * br[k][J[i]][o];
        }
      // sum_{i<j} (-1)^{i+j} f([x_i, x_j], .. omit i, j ..)
      for (int i = 0; i <= a; ++i)
        for (int j = i + 1; j <= a; ++j)
          for (int p = 0; p < n; ++p) {
            Rational c = br[p][J[i]][J[j]];
            if (c == 0) continue;
            std::vector<int> rest;
            for (int q = 0; q <= a; ++q)
              if (q != i && q != j) rest.push_back(J[q]);
            if (std::find(rest.begin(), rest.end(), p) != rest.end()) continue;
            int before = static_cast<int>(std::lower_bound(rest.begin(), rest.end(), p) - rest.begin());
            rest.insert(rest.begin() + before, p);
            Rational v = c * ((i + j + before) % 2 ? -1 : 1);
            std::size_t col = position(rest);
            for (int o = 0; o < outputs; ++o) m[jr * outputs + o][col * outputs + o] += v;
          }
    }
    return dense_rank(std::move(m));
  };
  return assemble(lo, hi, dim_at, rank_out);
}

}  // namespace deforma
