#pragma once

#include "deforma/exactalg/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace deforma {

/// Sparse vector: entries sorted by index, no explicit zeros.
class SparseVector {
public:
  using Entry = std::pair<std::size_t, Rational>;

  SparseVector() = default;
  explicit SparseVector(std::vector<Entry> entries);  // sorts, merges, drops zeros

  static SparseVector unit(std::size_t i) { return SparseVector({{i, Rational(1)}}); }

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  Rational at(std::size_t i) const;
  std::optional<std::size_t> leading() const {
    if (entries_.empty()) return std::nullopt;
    return entries_.front().first;
  }

  /// this += c * other
  void axpy(const Rational& c, const SparseVector& other);
  void scale(const Rational& c);
  SparseVector operator+(const SparseVector& o) const { auto r = *this; r.axpy(1, o); return r; }
  SparseVector operator-(const SparseVector& o) const { auto r = *this; r.axpy(-1, o); return r; }
  SparseVector operator*(const Rational& c) const { auto r = *this; r.scale(c); return r; }
  bool operator==(const SparseVector& o) const { return entries_ == o.entries_; }

private:
  std::vector<Entry> entries_;
};

/// Accumulates a sparse vector with random-access inserts; finalize() sorts.
class VectorBuilder {
public:
  void add(std::size_t i, const Rational& c) {
    if (!is_zero(c)) acc_[i] += c;
  }
  void add(const SparseVector& v, const Rational& c = 1) {
    for (auto& [i, x] : v.entries()) add(i, x * c);
  }
  SparseVector finalize() const;
  bool empty() const;

private:
  std::map<std::size_t, Rational> acc_;
};

/// Sparse matrix in triplet form with unique (row, col) keys and nonzero values.
class SparseMatrix {
public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  /// Adds c to entry (r, c); entries that cancel to zero are removed.
  void add(std::size_t r, std::size_t c, const Rational& value);
  Rational at(std::size_t r, std::size_t c) const;
  std::size_t nonzeros() const { return entries_.size(); }

  const std::map<std::pair<std::size_t, std::size_t>, Rational>& entries() const { return entries_; }

  static SparseMatrix identity(std::size_t n);
  static SparseMatrix from_dense(const std::vector<std::vector<Rational>>& rows);
  static SparseMatrix from_columns(std::size_t rows, const std::vector<SparseVector>& cols);

  std::vector<SparseVector> row_vectors() const;
  std::vector<SparseVector> column_vectors() const;
  SparseVector apply(const SparseVector& v) const;
  SparseMatrix operator*(const SparseMatrix& o) const;
  bool is_zero() const { return entries_.empty(); }
  bool operator==(const SparseMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
  }

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::map<std::pair<std::size_t, std::size_t>, Rational> entries_;
};

/// Incrementally maintained row echelon basis of a subspace.
///
/// Pivots are leading indices and pivot entries are 1. reduce() clears every
/// pivot column, which makes the remainder a canonical representative modulo
/// the span. fully_reduce() back-substitutes so that rows also vanish in the
/// other pivot columns (needed to read off kernels and solutions).
class EchelonBasis {
public:
  explicit EchelonBasis(std::size_t dim = 0) : dim_(dim) {}

  /// Returns true if v enlarged the span.
  bool insert(SparseVector v);
  SparseVector reduce(SparseVector v) const;
  bool contains(const SparseVector& v) const { return reduce(v).empty(); }
  std::size_t rank() const { return rows_.size(); }
  std::size_t dim() const { return dim_; }
  bool is_pivot(std::size_t col) const { return rows_.count(col) > 0; }
  const std::map<std::size_t, SparseVector>& rows() const { return rows_; }

  /// Columns that carry no pivot, in increasing order.
  std::vector<std::size_t> free_columns() const;
  void fully_reduce();

private:
  SparseVector reduce_after(SparseVector v, std::size_t cursor) const;

  std::size_t dim_;
  bool reduced_ = true;
  std::map<std::size_t, SparseVector> rows_;  // pivot column -> row (pivot entry 1)
};

/// Exact rank over Q.
std::size_t rank(const SparseMatrix& m);

/// Basis of {v : m v = 0}; count is cols - rank.
std::vector<SparseVector> kernel_basis(const SparseMatrix& m);

/// Solves m x = b; nullopt if inconsistent. Deterministic: free variables set to 0.
std::optional<SparseVector> solve(const SparseMatrix& m, const SparseVector& b);

}  // namespace deforma
