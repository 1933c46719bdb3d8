#include "deforma/exactalg/sparse.hpp"

#include <algorithm>

namespace deforma {

SparseVector::SparseVector(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (auto& e : entries) {
    if (!entries_.empty() && entries_.back().first == e.first) {
      entries_.back().second += e.second;
    } else {
      entries_.push_back(std::move(e));
    }
  }
  std::erase_if(entries_, [](const Entry& e) { return is_zero(e.second); });
}

Rational SparseVector::at(std::size_t i) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                             [](const Entry& e, std::size_t k) { return e.first < k; });
  if (it != entries_.end() && it->first == i) return it->second;
  return 0;
}

void SparseVector::axpy(const Rational& c, const SparseVector& other) {
  if (is_zero(c) || other.empty()) return;
  std::vector<Entry> out;
  out.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin(), ae = entries_.end();
  auto b = other.entries_.begin(), be = other.entries_.end();
  while (a != ae || b != be) {
    if (b == be || (a != ae && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == ae || b->first < a->first) {
      out.emplace_back(b->first, c * b->second);
      ++b;
    } else {
      Rational s = a->second + c * b->second;
      if (!is_zero(s)) out.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  entries_ = std::move(out);
}

void SparseVector::scale(const Rational& c) {
  if (is_zero(c)) {
    entries_.clear();
    return;
  }
  for (auto& e : entries_) e.second *= c;
}

SparseVector VectorBuilder::finalize() const {
  std::vector<SparseVector::Entry> out;
  for (auto& [i, c] : acc_)
    if (!is_zero(c)) out.emplace_back(i, c);
  return SparseVector(std::move(out));
}

bool VectorBuilder::empty() const {
  for (auto& [i, c] : acc_)
    if (!is_zero(c)) return false;
  return true;
}

void SparseMatrix::add(std::size_t r, std::size_t c, const Rational& value) {
  if (deforma::is_zero(value)) return;
  auto key = std::make_pair(r, c);
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    entries_.emplace(key, value);
  } else {
    it->second += value;
    if (deforma::is_zero(it->second)) entries_.erase(it);
  }
}

Rational SparseMatrix::at(std::size_t r, std::size_t c) const {
  auto it = entries_.find({r, c});
  return it == entries_.end() ? Rational(0) : it->second;
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.add(i, i, 1);
  return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<Rational>>& rows) {
  SparseMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m.add(r, c, rows[r][c]);
  return m;
}

SparseMatrix SparseMatrix::from_columns(std::size_t rows, const std::vector<SparseVector>& cols) {
  SparseMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (auto& [r, x] : cols[c].entries()) m.add(r, c, x);
  return m;
}

std::vector<SparseVector> SparseMatrix::row_vectors() const {
  std::vector<std::vector<SparseVector::Entry>> rows(rows_);
  for (auto& [rc, x] : entries_) rows[rc.first].emplace_back(rc.second, x);
  std::vector<SparseVector> out;
  out.reserve(rows_);
  for (auto& r : rows) out.emplace_back(std::move(r));
  return out;
}

std::vector<SparseVector> SparseMatrix::column_vectors() const {
  std::vector<std::vector<SparseVector::Entry>> cols(cols_);
  for (auto& [rc, x] : entries_) cols[rc.second].emplace_back(rc.first, x);
  std::vector<SparseVector> out;
  out.reserve(cols_);
  for (auto& c : cols) out.emplace_back(std::move(c));
  return out;
}

SparseVector SparseMatrix::apply(const SparseVector& v) const {
  VectorBuilder b;
  auto cols = column_vectors();
  for (auto& [i, x] : v.entries())
    if (i < cols_) b.add(cols[i], x);
  return b.finalize();
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const {
  SparseMatrix out(rows_, o.cols_);
  auto left_cols = column_vectors();
  for (auto& [rc, x] : o.entries_)
    for (auto& [r, y] : left_cols[rc.first].entries()) out.add(r, rc.second, y * x);
  return out;
}

bool EchelonBasis::insert(SparseVector v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  std::size_t pivot = *v.leading();
  Rational inv = 1 / v.entries().front().second;
  v.scale(inv);
  rows_.emplace(pivot, std::move(v));
  reduced_ = false;
  return true;
}

void EchelonBasis::fully_reduce() {
  if (reduced_) return;
  // descending pivots: every row with a larger pivot is already fully reduced
  for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
    auto& row = it->second;
    SparseVector head({row.entries().front()});
    SparseVector tail = row - head;
    row = head + reduce_after(std::move(tail), it->first + 1);
  }
  reduced_ = true;
}

SparseVector EchelonBasis::reduce(SparseVector v) const { return reduce_after(std::move(v), 0); }

SparseVector EchelonBasis::reduce_after(SparseVector v, std::size_t cursor) const {
  if (rows_.empty()) return v;
  // A row with pivot p only has entries at columns >= p, so eliminating pivot
  // columns in increasing order never reintroduces an earlier pivot.
  while (true) {
    const auto& es = v.entries();
    auto it = std::lower_bound(es.begin(), es.end(), cursor,
                               [](const SparseVector::Entry& e, std::size_t k) { return e.first < k; });
    while (it != es.end() && !rows_.count(it->first)) ++it;
    if (it == es.end()) break;
    std::size_t col = it->first;
    Rational c = it->second;
    v.axpy(-c, rows_.at(col));
    cursor = col + 1;
  }
  return v;
}

std::vector<std::size_t> EchelonBasis::free_columns() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < dim_; ++c)
    if (!rows_.count(c)) out.push_back(c);
  return out;
}

std::size_t rank(const SparseMatrix& m) {
  // rank of the row space; iterate over the smaller side
  EchelonBasis basis(m.rows() < m.cols() ? m.cols() : m.rows());
  if (m.rows() <= m.cols()) {
    for (auto& r : m.row_vectors()) basis.insert(r);
  } else {
    for (auto& c : m.column_vectors()) basis.insert(c);
  }
  return basis.rank();
}

std::vector<SparseVector> kernel_basis(const SparseMatrix& m) {
  EchelonBasis basis(m.cols());
  for (auto& r : m.row_vectors()) basis.insert(r);
  basis.fully_reduce();
  std::vector<SparseVector> out;
  for (std::size_t f : basis.free_columns()) {
    std::vector<SparseVector::Entry> e{{f, Rational(1)}};
    for (auto& [p, row] : basis.rows()) {
      Rational c = row.at(f);
      if (!is_zero(c)) e.emplace_back(p, -c);
    }
    out.emplace_back(std::move(e));
  }
  return out;
}

std::optional<SparseVector> solve(const SparseMatrix& m, const SparseVector& b) {
  // Row-reduce the augmented matrix [m | b]; column m.cols() holds b.
  const std::size_t aug = m.cols();
  EchelonBasis basis(aug + 1);
  auto rows = m.row_vectors();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = rows[r];
    Rational br = b.at(r);
    if (!is_zero(br)) row.axpy(1, SparseVector({{aug, br}}));
    basis.insert(std::move(row));
  }
  if (basis.is_pivot(aug)) return std::nullopt;
  basis.fully_reduce();
  std::vector<SparseVector::Entry> x;
  for (auto& [p, row] : basis.rows()) {
    Rational c = row.at(aug);
    if (!is_zero(c)) x.emplace_back(p, c);
  }
  return SparseVector(std::move(x));
}

}  // namespace deforma
