#pragma once

#include "deforma/exactalg/sparse.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace deforma {

/// Z-graded vector space given by ordered basis labels per degree.
class GradedVectorSpace {
public:
  void add(int degree, std::string label);
  std::size_t dim(int degree) const;
  const std::vector<std::string>& basis(int degree) const;
  std::vector<int> degrees() const;  // degrees with nonzero dimension
  const std::map<int, std::vector<std::string>>& components() const { return components_; }

  /// (degree, index) of a label, throws if absent.
  std::pair<int, std::size_t> locate(const std::string& label) const;

private:
  std::map<int, std::vector<std::string>> components_;
  std::map<std::string, std::pair<int, std::size_t>> index_;
};

/// Cochain complex: d_n maps degree n to degree n + 1 and is stored as a
/// dim(n+1) x dim(n) matrix.
class CochainComplex {
public:
  CochainComplex() = default;
  explicit CochainComplex(GradedVectorSpace space) : space_(std::move(space)) {}

  const GradedVectorSpace& space() const { return space_; }
  std::size_t dim(int degree) const { return space_.dim(degree); }

  void set_differential(int degree, SparseMatrix d);
  /// Zero matrix of the right shape when nothing was set.
  SparseMatrix differential(int degree) const;
  const std::map<int, SparseMatrix>& differentials() const { return d_; }

  /// First degree n in [lo, hi] with d_{n+1} d_n != 0.
  std::optional<int> square_defect(int lo, int hi) const;

  std::string name;

private:
  GradedVectorSpace space_;
  std::map<int, SparseMatrix> d_;
};

struct CohomologyReport {
  std::map<int, std::size_t> betti;
  std::map<int, std::size_t> kernel_dim;
  std::map<int, std::size_t> image_rank;  // rank of d_{n-1} landing in degree n
  std::map<int, std::vector<SparseVector>> representatives;
};

/// Exact cohomology on [lo, hi]. Rejects (ErrorKind::Mathematical) if d^2 != 0
/// on [lo - 1, hi]. Representatives are computed only when requested.
CohomologyReport cohomology(const CochainComplex& c, int lo, int hi, bool with_representatives = false);

/// Complex text format: `complex <name>`, `basis <label> deg=<n>`,
/// `d <label> -> <p/q>*<label> + ...`. `#` starts a comment.
CochainComplex parse_complex(const std::string& text);
std::string format_complex(const CochainComplex& c);

}  // namespace deforma
