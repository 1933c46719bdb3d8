#pragma once

#include "deforma/exactalg/complex.hpp"
#include "deforma/graphcal/graph.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace deforma {

/// Element of End_X(m, n) = Hom(X^{(x)m}, X^{(x)n}). Entry keys encode the
/// (output tuple, input tuple) of basis indices; see EndoProperad::encode.
struct Tensor {
  int inputs = 0;
  int outputs = 0;
  SparseVector entries;
  bool operator==(const Tensor&) const = default;
};

/// How an upper and a lower operation are glued into one of biarity (inputs, outputs).
struct Wiring {
  int inputs = 0, outputs = 0;
  std::vector<int> upper_in;   // >= 0: global input label; < 0: -(1 + lower output index)
  std::vector<int> upper_out;  // global output label
  std::vector<int> lower_in;   // global input label
  std::vector<int> lower_out;  // >= 0: global output label; < 0: -(1 + upper input index)
};

/// Koszul sign of moving graded factors (degrees in current order) to the given target positions.
int koszul_sign(const std::vector<int>& degrees, const std::vector<int>& target);

class EndoProperad {
public:
  EndoProperad(const CochainComplex& X, int max_biarity);

  int dim() const { return static_cast<int>(degrees_.size()); }
  int degree(int basis) const { return degrees_[basis]; }
  const std::vector<int>& degrees() const { return degrees_; }
  const std::vector<std::string>& labels() const { return labels_; }
  int index_of(const std::string& label) const;
  int max_biarity() const { return max_biarity_; }
  /// d_X as a dim x dim matrix on the flattened basis (column = source).
  const SparseMatrix& dX() const { return dx_; }

  std::uint64_t encode(const std::vector<int>& outs, const std::vector<int>& ins) const;
  void decode(std::uint64_t key, int m, int n, std::vector<int>& outs, std::vector<int>& ins) const;
  std::uint64_t component_dim(int m, int n) const;
  int key_degree(std::uint64_t key, int m, int n) const;

  /// d(F) = d_X . F - (-1)^{|F|} F . d_X.
  Tensor differential(const Tensor& f) const;
  /// Leg relabeling with Koszul signs (factor at position i moves to position p(i)).
  Tensor act(const Tensor& f, const LegPerm& p) const;
  /// mu_(1): feeds `lower` into `upper` along the wiring.
  Tensor compose(const Tensor& upper, const Tensor& lower, const Wiring& w) const;

private:
  std::vector<int> degrees_;
  std::vector<std::string> labels_;
  SparseMatrix dx_;
  std::vector<std::vector<std::pair<int, Rational>>> dx_cols_;  // d e_j = sum a e_i
  std::vector<std::vector<std::pair<int, Rational>>> dx_rows_;  // e_i appears in d e_j with a
  int max_biarity_;
};

}  // namespace deforma
