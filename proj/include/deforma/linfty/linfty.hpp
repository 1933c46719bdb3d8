#pragma once

#include "deforma/exactalg/complex.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace deforma {

/// Finite L-infinity algebra on a flat basis. l_1 is the matrix `d`; l_k for
/// k >= 2 is stored on nondecreasing index tuples and extended by graded
/// antisymmetry. l_k has degree 2 - k.
class LInftyAlgebra {
public:
  LInftyAlgebra() = default;
  /// Flattens the complex degree by degree; weights default to 0.
  explicit LInftyAlgebra(const CochainComplex& c);

  std::size_t dim() const { return degrees.size(); }
  int max_arity() const { return brackets.empty() ? 1 : brackets.rbegin()->first; }
  int index_of(const std::string& label) const;
  /// Indices of the basis elements of one degree.
  std::vector<std::size_t> degree_indices(int degree) const;
  int degree_of(const SparseVector& v) const;  // throws on inhomogeneous input

  /// Sign of reordering the tuple into nondecreasing order (0 if a repeated
  /// even element forces the value to vanish). Sorts `args` in place.
  int sort_sign(std::vector<int>& args) const;

  SparseVector l1(const SparseVector& v) const { return d.apply(v); }
  /// l_k on basis elements in any order.
  SparseVector bracket(std::vector<int> args) const;
  /// Multilinear extension.
  SparseVector bracket(const std::vector<SparseVector>& args) const;
  /// Stores l_k(args) = value (args in any order, value adjusted by the sign).
  void set_bracket(std::vector<int> args, const SparseVector& value);
  /// Adds to an entry.
  void add_bracket(std::vector<int> args, const SparseVector& value);

  /// Underlying cochain complex (one degree block per degree).
  CochainComplex complex() const;

  std::vector<std::string> labels;
  std::vector<int> degrees;
  std::vector<int> weights;
  SparseMatrix d;
  std::map<int, std::map<std::vector<int>, SparseVector>> brackets;
  /// Optional pruning: brackets on tuples whose weight sum exceeds the cap vanish.
  std::optional<int> weight_cap;
  /// Twisting by a non-MC element leaves an l_0 term.
  bool curved = false;
  SparseVector curvature;
};

bool operator==(const LInftyAlgebra& a, const LInftyAlgebra& b);

struct LInftyViolation {
  std::string identity;  // "degree", "antisymmetry", "jacobi"
  int arity = 0;
  std::vector<int> witness;
  SparseVector value;
};

/// Verifies degrees, antisymmetry and every generalized Jacobi identity with up
/// to `max_inputs` inputs (default: all that can be nonzero).
std::optional<LInftyViolation> check_linfty(const LInftyAlgebra& g, int max_inputs = 0);

/// Jacobi expression on a basis tuple (also used for witnesses).
SparseVector jacobi_expression(const LInftyAlgebra& g, const std::vector<int>& args);

/// First bracket entry whose output weight drops below the largest input weight.
std::optional<std::vector<int>> check_filtration(const LInftyAlgebra& g);

/// sum_k (1/k!) l_k(tau, ..., tau) for a degree-1 element.
SparseVector mc_residual(const LInftyAlgebra& g, const SparseVector& tau);

/// l_k^tau = sum_i (1/i!) l_{k+i}(tau^i, -). Sets `curved` when tau is not MC.
LInftyAlgebra twist(const LInftyAlgebra& g, const SparseVector& tau);

/// Gauge action of a degree-0 element on a degree-1 element (dg Lie case).
SparseVector gauge_act(const LInftyAlgebra& g, const SparseVector& lambda, const SparseVector& tau,
                       int max_terms = 64);

/// Baker-Campbell-Hausdorff product of degree-0 elements through the given order (<= 4).
SparseVector bch(const LInftyAlgebra& g, const SparseVector& x, const SparseVector& y, int order);

/// Element of g (x) Omega_n: basis index of g paired with a form monomial.
struct FormMonomial {
  std::vector<int> t;   // exponents of t_1..t_n
  unsigned dt = 0;      // bitmask of dt_i factors
  auto operator<=>(const FormMonomial&) const = default;
  int degree() const { return __builtin_popcount(dt); }
  int poly_degree() const;
};

/// Polynomial de Rham forms on the n-simplex modulo total degree > D
/// (dt_i counted with degree 1), tensored with g.
struct FormsAlgebra {
  LInftyAlgebra algebra;
  int level = 0;
  int max_degree = 0;
  std::vector<FormMonomial> monomials;  // basis of the truncated forms
  std::size_t base_dim = 0;             // algebra index = g_index * monomials.size() + monomial index

  std::size_t index(std::size_t g_index, const FormMonomial& w) const;
  /// Restriction to a vertex of the simplex: all t_i = 0, or t_j = 1 for the j-th vertex (j >= 1).
  SparseVector evaluate_at_vertex(const SparseVector& v, int vertex) const;
};

FormsAlgebra extend_forms(const LInftyAlgebra& g, int level, int max_degree);

/// L-infinity text format: a complex block (basis lines may carry `wt=<r>`)
/// and `bracket k: (a,b,..) -> c*x + ...` lines.
LInftyAlgebra parse_linfty(const std::string& text);
std::string format_linfty(const LInftyAlgebra& g, const std::string& name = "g");

}  // namespace deforma
