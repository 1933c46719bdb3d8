#pragma once

#include "deforma/linfty/linfty.hpp"

#include <optional>
#include <string>
#include <vector>

namespace deforma {

/// R = K[t]/(t^{n+1}).
struct ArtinianScalars {
  int n = 1;
  /// Parses `t^k` (k >= 1), giving n = k - 1.
  static ArtinianScalars from_modulus(const std::string& text);
  std::string modulus() const { return "t^" + std::to_string(n + 1); }
};

/// g (x) m_R, or g (x) R when `with_unit` is set. Basis index is
/// g_index * powers + (p - first_power) for the power t^p.
struct ExtendedAlgebra {
  LInftyAlgebra algebra;
  std::size_t base_dim = 0;
  int n = 0;
  bool with_unit = false;
  SparseMatrix base_d;            // l_1 of g
  std::vector<int> base_degrees;  // degrees of g

  int first_power() const { return with_unit ? 0 : 1; }
  int powers() const { return n + 1 - first_power(); }
  std::size_t index(std::size_t g_index, int power) const;
  /// x t^p as an element of the extension.
  SparseVector embed(const SparseVector& x, int power) const;
  /// Coefficient of t^p.
  SparseVector coefficient(const SparseVector& v, int power) const;
};

ExtendedAlgebra extend_scalars(const LInftyAlgebra& g, const ArtinianScalars& R, bool with_unit = false);

/// Base MC element phi and the twisted algebra g^phi in which lifting happens.
struct DeformationProblem {
  LInftyAlgebra twisted;
  SparseVector base;
};
/// Throws (Mathematical, NotMaurerCartan) if phi is not MC.
DeformationProblem make_problem(const LInftyAlgebra& g, const SparseVector& phi);

/// phi + sum_i corrections[i-1] t^i, MC modulo t^{order+1}.
struct DeformationState {
  std::vector<SparseVector> corrections;
  int order() const { return static_cast<int>(corrections.size()); }
};

struct ObstructionClass {
  int order = 0;                // order that could not be reached
  SparseVector representative;  // twisted cocycle of degree 2
  std::size_t rank_boundaries = 0;
  std::size_t rank_with_class = 0;  // exceeds rank_boundaries exactly when the class is nonzero
  bool nonzero() const { return rank_with_class > rank_boundaries; }
};

struct LiftResult {
  std::optional<DeformationState> lifted;
  std::optional<ObstructionClass> obstruction;
};

/// Coefficient of t^j in the MC expression of the state (in g^phi).
SparseVector order_residual(const DeformationProblem& p, const DeformationState& s, int j);
/// Throws (Mathematical, NotMaurerCartan) unless the state is MC mod t^{order+1}.
void validate_state(const DeformationProblem& p, const DeformationState& s);
/// Right-hand side o with d phi_{k+1} = o; a twisted cocycle.
SparseVector obstruction_cochain(const DeformationProblem& p, const DeformationState& s);
LiftResult lift_order(const DeformationProblem& p, const DeformationState& s);
/// Lifts a first-order direction as far as possible (stops at an obstruction).
struct LiftRun {
  DeformationState state;
  std::optional<ObstructionClass> obstruction;
};
LiftRun lift_to_order(const DeformationProblem& p, const SparseVector& direction, int order);

/// All lifts of s to order k+1: `particular` + twisted 1-cocycles, modulo coboundaries of degree-0 elements.
struct LiftParametrization {
  SparseVector particular;
  std::vector<SparseVector> cocycles;
  std::vector<SparseVector> coboundaries;
  std::size_t parameters() const { return cocycles.size() - coboundaries.size(); }
};
LiftParametrization lift_set_parametrize(const DeformationProblem& p, const DeformationState& s,
                                         const SparseVector& lift);

/// Order-by-order gauge solver in a nilpotent dg Lie extension g (x) m_R. At
/// order p it solves for lambda_p together with a degree-0 cocycle added at
/// order p - 1, the only earlier choice that enters the order-p equation linearly.
struct GaugeResult {
  bool equivalent = false;
  SparseVector lambda;
  int failed_order = 0;   // first order with an inconsistent linear system
  SparseVector residual;  // the obstruction to matching at that order (a cocycle of g)
};
GaugeResult gauge_equivalent(const ExtendedAlgebra& ext, const SparseVector& tau1, const SparseVector& tau2);

/// Hochschild cochains Hom(X^{(x)a}, X), 1 <= a <= max_arity, in degree a - 1 with
/// the Gerstenhaber bracket (X concentrated in degree 0). MC elements of arity 2
/// are associative products.
struct GerstenhaberAlgebra {
  LInftyAlgebra algebra;
  int dim = 0;
  int max_arity = 0;
  std::vector<std::size_t> offsets;  // first index of each arity (index 0 unused)

  std::size_t index(int output, const std::vector<int>& inputs) const;
  /// Structure constants mu[k][i][j] of a bilinear map as an element.
  SparseVector bilinear(const std::vector<std::vector<std::vector<Rational>>>& mu) const;
  SparseVector linear(const std::vector<std::vector<Rational>>& a) const;  // a[k][i]: e_i -> sum a[k][i] e_k
};
GerstenhaberAlgebra gerstenhaber_algebra(const std::vector<std::string>& labels, int max_arity);

}  // namespace deforma
