#pragma once

#include "deforma/linfty/linfty.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace deforma {

/// Monomial in graded-commutative generators: nondecreasing generator indices.
using Monomial = std::vector<int>;
/// Polynomial: monomial -> nonzero coefficient.
using Polynomial = std::map<Monomial, Rational>;

/// Graded-commutative polynomial arithmetic given generator parities.
struct GradedPolynomials {
  std::vector<int> degrees;

  /// Sign of sorting the concatenation a ++ b (0 if an odd generator repeats).
  int merge(const Monomial& a, const Monomial& b, Monomial& out) const;
  Polynomial multiply(const Polynomial& a, const Polynomial& b) const;
  int degree(const Monomial& m) const;
};

void add_to(Polynomial& p, const Monomial& m, const Rational& c);
void add_to(Polynomial& p, const Polynomial& q, const Rational& c = 1);
std::string format_polynomial(const Polynomial& p, const std::vector<std::string>& names);

/// Chevalley-Eilenberg algebra: free graded-commutative on generators xi_k of
/// degree 1 - |x_k|, with the differential dual to the brackets.
struct CEAlgebra {
  std::vector<std::string> generators;  // "xi_<label>"
  GradedPolynomials ring;
  std::vector<Polynomial> d;  // d xi_k
  int max_word_length = 0;

  /// Derivation extension to any polynomial.
  Polynomial differential(const Polynomial& p) const;
  /// First generator k with d^2 xi_k != 0, and the value.
  std::optional<std::pair<int, Polynomial>> square_defect() const;
  /// Quotient by words longer than max_word_length, as a cochain complex.
  CochainComplex complex() const;
};

/// Throws (Validation, CurvedAlgebra) on curved input. `max_word_length` 0
/// means 2 * max_arity - 1.
CEAlgebra ce_algebra(const LInftyAlgebra& g, int max_word_length = 0);

/// Result of squaring the CE differential, with a Jacobi witness when it fails.
struct CESquareCheck {
  bool square_zero = true;
  std::optional<int> generator;
  Polynomial defect;
  std::optional<LInftyViolation> witness;
};
CESquareCheck ce_square_check(const LInftyAlgebra& g);

/// The two polynomial systems cutting out MC(g (x) m_R) and Hom_cdga(C^*(g), R)
/// in the coefficients a_{k,p} of degree-1 elements x_k t^p.
struct McCeReport {
  std::vector<std::string> variables;  // "a_<label>_<p>"
  std::vector<std::string> mc_equations;  // normalized, sorted
  std::vector<std::string> ce_equations;
  bool equal = false;
  std::optional<std::string> mismatch;  // first differing normal form
};

/// `identification[k]` is the basis element of g whose dual is the CE
/// generator used for x_k (identity when empty).
McCeReport mc_vs_ce_points(const LInftyAlgebra& g, int n, const std::vector<int>& identification = {});

}  // namespace deforma
