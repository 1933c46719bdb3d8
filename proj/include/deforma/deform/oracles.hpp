#pragma once

// Direct cochain complexes built from dense structure constants, independent of
// the graph and convolution machinery.

#include "deforma/exactalg/complex.hpp"

#include <vector>

namespace deforma {

/// mu[k][i][j] = coefficient of e_k in e_i e_j.
using DenseProduct = std::vector<std::vector<std::vector<Rational>>>;

/// Hochschild cochains Hom(A^{(x)a}, A) for min_arity <= a <= max_arity in
/// degree a - 1 with the bar differential. Betti numbers on degrees [lo, hi]
/// that the arity bound determines (a + 1 <= max_arity). Throws (Validation,
/// NotAssociative) if mu fails associativity.
CohomologyReport hochschild_oracle(const DenseProduct& mu, int lo, int hi, int max_arity, int min_arity = 1);

enum class CECoefficients { Trivial, Adjoint };

/// Chevalley-Eilenberg cochains Hom(Lambda^a g, M), a >= min_arity, with M
/// trivial (degree a) or adjoint (degree a - 1). Throws (Validation, NotLie)
/// unless the bracket is antisymmetric and satisfies Jacobi.
CohomologyReport ce_oracle(const DenseProduct& bracket, CECoefficients coefficients, int lo, int hi,
                           int min_arity = 0);

}  // namespace deforma
