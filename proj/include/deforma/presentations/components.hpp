#pragma once

#include "deforma/exactalg/sparse.hpp"
#include "deforma/graphcal/labeled.hpp"
#include "deforma/presentations/presentation.hpp"

namespace deforma {

/// Weight-w, genus <= G part of the free properad on E in biarity (m, n).
LabeledSpace free_component(const std::vector<Generator>& E, int m, int n, int w, int G);

struct QuotientComponent {
  LabeledSpace free;
  EchelonBasis ideal;                     // weight-w piece of the relation ideal
  std::vector<std::size_t> normal_basis;  // free basis indices spanning a complement

  std::size_t dim() const { return normal_basis.size(); }
};

/// F(E)^(w)(m,n) modulo the ideal generated by the relations.
QuotientComponent quotient_component(const Presentation& p, int m, int n, int w, int G);

/// Span of all relabelings of the relations of matching shape, inside a
/// two-vertex labeled space. Terms are read as vertex order (lower, upper); on
/// suspended generators (shift -1) each term carries the sign
/// (-1)^{|sU||sL| + |sU|}.
std::vector<SparseVector> relation_span(const Presentation& p, const LabeledSpace& two_vertex);

}  // namespace deforma
