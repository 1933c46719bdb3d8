#pragma once

#include "deforma/graphcal/labeled.hpp"
#include "deforma/presentations/presentation.hpp"

#include <map>
#include <vector>

namespace deforma {

/// One labeled component of the Koszul dual coproperad, as a subspace of the
/// free graph span on the suspended generators. Weight-w elements carry
/// `shift` = w suspensions relative to their generators.
struct CoproperadComponent {
  LabeledSpace space;                // F(sE)^(w)(m, n), genus <= G
  std::vector<SparseVector> basis;   // basis of the component inside `space`
  int weight = 0;
  int shift = 0;                     // number of suspensions

  std::size_t dim() const { return basis.size(); }
};

/// Annihilator of the component: vectors lambda inserted at one convex pair,
/// lambda ranging over the orthogonal complement of the relation span.
std::vector<SparseVector> koszul_annihilator(const Presentation& p, const LabeledSpace& space);

CoproperadComponent koszul_dual_component(const Presentation& p, int m, int n, int w, int G);

/// A term of the infinitesimal coproduct: the graph with vertices tagged
/// upper/lower, in labeled canonical form. `upper` and `lower` are the two
/// blocks with boundary legs labeled by order of occurrence.
struct Splitting {
  std::vector<int> key;
  DecoratedGraph upper, lower;
};

/// Delta_(1) on a labeled element: sum over admissible cuts, keyed by tagged
/// canonical form. Signs are the Koszul signs of moving the upper block to
/// the front of the vertex order.
std::map<std::vector<int>, Rational> infinitesimal_coproduct(const LabeledSpace& space, const SparseVector& element,
                                                             std::map<std::vector<int>, Splitting>* terms = nullptr);

/// Canonical key of a graph whose vertices carry level tags (0 = top). Used to
/// compare multi-level splittings; returns the sign relating g to the key's
/// representative (0 if it vanishes).
std::pair<std::vector<int>, int> tagged_key(const GraphContext& ctx, const DecoratedGraph& g, const std::vector<int>& tags);

}  // namespace deforma
