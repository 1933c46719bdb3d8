#pragma once

#include "deforma/presentations/presentation.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <vector>

namespace deforma {

/// Endpoint of a vertex slot: another vertex's slot, or an external leg
/// (vertex < 0) carrying label `slot`.
struct Port {
  int vertex = -1;
  int slot = 0;
  bool is_leg() const { return vertex < 0; }
  static Port leg(int label) { return {-1, label}; }
  auto operator<=>(const Port&) const = default;
};

/// Connected directed graph whose vertices are decorated by generators.
/// Inputs sit at the bottom, outputs at the top.
struct DecoratedGraph {
  int inputs = 0;
  int outputs = 0;
  std::vector<int> gens;
  std::vector<std::vector<Port>> in;   // in[v][i]: source of input slot i of v
  std::vector<std::vector<Port>> out;  // out[v][j]: target of output slot j of v

  int weight() const { return static_cast<int>(gens.size()); }
  int edge_count() const;
  int genus() const { return edge_count() - weight() + 1; }
  bool connected() const;
  bool acyclic() const;
  auto operator<=>(const DecoratedGraph&) const = default;
};

DecoratedGraph single_vertex(const Generator& g, int index);

/// Throws if slots and legs are inconsistent, or the graph is disconnected or has a directed cycle.
void validate_graph(const std::vector<Generator>& gens, const DecoratedGraph& g);

/// Pair of leg permutations; in[l] is the image of input label l.
struct LegPerm {
  std::vector<int> in, out;

  static LegPerm identity(int m, int n);
  LegPerm inverse() const;
  /// Apply *this first, then `next`.
  LegPerm then(const LegPerm& next) const;
  bool is_identity() const;
  auto operator<=>(const LegPerm&) const = default;
};

DecoratedGraph relabel(const DecoratedGraph& g, const LegPerm& p);

/// Sign of a permutation given as image vector.
int permutation_sign(const std::vector<int>& p);

/// Degree bookkeeping: a vertex carries its generator degree plus `shift`
/// (0 for graphs on E, -1 for graphs on the suspension sE).
struct GraphContext {
  const std::vector<Generator>* generators = nullptr;
  int shift = 0;

  const Generator& gen(int i) const { return (*generators)[i]; }
  int vertex_degree(int g) const { return gen(g).degree + shift; }
  int degree(const DecoratedGraph& g) const;
};

/// Result of canonicalization. In labeled mode `graph` keeps the leg labels
/// and b = sign * graph. In orbit mode legs are renamed by first appearance
/// and b = sign * to_canonical^{-1} . graph.
struct Canonical {
  DecoratedGraph graph;
  int sign = 1;  // 0: the graph vanishes in the coinvariants
  LegPerm to_canonical;
  /// Orbit mode only: pairs (h, chi) with h . graph = chi * graph.
  std::vector<std::pair<LegPerm, int>> automorphisms;
  /// Orbit mode only: number of automorphisms fixing every leg (parallel edge swaps).
  int internal_symmetry = 1;
  std::vector<int> key;
};

Canonical canonical_labeled(const GraphContext& ctx, const DecoratedGraph& g);
Canonical canonical_orbit(const GraphContext& ctx, const DecoratedGraph& g);

/// Sub-graph on an ordered vertex list, with boundary legs labeled by order of
/// occurrence (vertices in list order, slots in order).
struct Piece {
  DecoratedGraph graph;
  std::vector<int> vertices;
  std::vector<Port> input_source;   // boundary input -> port feeding it in the ambient graph
  std::vector<Port> input_origin;   // boundary input -> (ambient vertex, input slot)
  std::vector<Port> output_target;  // boundary output -> port it feeds in the ambient graph
  std::vector<Port> output_origin;  // boundary output -> (ambient vertex, output slot)
};

Piece extract(const DecoratedGraph& g, const std::vector<int>& vertices);

/// Replaces `piece` inside g by `replacement` (same boundary). Replacement
/// vertices come first, then the remaining vertices of g in their order.
DecoratedGraph substitute(const DecoratedGraph& g, const Piece& piece, const DecoratedGraph& replacement);

/// Two-block splittings: (upper, lower) vertex lists, both blocks connected,
/// every edge between them directed lower -> upper.
std::vector<std::pair<std::vector<int>, std::vector<int>>> admissible_cuts(const DecoratedGraph& g);

/// Ordered pairs (lower, upper) of adjacent vertices forming a convex two-vertex block.
std::vector<std::pair<int, int>> adjacent_pairs(const DecoratedGraph& g);

/// Isomorphism class of connected decorated graphs (with leg labels chosen canonically).
struct OrbitRep {
  DecoratedGraph graph;
  int genus = 0;
  int degree = 0;
  bool zero = false;
  std::vector<std::pair<LegPerm, int>> automorphisms;
  int internal_symmetry = 1;
  std::vector<int> key;

  int weight() const { return graph.weight(); }
  int inputs() const { return graph.inputs; }
  int outputs() const { return graph.outputs; }
};

/// All orbit classes by weight (index 0 unused) with weight <= W and genus <= G.
/// Zero classes are kept since larger graphs grow out of them.
std::vector<std::vector<OrbitRep>> enumerate_orbits(const GraphContext& ctx, int max_weight, int max_genus);

/// Graph of a relation term: vertex 0 = lower, vertex 1 = upper.
DecoratedGraph term_graph(const Presentation& p, const RelationTerm& t);

}  // namespace deforma
