#include "deforma/presentations/components.hpp"

#include <map>
#include <tuple>

namespace deforma {

LabeledSpace free_component(const std::vector<Generator>& E, int m, int n, int w, int G) {
  return LabeledSpace(GraphContext{&E, 0}, m, n, w, G);
}

std::vector<SparseVector> relation_span(const Presentation& p, const LabeledSpace& two) {
  const GraphContext& ctx = two.context();
  EchelonBasis span(two.dim());
  auto perms = all_leg_perms(two.inputs(), two.outputs());
  for (const auto& rel : p.relations) {
    const auto& t0 = rel.terms.front();
    TermShape sh = term_shape(p, t0);
    if (sh.inputs != two.inputs() || sh.outputs != two.outputs()) continue;
    VectorBuilder b;
    bool inside = true;
    for (const auto& t : rel.terms) {
      int su = ctx.vertex_degree(t.upper), sl = ctx.vertex_degree(t.lower);
      // reorder (upper, lower) to the graph's vertex order; suspended terms also pass s past upper
      int eps = ((su * sl + (ctx.shift % 2 ? su : 0)) % 2 == 0) ? 1 : -1;
      try {  // relations of higher genus than the space do not fit
        two.accumulate(b, term_graph(p, t), t.coefficient * eps);
      } catch (const Error&) {
        inside = false;
      }
    }
    if (!inside) continue;
    SparseVector r = b.finalize();
    for (const auto& h : perms) span.insert(two.act(r, h));
  }
  std::vector<SparseVector> out;
  span.fully_reduce();
  for (auto& [piv, row] : span.rows()) out.push_back(row);
  return out;
}

QuotientComponent quotient_component(const Presentation& p, int m, int n, int w, int G) {
  QuotientComponent q{free_component(p.generators, m, n, w, G), EchelonBasis(), {}};
  q.ideal = EchelonBasis(q.free.dim());
  const GraphContext& ctx = q.free.context();
  std::map<std::tuple<int, int, int>, std::pair<LabeledSpace, std::vector<SparseVector>>> pieces;
  for (std::size_t bi = 0; bi < q.free.dim() && w >= 2; ++bi) {
    const DecoratedGraph& b = q.free.graph(bi);
    for (auto [lo, up] : adjacent_pairs(b)) {
      Piece piece = extract(b, {lo, up});
      auto key = std::make_tuple(piece.graph.inputs, piece.graph.outputs, piece.graph.genus());
      auto it = pieces.find(key);
      if (it == pieces.end()) {
        LabeledSpace two(ctx, piece.graph.inputs, piece.graph.outputs, 2, piece.graph.genus());
        auto span = relation_span(p, two);
        it = pieces.emplace(key, std::make_pair(std::move(two), std::move(span))).first;
      }
      const auto& [two, span] = it->second;
      for (const auto& r : span) {
        VectorBuilder v;
        for (auto& [c, x] : r.entries()) q.free.accumulate(v, substitute(b, piece, two.graph(c)), x);
        q.ideal.insert(v.finalize());
      }
    }
  }
  q.normal_basis = q.ideal.free_columns();
  return q;
}

}  // namespace deforma
