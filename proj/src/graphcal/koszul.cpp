#include "deforma/graphcal/koszul.hpp"

#include "deforma/presentations/components.hpp"

#include <tuple>

namespace deforma {

std::vector<SparseVector> koszul_annihilator(const Presentation& p, const LabeledSpace& space) {
  const GraphContext& ctx = space.context();
  EchelonBasis ann(space.dim());
  std::map<std::tuple<int, int, int>, std::pair<LabeledSpace, std::vector<SparseVector>>> perps;
  for (std::size_t bi = 0; bi < space.dim(); ++bi) {
    const DecoratedGraph& b = space.graph(bi);
    for (auto [lo, up] : adjacent_pairs(b)) {
      Piece piece = extract(b, {lo, up});
      auto key = std::make_tuple(piece.graph.inputs, piece.graph.outputs, piece.graph.genus());
      auto it = perps.find(key);
      if (it == perps.end()) {
        LabeledSpace two(ctx, piece.graph.inputs, piece.graph.outputs, 2, piece.graph.genus());
        auto span = relation_span(p, two);
        SparseMatrix t(span.size(), two.dim());  // relation vectors as rows
        for (std::size_t r = 0; r < span.size(); ++r)
          for (auto& [i, x] : span[r].entries()) t.add(r, i, x);
        it = perps.emplace(key, std::make_pair(std::move(two), kernel_basis(t))).first;
      }
      const auto& [two, perp] = it->second;
      for (const auto& lambda : perp) {
        VectorBuilder v;
        for (auto& [c, x] : lambda.entries()) space.accumulate(v, substitute(b, piece, two.graph(c)), x);
        ann.insert(v.finalize());
      }
    }
  }
  ann.fully_reduce();
  std::vector<SparseVector> out;
  for (auto& [piv, row] : ann.rows()) out.push_back(row);
  return out;
}

CoproperadComponent koszul_dual_component(const Presentation& p, int m, int n, int w, int G) {
  CoproperadComponent c{LabeledSpace(GraphContext{&p.generators, -1}, m, n, w, G), {}, w, w};
  auto ann = koszul_annihilator(p, c.space);
  SparseMatrix rows(ann.size(), c.space.dim());
  for (std::size_t r = 0; r < ann.size(); ++r)
    for (auto& [i, x] : ann[r].entries()) rows.add(r, i, x);
  c.basis = kernel_basis(rows);
  return c;
}

std::pair<std::vector<int>, int> tagged_key(const GraphContext& ctx, const DecoratedGraph& g, const std::vector<int>& tags) {
  int levels = 0;
  for (int t : tags) levels = std::max(levels, t + 1);
  const int ng = static_cast<int>(ctx.generators->size());
  std::vector<Generator> tagged;
  for (int t = 0; t < levels; ++t)
    for (auto gen : *ctx.generators) {
      gen.name += "@" + std::to_string(t);
      tagged.push_back(gen);
    }
  DecoratedGraph h = g;
  for (int v = 0; v < h.weight(); ++v) h.gens[v] += tags[v] * ng;
  Canonical c = canonical_labeled(GraphContext{&tagged, ctx.shift}, h);
  return {c.key, c.sign};
}

std::map<std::vector<int>, Rational> infinitesimal_coproduct(const LabeledSpace& space, const SparseVector& element,
                                                             std::map<std::vector<int>, Splitting>* terms) {
  std::map<std::vector<int>, Rational> out;
  for (auto& [i, x] : element.entries()) {
    const DecoratedGraph& b = space.graph(i);
    for (auto& [upper, lower] : admissible_cuts(b)) {
      std::vector<int> tags(b.weight(), 1);
      for (int v : upper) tags[v] = 0;
      auto [key, sign] = tagged_key(space.context(), b, tags);
      if (sign == 0) continue;
      out[key] += x * sign;
      if (terms && !terms->count(key)) terms->emplace(key, Splitting{key, extract(b, upper).graph, extract(b, lower).graph});
    }
  }
  std::erase_if(out, [](const auto& kv) { return is_zero(kv.second); });
  return out;
}

}  // namespace deforma
