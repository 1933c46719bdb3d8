#include "deforma/graphcal/graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace deforma {

int DecoratedGraph::edge_count() const {
  int e = 0;
  for (auto& slots : in)
    for (auto& p : slots)
      if (!p.is_leg()) ++e;
  return e;
}

bool DecoratedGraph::connected() const {
  int w = weight();
  if (w == 0) return false;
  std::vector<char> seen(w, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    auto visit = [&](const Port& p) {
      if (!p.is_leg() && !seen[p.vertex]) {
        seen[p.vertex] = 1;
        stack.push_back(p.vertex);
      }
    };
    for (auto& p : in[v]) visit(p);
    for (auto& p : out[v]) visit(p);
  }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c; });
}

bool DecoratedGraph::acyclic() const {
  int w = weight();
  std::vector<int> indeg(w, 0);
  for (int v = 0; v < w; ++v)
    for (auto& p : in[v])
      if (!p.is_leg()) ++indeg[v];
  std::vector<int> ready;
  for (int v = 0; v < w; ++v)
    if (indeg[v] == 0) ready.push_back(v);
  int done = 0;
  while (!ready.empty()) {
    int v = ready.back();
    ready.pop_back();
    ++done;
    for (auto& p : out[v])
      if (!p.is_leg() && --indeg[p.vertex] == 0) ready.push_back(p.vertex);
  }
  return done == w;
}

DecoratedGraph single_vertex(const Generator& g, int index) {
  DecoratedGraph out;
  out.inputs = g.inputs;
  out.outputs = g.outputs;
  out.gens = {index};
  out.in.resize(1);
  out.out.resize(1);
  for (int i = 0; i < g.inputs; ++i) out.in[0].push_back(Port::leg(i));
  for (int j = 0; j < g.outputs; ++j) out.out[0].push_back(Port::leg(j));
  return out;
}

void validate_graph(const std::vector<Generator>& gens, const DecoratedGraph& g) {
  auto fail = [](const std::string& m) { throw Error(ErrorKind::Validation, "MalformedGraph", m); };
  int w = g.weight();
  if (static_cast<int>(g.in.size()) != w || static_cast<int>(g.out.size()) != w) fail("slot tables do not match vertex count");
  std::vector<int> in_seen(g.inputs, 0), out_seen(g.outputs, 0);
  for (int v = 0; v < w; ++v) {
    const auto& gen = gens.at(g.gens[v]);
    if (static_cast<int>(g.in[v].size()) != gen.inputs || static_cast<int>(g.out[v].size()) != gen.outputs)
      fail("vertex slot count differs from its generator");
    for (int i = 0; i < gen.inputs; ++i) {
      Port p = g.in[v][i];
      if (p.is_leg()) {
        if (p.slot < 0 || p.slot >= g.inputs) fail("input leg label out of range");
        ++in_seen[p.slot];
      } else if (p.vertex >= w || p.slot >= static_cast<int>(g.out[p.vertex].size()) ||
                 g.out[p.vertex][p.slot] != Port{v, i}) {
        fail("edge endpoints disagree");
      }
    }
    for (int j = 0; j < gen.outputs; ++j) {
      Port p = g.out[v][j];
      if (p.is_leg()) {
        if (p.slot < 0 || p.slot >= g.outputs) fail("output leg label out of range");
        ++out_seen[p.slot];
      } else if (p.vertex >= w || p.slot >= static_cast<int>(g.in[p.vertex].size()) ||
                 g.in[p.vertex][p.slot] != Port{v, j}) {
        fail("edge endpoints disagree");
      }
    }
  }
  for (int c : in_seen)
    if (c != 1) fail("input legs are not a bijection");
  for (int c : out_seen)
    if (c != 1) fail("output legs are not a bijection");
  if (!g.connected()) fail("graph is disconnected");
  if (!g.acyclic()) fail("graph has a directed cycle");
}

LegPerm LegPerm::identity(int m, int n) {
  LegPerm p;
  p.in.resize(m);
  p.out.resize(n);
  std::iota(p.in.begin(), p.in.end(), 0);
  std::iota(p.out.begin(), p.out.end(), 0);
  return p;
}

LegPerm LegPerm::inverse() const {
  LegPerm r;
  r.in.resize(in.size());
  r.out.resize(out.size());
  for (std::size_t i = 0; i < in.size(); ++i) r.in[in[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < out.size(); ++i) r.out[out[i]] = static_cast<int>(i);
  return r;
}

LegPerm LegPerm::then(const LegPerm& next) const {
  LegPerm r;
  r.in.resize(in.size());
  r.out.resize(out.size());
  for (std::size_t i = 0; i < in.size(); ++i) r.in[i] = next.in[in[i]];
  for (std::size_t i = 0; i < out.size(); ++i) r.out[i] = next.out[out[i]];
  return r;
}

bool LegPerm::is_identity() const {
  for (std::size_t i = 0; i < in.size(); ++i)
    if (in[i] != static_cast<int>(i)) return false;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i] != static_cast<int>(i)) return false;
  return true;
}

DecoratedGraph relabel(const DecoratedGraph& g, const LegPerm& p) {
  DecoratedGraph r = g;
  for (auto& slots : r.in)
    for (auto& q : slots)
      if (q.is_leg()) q.slot = p.in[q.slot];
  for (auto& slots : r.out)
    for (auto& q : slots)
      if (q.is_leg()) q.slot = p.out[q.slot];
  return r;
}

int permutation_sign(const std::vector<int>& p) {
  int s = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

int GraphContext::degree(const DecoratedGraph& g) const {
  int d = 0;
  for (int x : g.gens) d += vertex_degree(x);
  return d;
}

namespace {

struct SlotPerm {
  std::vector<int> in, out;  // new slot -> old slot
  int sign = 1;
};

std::vector<std::vector<int>> all_perms(int k) {
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<SlotPerm> slot_perms(const Generator& g) {
  if (g.symmetry == Symmetry::Regular) {
    SlotPerm id;
    id.in.resize(g.inputs);
    id.out.resize(g.outputs);
    std::iota(id.in.begin(), id.in.end(), 0);
    std::iota(id.out.begin(), id.out.end(), 0);
    return {id};
  }
  std::vector<SlotPerm> out;
  for (auto& pi : all_perms(g.inputs))
    for (auto& po : all_perms(g.outputs)) {
      int s = g.symmetry == Symmetry::Sign ? permutation_sign(pi) * permutation_sign(po) : 1;
      out.push_back({pi, po, s});
    }
  return out;
}

constexpr int kEdgeBase = 1 << 20;
constexpr int kSlotStride = 64;

class Canonicalizer {
public:
  Canonicalizer(const GraphContext& ctx, const DecoratedGraph& g, bool labeled)
      : ctx_(ctx), g_(g), labeled_(labeled) {
    int w = g.weight();
    for (int v = 0; v < w; ++v) perms_.push_back(slot_perms(ctx.gen(g.gens[v])));
    parity_.resize(w);
    for (int v = 0; v < w; ++v) parity_[v] = ctx.vertex_degree(g.gens[v]) & 1;
  }

  Canonical run() {
    int w = g_.weight();
    std::vector<int> order(w);
    std::iota(order.begin(), order.end(), 0);
    std::vector<int> choice(w, 0);
    do {
      int vs = order_sign(order);
      std::fill(choice.begin(), choice.end(), 0);
      while (true) {
        consider(order, choice, vs);
        int v = 0;
        while (v < w && ++choice[v] == static_cast<int>(perms_[v].size())) choice[v++] = 0;
        if (v == w) break;
      }
    } while (std::next_permutation(order.begin(), order.end()));
    return finish();
  }

private:
  struct Minimizer {
    std::vector<int> order, choice;
    int sign;
    LegPerm alpha;
  };

  int order_sign(const std::vector<int>& order) const {
    int s = 1;
    for (std::size_t a = 0; a < order.size(); ++a)
      for (std::size_t b = a + 1; b < order.size(); ++b)
        if (order[a] > order[b] && parity_[order[a]] && parity_[order[b]]) s = -s;
    return s;
  }

  // Builds the encoding, aborting as soon as it exceeds the best one.
  void consider(const std::vector<int>& order, const std::vector<int>& choice, int vsign) {
    int w = g_.weight();
    newidx_.assign(w, 0);
    for (int k = 0; k < w; ++k) newidx_[order[k]] = k;
    inv_in_.assign(w, {});
    inv_out_.assign(w, {});
    for (int v = 0; v < w; ++v) {
      const auto& P = perms_[v][choice[v]];
      inv_in_[v].resize(P.in.size());
      inv_out_[v].resize(P.out.size());
      for (std::size_t i = 0; i < P.in.size(); ++i) inv_in_[v][P.in[i]] = static_cast<int>(i);
      for (std::size_t j = 0; j < P.out.size(); ++j) inv_out_[v][P.out[j]] = static_cast<int>(j);
    }
    LegPerm alpha;
    alpha.in.assign(g_.inputs, -1);
    alpha.out.assign(g_.outputs, -1);
    int next_in = 0, next_out = 0;
    cur_.clear();
    int cmp = best_.empty() ? -1 : 0;  // -1: already smaller, 0: equal so far
    auto push = [&](int x) {
      if (cmp == 0) {
        int b = best_[cur_.size()];
        if (x < b) cmp = -1;
        else if (x > b) cmp = 1;
      }
      cur_.push_back(x);
      return cmp <= 0;
    };
    if (!push(g_.inputs) || !push(g_.outputs) || !push(w)) return;
    for (int k = 0; k < w; ++k) {
      int v = order[k];
      const auto& P = perms_[v][choice[v]];
      if (!push(g_.gens[v])) return;
      for (int old : P.in) {
        Port src = g_.in[v][old];
        int code;
        if (src.is_leg()) {
          if (labeled_) code = src.slot;
          else {
            alpha.in[src.slot] = next_in++;
            code = -1;
          }
        } else {
          code = kEdgeBase + newidx_[src.vertex] * kSlotStride + inv_out_[src.vertex][src.slot];
        }
        if (!push(code)) return;
      }
      for (int old : P.out) {
        Port dst = g_.out[v][old];
        int code;
        if (dst.is_leg()) {
          if (labeled_) code = dst.slot;
          else {
            alpha.out[dst.slot] = next_out++;
            code = -1;
          }
        } else {
          code = kEdgeBase + newidx_[dst.vertex] * kSlotStride + inv_in_[dst.vertex][dst.slot];
        }
        if (!push(code)) return;
      }
    }
    int sign = vsign;
    for (int v = 0; v < w; ++v) sign *= perms_[v][choice[v]].sign;
    if (labeled_) alpha = LegPerm::identity(g_.inputs, g_.outputs);
    if (cmp < 0) {
      best_ = cur_;
      minimizers_.clear();
    }
    minimizers_.push_back({order, choice, sign, std::move(alpha)});
  }

  Canonical finish() {
    Canonical c;
    c.key = best_;
    const auto& m0 = minimizers_.front();
    int w = g_.weight();
    std::vector<int> newidx(w);
    for (int k = 0; k < w; ++k) newidx[m0.order[k]] = k;
    std::vector<std::vector<int>> inv_in(w), inv_out(w);
    for (int v = 0; v < w; ++v) {
      const auto& P = perms_[v][m0.choice[v]];
      inv_in[v].resize(P.in.size());
      inv_out[v].resize(P.out.size());
      for (std::size_t i = 0; i < P.in.size(); ++i) inv_in[v][P.in[i]] = static_cast<int>(i);
      for (std::size_t j = 0; j < P.out.size(); ++j) inv_out[v][P.out[j]] = static_cast<int>(j);
    }
    DecoratedGraph& r = c.graph;
    r.inputs = g_.inputs;
    r.outputs = g_.outputs;
    r.gens.resize(w);
    r.in.resize(w);
    r.out.resize(w);
    for (int k = 0; k < w; ++k) {
      int v = m0.order[k];
      const auto& P = perms_[v][m0.choice[v]];
      r.gens[k] = g_.gens[v];
      for (int old : P.in) {
        Port src = g_.in[v][old];
        r.in[k].push_back(src.is_leg() ? Port::leg(m0.alpha.in[src.slot])
                                       : Port{newidx[src.vertex], inv_out[src.vertex][src.slot]});
      }
      for (int old : P.out) {
        Port dst = g_.out[v][old];
        r.out[k].push_back(dst.is_leg() ? Port::leg(m0.alpha.out[dst.slot])
                                        : Port{newidx[dst.vertex], inv_in[dst.vertex][dst.slot]});
      }
    }
    c.sign = m0.sign;
    c.to_canonical = m0.alpha;
    if (labeled_) {
      for (auto& m : minimizers_)
        if (m.sign != m0.sign) c.sign = 0;
      return c;
    }
    LegPerm back = m0.alpha.inverse();
    std::map<LegPerm, int> autos;
    for (auto& m : minimizers_) {
      LegPerm h = back.then(m.alpha);
      int chi = m0.sign * m.sign;
      if (m.alpha == m0.alpha && &m != &m0) ++c.internal_symmetry;
      auto [it, fresh] = autos.emplace(h, chi);
      if (!fresh && it->second != chi) c.sign = 0;
    }
    if (c.sign != 0) c.automorphisms.assign(autos.begin(), autos.end());
    return c;
  }

  const GraphContext& ctx_;
  const DecoratedGraph& g_;
  bool labeled_;
  std::vector<std::vector<SlotPerm>> perms_;
  std::vector<int> parity_;
  std::vector<int> best_, cur_;
  std::vector<Minimizer> minimizers_;
  std::vector<int> newidx_;
  std::vector<std::vector<int>> inv_in_, inv_out_;
};

}  // namespace

Canonical canonical_labeled(const GraphContext& ctx, const DecoratedGraph& g) {
  return Canonicalizer(ctx, g, true).run();
}

Canonical canonical_orbit(const GraphContext& ctx, const DecoratedGraph& g) {
  return Canonicalizer(ctx, g, false).run();
}

Piece extract(const DecoratedGraph& g, const std::vector<int>& vertices) {
  Piece p;
  p.vertices = vertices;
  std::vector<int> local(g.weight(), -1);
  for (std::size_t k = 0; k < vertices.size(); ++k) local[vertices[k]] = static_cast<int>(k);
  auto& sub = p.graph;
  sub.gens.resize(vertices.size());
  sub.in.resize(vertices.size());
  sub.out.resize(vertices.size());
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    int v = vertices[k];
    sub.gens[k] = g.gens[v];
    for (std::size_t i = 0; i < g.in[v].size(); ++i) {
      Port src = g.in[v][i];
      if (!src.is_leg() && local[src.vertex] >= 0) {
        sub.in[k].push_back({local[src.vertex], src.slot});
      } else {
        sub.in[k].push_back(Port::leg(static_cast<int>(p.input_source.size())));
        p.input_source.push_back(src);
        p.input_origin.push_back({v, static_cast<int>(i)});
      }
    }
    for (std::size_t j = 0; j < g.out[v].size(); ++j) {
      Port dst = g.out[v][j];
      if (!dst.is_leg() && local[dst.vertex] >= 0) {
        sub.out[k].push_back({local[dst.vertex], dst.slot});
      } else {
        sub.out[k].push_back(Port::leg(static_cast<int>(p.output_target.size())));
        p.output_target.push_back(dst);
        p.output_origin.push_back({v, static_cast<int>(j)});
      }
    }
  }
  sub.inputs = static_cast<int>(p.input_source.size());
  sub.outputs = static_cast<int>(p.output_target.size());
  return p;
}

DecoratedGraph substitute(const DecoratedGraph& g, const Piece& piece, const DecoratedGraph& replacement) {
  int r = replacement.weight();
  std::vector<int> newidx(g.weight(), -1);
  std::vector<char> inside(g.weight(), 0);
  for (int v : piece.vertices) inside[v] = 1;
  int next = r;
  for (int v = 0; v < g.weight(); ++v)
    if (!inside[v]) newidx[v] = next++;

  DecoratedGraph out;
  out.inputs = g.inputs;
  out.outputs = g.outputs;
  out.gens.resize(next);
  out.in.resize(next);
  out.out.resize(next);
  for (int k = 0; k < r; ++k) {
    out.gens[k] = replacement.gens[k];
    out.in[k] = replacement.in[k];
    out.out[k] = replacement.out[k];
  }
  for (int v = 0; v < g.weight(); ++v) {
    if (inside[v]) continue;
    int k = newidx[v];
    out.gens[k] = g.gens[v];
    for (Port p : g.in[v]) out.in[k].push_back(p.is_leg() ? p : Port{newidx[p.vertex], p.slot});
    for (Port p : g.out[v]) out.out[k].push_back(p.is_leg() ? p : Port{newidx[p.vertex], p.slot});
  }
  // Rewire the boundary: replacement legs attach where the piece legs did.
  for (int k = 0; k < r; ++k) {
    for (std::size_t i = 0; i < out.in[k].size(); ++i) {
      Port& p = out.in[k][i];
      if (!p.is_leg()) continue;
      Port src = piece.input_source[p.slot];
      if (src.is_leg()) {
        p = src;
      } else {
        p = {newidx[src.vertex], src.slot};
        out.out[p.vertex][p.slot] = {k, static_cast<int>(i)};
      }
    }
    for (std::size_t j = 0; j < out.out[k].size(); ++j) {
      Port& p = out.out[k][j];
      if (!p.is_leg()) continue;
      Port dst = piece.output_target[p.slot];
      if (dst.is_leg()) {
        p = dst;
      } else {
        p = {newidx[dst.vertex], dst.slot};
        out.in[p.vertex][p.slot] = {k, static_cast<int>(j)};
      }
    }
  }
  return out;
}

namespace {

bool block_connected(const DecoratedGraph& g, std::uint32_t mask) {
  if (mask == 0) return false;
  int start = __builtin_ctz(mask);
  std::uint32_t seen = 1u << start;
  std::vector<int> stack{start};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    auto visit = [&](const Port& p) {
      if (!p.is_leg() && (mask >> p.vertex & 1) && !(seen >> p.vertex & 1)) {
        seen |= 1u << p.vertex;
        stack.push_back(p.vertex);
      }
    };
    for (auto& p : g.in[v]) visit(p);
    for (auto& p : g.out[v]) visit(p);
  }
  return seen == mask;
}

std::vector<int> mask_vertices(std::uint32_t mask, int w) {
  std::vector<int> out;
  for (int v = 0; v < w; ++v)
    if (mask >> v & 1) out.push_back(v);
  return out;
}

}  // namespace

std::vector<std::pair<std::vector<int>, std::vector<int>>> admissible_cuts(const DecoratedGraph& g) {
  int w = g.weight();
  std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
  std::uint32_t all = (1u << w) - 1;
  for (std::uint32_t upper = 1; upper < all; ++upper) {
    std::uint32_t lower = all & ~upper;
    bool ok = true;
    for (int v = 0; v < w && ok; ++v) {
      if (!(upper >> v & 1)) continue;
      for (auto& p : g.out[v])
        if (!p.is_leg() && (lower >> p.vertex & 1)) ok = false;
    }
    if (!ok || !block_connected(g, upper) || !block_connected(g, lower)) continue;
    out.emplace_back(mask_vertices(upper, w), mask_vertices(lower, w));
  }
  return out;
}

std::vector<std::pair<int, int>> adjacent_pairs(const DecoratedGraph& g) {
  int w = g.weight();
  // reach[a] = vertices reachable from a by a nonempty directed path
  std::vector<std::uint32_t> reach(w, 0);
  for (int pass = 0; pass < w; ++pass)
    for (int v = 0; v < w; ++v)
      for (auto& p : g.out[v])
        if (!p.is_leg()) reach[v] |= (1u << p.vertex) | reach[p.vertex];
  std::set<std::pair<int, int>> out;
  for (int a = 0; a < w; ++a)
    for (auto& p : g.out[a]) {
      if (p.is_leg()) continue;
      int b = p.vertex;
      bool convex = true;
      for (int x = 0; x < w && convex; ++x)
        if (x != a && x != b && (reach[a] >> x & 1) && (reach[x] >> b & 1)) convex = false;
      if (convex) out.emplace(a, b);
    }
  return {out.begin(), out.end()};
}

std::vector<std::vector<OrbitRep>> enumerate_orbits(const GraphContext& ctx, int max_weight, int max_genus) {
  std::vector<std::vector<OrbitRep>> by_weight(max_weight + 1);
  auto record = [&](std::map<std::vector<int>, OrbitRep>& seen, const DecoratedGraph& g) {
    Canonical c = canonical_orbit(ctx, g);
    if (seen.count(c.key)) return;
    OrbitRep rep;
    rep.graph = std::move(c.graph);
    rep.genus = rep.graph.genus();
    rep.degree = ctx.degree(rep.graph);
    rep.zero = c.sign == 0;
    rep.automorphisms = std::move(c.automorphisms);
    rep.internal_symmetry = c.internal_symmetry;
    rep.key = c.key;
    seen.emplace(std::move(c.key), std::move(rep));
  };
  if (max_weight < 1) return by_weight;
  {
    std::map<std::vector<int>, OrbitRep> seen;
    for (std::size_t i = 0; i < ctx.generators->size(); ++i)
      record(seen, single_vertex(ctx.gen(static_cast<int>(i)), static_cast<int>(i)));
    for (auto& [k, r] : seen) by_weight[1].push_back(std::move(r));
  }
  for (int w = 2; w <= max_weight; ++w) {
    std::map<std::vector<int>, OrbitRep> seen;
    for (const auto& base : by_weight[w - 1]) {
      const DecoratedGraph& B = base.graph;
      std::vector<Port> free_out(B.outputs), free_in(B.inputs);  // leg label -> (vertex, slot)
      for (int v = 0; v < B.weight(); ++v) {
        for (std::size_t i = 0; i < B.in[v].size(); ++i)
          if (B.in[v][i].is_leg()) free_in[B.in[v][i].slot] = {v, static_cast<int>(i)};
        for (std::size_t j = 0; j < B.out[v].size(); ++j)
          if (B.out[v][j].is_leg()) free_out[B.out[v][j].slot] = {v, static_cast<int>(j)};
      }
      for (std::size_t gi = 0; gi < ctx.generators->size(); ++gi) {
        const Generator& gen = ctx.gen(static_cast<int>(gi));
        // attach[s] = -1 (free) or the base leg label it connects to
        std::vector<int> att_in(gen.inputs, -1), att_out(gen.outputs, -1);
        auto emit = [&]() {
          int connections = 0;
          for (int x : att_in) connections += x >= 0;
          for (int x : att_out) connections += x >= 0;
          if (connections == 0 || base.genus + connections - 1 > max_genus) return;
          DecoratedGraph g = B;
          int nv = B.weight();
          g.gens.push_back(static_cast<int>(gi));
          g.in.emplace_back(gen.inputs);
          g.out.emplace_back(gen.outputs);
          // consumed base legs get removed; remaining legs are relabeled densely
          std::vector<char> used_out(B.outputs, 0), used_in(B.inputs, 0);
          for (int i = 0; i < gen.inputs; ++i)
            if (att_in[i] >= 0) {
              Port p = free_out[att_in[i]];
              g.in[nv][i] = p;
              g.out[p.vertex][p.slot] = {nv, i};
              used_out[att_in[i]] = 1;
            }
          for (int j = 0; j < gen.outputs; ++j)
            if (att_out[j] >= 0) {
              Port p = free_in[att_out[j]];
              g.out[nv][j] = p;
              g.in[p.vertex][p.slot] = {nv, j};
              used_in[att_out[j]] = 1;
            }
          std::vector<int> map_in(B.inputs, -1), map_out(B.outputs, -1);
          int mi = 0, mo = 0;
          for (int l = 0; l < B.inputs; ++l)
            if (!used_in[l]) map_in[l] = mi++;
          for (int l = 0; l < B.outputs; ++l)
            if (!used_out[l]) map_out[l] = mo++;
          for (int v = 0; v < nv; ++v) {
            for (auto& p : g.in[v])
              if (p.is_leg()) p.slot = map_in[p.slot];
            for (auto& p : g.out[v])
              if (p.is_leg()) p.slot = map_out[p.slot];
          }
          for (int i = 0; i < gen.inputs; ++i)
            if (att_in[i] < 0) g.in[nv][i] = Port::leg(mi++);
          for (int j = 0; j < gen.outputs; ++j)
            if (att_out[j] < 0) g.out[nv][j] = Port::leg(mo++);
          g.inputs = mi;
          g.outputs = mo;
          if (!g.acyclic()) return;
          record(seen, g);
        };
        // odometer over injective attachments
        std::vector<char> taken_out(B.outputs, 0), taken_in(B.inputs, 0);
        std::function<void(int)> rec = [&](int slot) {
          int total = gen.inputs + gen.outputs;
          if (slot == total) {
            emit();
            return;
          }
          if (slot < gen.inputs) {
            att_in[slot] = -1;
            rec(slot + 1);
            for (int l = 0; l < B.outputs; ++l)
              if (!taken_out[l]) {
                taken_out[l] = 1;
                att_in[slot] = l;
                rec(slot + 1);
                taken_out[l] = 0;
              }
            att_in[slot] = -1;
          } else {
            int j = slot - gen.inputs;
            att_out[j] = -1;
            rec(slot + 1);
            for (int l = 0; l < B.inputs; ++l)
              if (!taken_in[l]) {
                taken_in[l] = 1;
                att_out[j] = l;
                rec(slot + 1);
                taken_in[l] = 0;
              }
            att_out[j] = -1;
          }
        };
        rec(0);
      }
    }
    for (auto& [k, r] : seen) by_weight[w].push_back(std::move(r));
  }
  return by_weight;
}

DecoratedGraph term_graph(const Presentation& p, const RelationTerm& t) {
  const Generator& lo = p.generators.at(t.lower);
  const Generator& up = p.generators.at(t.upper);
  DecoratedGraph g;
  g.gens = {t.lower, t.upper};
  g.in = {std::vector<Port>(lo.inputs), std::vector<Port>(up.inputs)};
  g.out = {std::vector<Port>(lo.outputs), std::vector<Port>(up.outputs)};
  std::vector<char> lo_out_used(lo.outputs, 0), up_in_used(up.inputs, 0);
  for (auto [o, i] : t.edges) {
    g.out[0][o] = {1, i};
    g.in[1][i] = {0, o};
    lo_out_used[o] = 1;
    up_in_used[i] = 1;
  }
  std::size_t k = 0;
  for (int i = 0; i < lo.inputs; ++i) g.in[0][i] = Port::leg(t.input_labels.at(k++));
  for (int i = 0; i < up.inputs; ++i)
    if (!up_in_used[i]) g.in[1][i] = Port::leg(t.input_labels.at(k++));
  k = 0;
  for (int j = 0; j < lo.outputs; ++j)
    if (!lo_out_used[j]) g.out[0][j] = Port::leg(t.output_labels.at(k++));
  for (int j = 0; j < up.outputs; ++j) g.out[1][j] = Port::leg(t.output_labels.at(k++));
  g.inputs = static_cast<int>(t.input_labels.size());
  g.outputs = static_cast<int>(t.output_labels.size());
  return g;
}

}  // namespace deforma
