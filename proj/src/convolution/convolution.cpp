#include "deforma/convolution/convolution.hpp"

#include "deforma/kernels/parallel.hpp"
#include "deforma/presentations/components.hpp"
#include "deforma/graphcal/labeled.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace deforma {

namespace {

int parity_sign(long x) { return (x % 2 == 0) ? 1 : -1; }

Error underflow(const DecoratedGraph& g) {
  std::ostringstream os;
  os << "a coproduct term of biarity (" << g.inputs << "," << g.outputs << "), weight " << g.weight()
     << ", genus " << g.genus() << " lies outside the truncation";
  return Error(ErrorKind::Truncation, "TruncationUnderflow", os.str());
}

// Color of a tensor key: the sorted multisets of output and input basis indices.
std::uint64_t color_of(const EndoProperad& e, std::uint64_t key, int m, int n) {
  std::vector<int> outs, ins;
  e.decode(key, m, n, outs, ins);
  std::sort(outs.begin(), outs.end());
  std::sort(ins.begin(), ins.end());
  return e.encode(outs, ins);
}

// Shape key of a two-vertex block: (inputs, outputs, genus).
using Shape = std::tuple<int, int, int>;

struct PairTerm {
  int orbit;
  Rational coefficient;
  LegPerm alpha;  // to_canonical of the substituted graph
};

}  // namespace

ConvolutionAlgebra::ConvolutionAlgebra(const Presentation& p, const CochainComplex& X, const Truncation& t,
                                       ConvolutionOptions options)
    : presentation_(std::make_shared<Presentation>(p)), truncation_(t), options_(options) {
  if (truncation_.max_weight < 1 || truncation_.max_genus < 0)
    throw Error(ErrorKind::Validation, "BadTruncation", "weight must be >= 1 and genus >= 0");
  if (presentation_->kind == PresentationKind::Operad) truncation_.max_genus = 0;
  for (const auto& g : presentation_->generators) {
    if (g.biarity_total() < 3)
      throw Error(ErrorKind::Validation, "BiarityTwoGenerator",
                  "generator `" + g.name +
                      "` has total biarity <= 2; biarity truncation would not give a quotient complex");
    if (g.biarity_total() > truncation_.max_biarity)
      throw Error(ErrorKind::Truncation, "TruncationUnderflow",
                  "generator `" + g.name + "` exceeds the biarity bound");
  }
  endo_ = std::make_shared<EndoProperad>(X, truncation_.max_biarity);
  ctx_ = GraphContext{&presentation_->generators, -1};
  build_orbits();
  build_coordinates();
  build_cuts();
  build_kernel();
  build_algebra();
}

std::tuple<int, int, LegPerm> ConvolutionAlgebra::locate(const DecoratedGraph& g) const {
  Canonical c = canonical_orbit(ctx_, g);
  if (c.sign == 0) return {-1, 0, LegPerm{}};
  auto it = orbit_index_.find(c.key);
  if (it == orbit_index_.end()) throw underflow(g);
  return {it->second, c.sign, std::move(c.to_canonical)};
}

void ConvolutionAlgebra::build_orbits() {
  auto all = enumerate_orbits(ctx_, truncation_.max_weight, truncation_.max_genus);
  for (std::size_t w = 1; w < all.size(); ++w)
    for (auto& rep : all[w]) {
      if (rep.zero || rep.inputs() + rep.outputs() > truncation_.max_biarity) continue;
      if (rep.automorphisms.empty()) rep.automorphisms.push_back({LegPerm::identity(rep.inputs(), rep.outputs()), 1});
      orbit_index_[rep.key] = static_cast<int>(orbits_.size());
      orbits_.push_back(Orbit{rep, {}, {}});
    }
}

void ConvolutionAlgebra::build_coordinates() {
  struct Local {
    std::vector<Coord> coords;
    std::unordered_map<std::uint64_t, std::pair<int, int>> keys;
  };
  const EndoProperad& e = *endo_;
  auto locals = kernels::map<Local>(
      orbits_.size(),
      [&](std::size_t k) {
        Local out;
        const OrbitRep& rep = orbits_[k].rep;
        int m = rep.inputs(), n = rep.outputs();
        std::uint64_t total = e.component_dim(m, n);
        std::vector<char> seen(total, 0);
        for (std::uint64_t key = 0; key < total; ++key) {
          if (seen[key]) continue;
          VectorBuilder sym;
          std::vector<std::pair<std::uint64_t, int>> images;
          for (const auto& [h, chi] : rep.automorphisms) {
            Tensor u = e.act(Tensor{m, n, SparseVector::unit(key)}, h);
            const auto& [k2, sigma] = u.entries.entries().front();
            int f = sgn(sigma) * chi;
            sym.add(k2, Rational(f));
            images.push_back({k2, f});
            seen[k2] = 1;
          }
          SparseVector s = sym.finalize();
          if (s.empty()) continue;
          int local = static_cast<int>(out.coords.size());
          Coord c;
          c.orbit = static_cast<int>(k);
          c.key = key;
          c.norm = s.at(key);
          c.sym = std::move(s);
          c.degree = e.key_degree(key, m, n) - rep.degree;
          out.coords.push_back(std::move(c));
          for (auto [k2, f] : images) out.keys[k2] = {local, f};
        }
        return out;
      },
      options_.parallel);
  for (std::size_t k = 0; k < orbits_.size(); ++k) {
    int offset = static_cast<int>(coords_.size());
    for (auto& c : locals[k].coords) {
      orbits_[k].coords.push_back(static_cast<int>(coords_.size()));
      coords_.push_back(std::move(c));
    }
    for (auto& [key, cf] : locals[k].keys) orbits_[k].keys[key] = {cf.first + offset, cf.second};
  }
}

void ConvolutionAlgebra::build_cuts() {
  cuts_ = kernels::map<std::vector<Cut>>(
      orbits_.size(),
      [&](std::size_t t) {
        std::vector<Cut> out;
        const DecoratedGraph& g = orbits_[t].rep.graph;
        if (g.weight() < 2) return out;
        for (const auto& [up, lo] : admissible_cuts(g)) {
          Piece U = extract(g, up), L = extract(g, lo);
          auto [ku, su, au] = locate(U.graph);
          if (su == 0) continue;
          auto [kl, sl, al] = locate(L.graph);
          if (sl == 0) continue;
          std::vector<int> degrees(g.weight()), target(g.weight());
          for (int v = 0; v < g.weight(); ++v) degrees[v] = ctx_.vertex_degree(g.gens[v]);
          for (std::size_t i = 0; i < up.size(); ++i) target[up[i]] = static_cast<int>(i);
          for (std::size_t i = 0; i < lo.size(); ++i) target[lo[i]] = static_cast<int>(up.size() + i);
          Cut c;
          c.upper = ku;
          c.lower = kl;
          c.target = static_cast<int>(t);
          c.sign = koszul_sign(degrees, target) * su * sl;
          c.multiplicity = Rational(orbits_[ku].rep.internal_symmetry * orbits_[kl].rep.internal_symmetry,
                                    orbits_[t].rep.internal_symmetry);
          c.multiplicity.canonicalize();
          c.upper_degree = orbits_[ku].rep.degree;
          c.tau_upper = au.inverse();
          c.tau_lower = al.inverse();
          Wiring& w = c.wiring;
          w.inputs = g.inputs;
          w.outputs = g.outputs;
          auto find_port = [](const std::vector<Port>& ports, const Port& p) {
            auto it = std::find(ports.begin(), ports.end(), p);
            if (it == ports.end()) throw std::logic_error("cut boundary mismatch");
            return static_cast<int>(it - ports.begin());
          };
          for (const Port& src : U.input_source)
            w.upper_in.push_back(src.is_leg() ? src.slot : -(1 + find_port(L.output_origin, src)));
          for (const Port& dst : U.output_target) {
            if (!dst.is_leg()) throw std::logic_error("cut has an edge from the upper block downwards");
            w.upper_out.push_back(dst.slot);
          }
          for (const Port& src : L.input_source) {
            if (!src.is_leg()) throw std::logic_error("cut has an edge into the lower block");
            w.lower_in.push_back(src.slot);
          }
          for (const Port& dst : L.output_target)
            w.lower_out.push_back(dst.is_leg() ? dst.slot : -(1 + find_port(U.input_origin, dst)));
          out.push_back(std::move(c));
        }
        return out;
      },
      options_.parallel);
  for (std::size_t t = 0; t < cuts_.size(); ++t)
    for (std::size_t i = 0; i < cuts_[t].size(); ++i)
      cuts_by_pieces_[{cuts_[t][i].upper, cuts_[t][i].lower}].push_back({static_cast<int>(t), static_cast<int>(i)});
}

void ConvolutionAlgebra::build_kernel() {
  const EndoProperad& e = *endo_;
  const Presentation& p = *presentation_;

  // Orthogonal complements of the relation span, per two-vertex shape.
  std::map<Shape, std::pair<LabeledSpace, std::vector<SparseVector>>> perps;
  for (const auto& o : orbits_) {
    if (o.rep.weight() < 2) continue;
    for (auto [lo, up] : adjacent_pairs(o.rep.graph)) {
      Piece piece = extract(o.rep.graph, {lo, up});
      Shape key{piece.graph.inputs, piece.graph.outputs, piece.graph.genus()};
      if (perps.count(key)) continue;
      LabeledSpace two(ctx_, piece.graph.inputs, piece.graph.outputs, 2, piece.graph.genus());
      auto span = relation_span(p, two);
      SparseMatrix rows(span.size(), two.dim());
      for (std::size_t r = 0; r < span.size(); ++r)
        for (auto& [i, x] : span[r].entries()) rows.add(r, i, x);
      perps.emplace(key, std::make_pair(std::move(two), kernel_basis(rows)));
    }
  }

  // Annihilator generators on each representative: lambda inserted at one pair.
  auto lists = kernels::map<std::vector<std::vector<PairTerm>>>(
      orbits_.size(),
      [&](std::size_t k) {
        std::vector<std::vector<PairTerm>> out;
        const DecoratedGraph& g = orbits_[k].rep.graph;
        if (g.weight() < 2) return out;
        for (auto [lo, up] : adjacent_pairs(g)) {
          Piece piece = extract(g, {lo, up});
          const auto& [two, perp] = perps.at(Shape{piece.graph.inputs, piece.graph.outputs, piece.graph.genus()});
          for (const auto& lambda : perp) {
            std::vector<PairTerm> terms;
            for (auto& [c, x] : lambda.entries()) {
              auto [kb, sb, ab] = locate(substitute(g, piece, two.graph(c)));
              if (sb == 0) continue;
              terms.push_back({kb, x * sb, std::move(ab)});
            }
            if (!terms.empty()) out.push_back(std::move(terms));
          }
        }
        return out;
      },
      options_.parallel);

  // Tasks: one per (biarity, weight) block and tensor color.
  struct Task {
    std::vector<int> orbits;
    std::vector<std::uint64_t> keys;
    int m, n;
  };
  std::map<std::tuple<int, int, int>, std::vector<int>> blocks;
  for (std::size_t k = 0; k < orbits_.size(); ++k) {
    const auto& r = orbits_[k].rep;
    if (r.weight() >= 2) blocks[{r.inputs(), r.outputs(), r.weight()}].push_back(static_cast<int>(k));
  }
  std::vector<Task> tasks;
  for (auto& [b, ks] : blocks) {
    auto [m, n, w] = b;
    std::map<std::uint64_t, std::vector<std::uint64_t>> by_color;
    for (std::uint64_t key = 0; key < e.component_dim(m, n); ++key) by_color[color_of(e, key, m, n)].push_back(key);
    for (auto& [col, keys] : by_color) tasks.push_back({ks, std::move(keys), m, n});
  }

  const std::size_t ncoords = coords_.size();
  auto rows = kernels::map<std::vector<SparseVector>>(
      tasks.size(),
      [&](std::size_t ti) {
        const Task& task = tasks[ti];
        EchelonBasis local(ncoords);
        for (int k : task.orbits)
          for (const auto& terms : lists[k])
            for (std::uint64_t q : task.keys) {
              VectorBuilder v;
              for (const auto& term : terms) {
                Tensor u = e.act(Tensor{task.m, task.n, SparseVector::unit(q)}, term.alpha);
                const auto& [q2, sigma] = u.entries.entries().front();
                const auto& keys = orbits_[term.orbit].keys;
                auto it = keys.find(q2);
                if (it == keys.end()) continue;
                v.add(it->second.first, term.coefficient * sigma * it->second.second);
              }
              local.insert(v.finalize());
            }
        std::vector<SparseVector> out;
        for (auto& [piv, row] : local.rows()) out.push_back(row);
        return out;
      },
      options_.parallel);

  kernel_ = EchelonBasis(ncoords);
  for (auto& task_rows : rows)
    for (auto& r : task_rows) kernel_.insert(std::move(r));

  coord_to_basis_.assign(ncoords, -1);
  for (std::size_t c : kernel_.free_columns()) {
    coord_to_basis_[c] = static_cast<int>(basis_coord_.size());
    basis_coord_.push_back(static_cast<int>(c));
    const Coord& co = coords_[c];
    const OrbitRep& r = orbits_[co.orbit].rep;
    basis_.push_back({co.orbit, co.key, r.inputs(), r.outputs(), r.weight(), r.genus, co.degree});
  }
}

void ConvolutionAlgebra::read_off(int t, const SparseVector& v, const Rational& c, VectorBuilder& b) const {
  const auto& keys = orbits_[t].keys;
  for (auto& [key, x] : v.entries()) {
    auto it = keys.find(key);
    if (it == keys.end()) continue;
    const Coord& co = coords_[it->second.first];
    if (co.key != key) continue;
    b.add(it->second.first, c * x / co.norm);
  }
}

SparseVector ConvolutionAlgebra::to_basis(const SparseVector& coords) const {
  SparseVector r = kernel_.reduce(coords);
  std::vector<SparseVector::Entry> out;
  out.reserve(r.size());
  for (auto& [c, x] : r.entries()) {
    int i = coord_to_basis_[c];
    if (i < 0) throw std::logic_error("reduction left a pivot coordinate");
    out.push_back({static_cast<std::size_t>(i), x});
  }
  return SparseVector(std::move(out));
}

SparseVector ConvolutionAlgebra::star(int a, int b) const {
  auto it = cuts_by_pieces_.find({coords_[a].orbit, coords_[b].orbit});
  if (it == cuts_by_pieces_.end()) return {};
  const EndoProperad& e = *endo_;
  const OrbitRep& ru = orbits_[coords_[a].orbit].rep;
  const OrbitRep& rl = orbits_[coords_[b].orbit].rep;
  VectorBuilder out;
  for (auto [t, ci] : it->second) {
    const Cut& cut = cuts_[t][ci];
    Tensor fu = e.act(Tensor{ru.inputs(), ru.outputs(), coords_[a].sym}, cut.tau_upper);
    Tensor gl = e.act(Tensor{rl.inputs(), rl.outputs(), coords_[b].sym}, cut.tau_lower);
    Tensor val = e.compose(fu, gl, cut.wiring);
    int sign = cut.sign * parity_sign(static_cast<long>(coords_[b].degree) * cut.upper_degree);
    read_off(t, val.entries, sign * cut.multiplicity, out);
  }
  return out.finalize();
}

SparseVector ConvolutionAlgebra::pair_bracket(std::size_t i, std::size_t j) const {
  int a = basis_coord_[i], b = basis_coord_[j];
  SparseVector s = star(a, b);
  s.axpy(-parity_sign(static_cast<long>(coords_[a].degree) * coords_[b].degree), star(b, a));
  return to_basis(s);
}

SparseVector ConvolutionAlgebra::differential(const SparseVector& f) const {
  VectorBuilder out;
  for (auto& [i, x] : f.entries()) {
    const Coord& co = coords_[basis_coord_[i]];
    const OrbitRep& r = orbits_[co.orbit].rep;
    Tensor d = endo_->differential(Tensor{r.inputs(), r.outputs(), co.sym});
    read_off(co.orbit, d.entries, x, out);
  }
  return to_basis(out.finalize());
}

SparseVector ConvolutionAlgebra::bracket(const SparseVector& f, const SparseVector& g) const {
  if (custom_) return algebra_.bracket(std::vector<SparseVector>{f, g});
  SparseVector out;
  for (auto& [i, x] : f.entries())
    for (auto& [j, y] : g.entries()) {
      if (basis_[i].weight + basis_[j].weight > truncation_.max_weight) continue;
      out.axpy(x * y, pair_bracket(i, j));
    }
  return out;
}

SparseVector ConvolutionAlgebra::mc_residual(const SparseVector& tau) const {
  if (custom_) return deforma::mc_residual(algebra_, tau);
  SparseVector r = differential(tau);
  r.axpy(Rational(1, 2), bracket(tau, tau));
  return r;
}

SparseMatrix ConvolutionAlgebra::twisted_differential(const SparseVector& tau) const {
  if (custom_) return twist(algebra_, tau).d;
  auto cols = kernels::map<SparseVector>(
      dim(),
      [&](std::size_t j) {
        SparseVector e = SparseVector::unit(j);
        SparseVector c = differential(e);
        c.axpy(1, bracket(tau, e));
        return c;
      },
      options_.parallel);
  return SparseMatrix::from_columns(dim(), cols);
}

std::map<std::vector<int>, SparseVector> ConvolutionAlgebra::bracket_table(bool parallel) const {
  std::set<std::pair<int, int>> linked;
  for (auto& [pr, list] : cuts_by_pieces_) {
    linked.insert(pr);
    linked.insert({pr.second, pr.first});
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = i; j < dim(); ++j)
      if (basis_[i].weight + basis_[j].weight <= truncation_.max_weight &&
          linked.count({basis_[i].orbit, basis_[j].orbit}))
        pairs.push_back({i, j});
  auto values = kernels::map<SparseVector>(
      pairs.size(), [&](std::size_t k) { return pair_bracket(pairs[k].first, pairs[k].second); }, parallel);
  std::map<std::vector<int>, SparseVector> out;
  for (std::size_t k = 0; k < pairs.size(); ++k)
    if (!values[k].empty())
      out[{static_cast<int>(pairs[k].first), static_cast<int>(pairs[k].second)}] = std::move(values[k]);
  return out;
}

void ConvolutionAlgebra::build_algebra() {
  const auto& xl = endo_->labels();
  for (std::size_t i = 0; i < dim(); ++i) {
    const BasisInfo& b = basis_[i];
    std::vector<int> outs, ins;
    endo_->decode(b.key, b.inputs, b.outputs, outs, ins);
    std::ostringstream os;
    os << "w" << b.weight << ".o" << b.orbit << "[";
    for (std::size_t k = 0; k < outs.size(); ++k) os << (k ? "," : "") << xl[outs[k]];
    os << "<-";
    for (std::size_t k = 0; k < ins.size(); ++k) os << (k ? "," : "") << xl[ins[k]];
    os << "]";
    algebra_.labels.push_back(os.str());
    algebra_.degrees.push_back(b.degree);
    algebra_.weights.push_back(b.weight);
  }
  auto cols = kernels::map<SparseVector>(
      dim(), [&](std::size_t j) { return differential(SparseVector::unit(j)); }, options_.parallel);
  algebra_.d = SparseMatrix::from_columns(dim(), cols);
  algebra_.weight_cap = truncation_.max_weight;
  if (options_.bracket_table)
    for (auto& [args, v] : bracket_table(options_.parallel)) algebra_.set_bracket(args, v);
}

std::map<std::tuple<int, int, int, int>, std::size_t> ConvolutionAlgebra::dimension_table() const {
  std::map<std::tuple<int, int, int, int>, std::size_t> out;
  for (const auto& b : basis_) ++out[{b.inputs, b.outputs, b.weight, b.degree}];
  return out;
}

Tensor ConvolutionAlgebra::value_on_orbit(const SparseVector& f, int orbit) const {
  const OrbitRep& r = orbits_[orbit].rep;
  Tensor out{r.inputs(), r.outputs(), {}};
  for (auto& [i, x] : f.entries())
    if (basis_[i].orbit == orbit) out.entries.axpy(x, coords_[basis_coord_[i]].sym);
  return out;
}

Tensor ConvolutionAlgebra::value(const SparseVector& f, const DecoratedGraph& g) const {
  auto [k, s, alpha] = locate(g);
  if (s == 0) return Tensor{g.inputs, g.outputs, {}};
  Tensor v = endo_->act(value_on_orbit(f, k), alpha.inverse());
  v.entries.scale(s);
  return v;
}

SparseVector ConvolutionAlgebra::from_generator_values(const std::vector<Tensor>& values) const {
  const auto& gens = presentation_->generators;
  if (values.size() != gens.size())
    throw Error(ErrorKind::Validation, "ShapeMismatch", "one tensor per generator is required");
  VectorBuilder coords;
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    const Generator& gen = gens[gi];
    const Tensor& T = values[gi];
    if (T.inputs != gen.inputs || T.outputs != gen.outputs)
      throw Error(ErrorKind::Validation, "ShapeMismatch", "tensor for `" + gen.name + "` has the wrong biarity");
    for (auto& [key, x] : T.entries.entries()) {
      if (key >= endo_->component_dim(gen.inputs, gen.outputs))
        throw Error(ErrorKind::Validation, "ShapeMismatch", "tensor entry out of range for `" + gen.name + "`");
      if (endo_->key_degree(key, gen.inputs, gen.outputs) != gen.degree)
        throw Error(ErrorKind::Validation, "DegreeMismatch",
                    "tensor for `" + gen.name + "` has an entry whose degree differs from the generator degree");
    }
    auto [k, s, alpha] = locate(single_vertex(gen, static_cast<int>(gi)));
    if (s == 0) {
      if (!T.entries.empty())
        throw Error(ErrorKind::Validation, "EquivarianceViolation",
                    "generator `" + gen.name + "` vanishes under its symmetry but the tensor is nonzero");
      continue;
    }
    Tensor v = endo_->act(T, alpha);
    v.entries.scale(s);
    VectorBuilder local;
    read_off(k, v.entries, 1, local);
    SparseVector loc = local.finalize();
    SparseVector back;
    for (auto& [c, x] : loc.entries()) back.axpy(x, coords_[c].sym);
    if (!(back == v.entries))
      throw Error(ErrorKind::Validation, "EquivarianceViolation",
                  "tensor for `" + gen.name + "` is not equivariant under the generator symmetry");
    coords.add(loc);
  }
  return to_basis(coords.finalize());
}

}  // namespace deforma
