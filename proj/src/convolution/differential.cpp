#include "deforma/convolution/convolution.hpp"

#include "deforma/kernels/parallel.hpp"

#include <algorithm>
#include <sstream>

namespace deforma {

namespace {

int parity_sign(long x) { return (x % 2 == 0) ? 1 : -1; }

Error bad_term(int n, const DecompositionTerm& term, const std::string& why) {
  std::ostringstream os;
  os << "weight-" << n << " term on orbit " << term.target << ": " << why;
  return Error(ErrorKind::Validation, "BadDecomposition", os.str());
}

// Blocks in an order where every block comes after the blocks feeding it.
std::vector<int> topological_blocks(const DecompositionTerm& term) {
  const int n = static_cast<int>(term.pieces.size());
  std::vector<int> pending(n, 0), order;
  for (int b = 0; b < n; ++b)
    for (const Port& p : term.inputs[b])
      if (!p.is_leg()) ++pending[b];
  std::vector<int> ready;
  for (int b = n - 1; b >= 0; --b)
    if (pending[b] == 0) ready.push_back(b);
  while (!ready.empty()) {
    int b = ready.back();
    ready.pop_back();
    order.push_back(b);
    std::vector<int> next;
    for (const Port& p : term.outputs[b])
      if (!p.is_leg() && --pending[p.vertex] == 0) next.push_back(p.vertex);
    std::sort(next.rbegin(), next.rend());
    for (int c : next) ready.push_back(c);
  }
  return order;
}

}  // namespace

void ConvolutionAlgebra::validate_term(int n, const DecompositionTerm& term) const {
  const int norb = static_cast<int>(orbits_.size());
  if (n < 2) throw bad_term(n, term, "parts start at weight 2");
  if (static_cast<int>(term.pieces.size()) != n) throw bad_term(n, term, "the number of pieces differs from n");
  if (term.target < 0 || term.target >= norb) throw bad_term(n, term, "unknown target orbit");
  if (term.inputs.size() != term.pieces.size() || term.outputs.size() != term.pieces.size())
    throw bad_term(n, term, "one input and one output list per piece are required");
  const OrbitRep& t = orbits_[term.target].rep;
  std::vector<int> seen_in(t.inputs(), 0), seen_out(t.outputs(), 0);
  int weight = 0, degree = 0;
  for (int b = 0; b < n; ++b) {
    int k = term.pieces[b];
    if (k < 0 || k >= norb) throw bad_term(n, term, "unknown piece orbit");
    const OrbitRep& r = orbits_[k].rep;
    weight += r.weight();
    degree += r.degree;
    if (static_cast<int>(term.inputs[b].size()) != r.inputs() || static_cast<int>(term.outputs[b].size()) != r.outputs())
      throw bad_term(n, term, "a piece's port lists do not match its biarity");
    for (int i = 0; i < r.inputs(); ++i) {
      const Port& p = term.inputs[b][i];
      if (p.is_leg()) {
        if (p.slot < 0 || p.slot >= t.inputs() || seen_in[p.slot]++) throw bad_term(n, term, "target inputs must be used exactly once");
        continue;
      }
      if (p.vertex >= n || p.vertex == b || p.slot < 0 ||
          p.slot >= static_cast<int>(term.outputs[p.vertex].size()) || term.outputs[p.vertex][p.slot] != Port{b, i})
        throw bad_term(n, term, "internal edges must be listed from both ends");
    }
    for (int j = 0; j < r.outputs(); ++j) {
      const Port& p = term.outputs[b][j];
      if (p.is_leg()) {
        if (p.slot < 0 || p.slot >= t.outputs() || seen_out[p.slot]++) throw bad_term(n, term, "target outputs must be used exactly once");
        continue;
      }
      if (p.vertex >= n || p.vertex == b || p.slot < 0 ||
          p.slot >= static_cast<int>(term.inputs[p.vertex].size()) || term.inputs[p.vertex][p.slot] != Port{b, j})
        throw bad_term(n, term, "internal edges must be listed from both ends");
    }
  }
  if (std::count(seen_in.begin(), seen_in.end(), 0) || std::count(seen_out.begin(), seen_out.end(), 0))
    throw bad_term(n, term, "every target leg must be attached");
  if (static_cast<int>(topological_blocks(term).size()) != n) throw bad_term(n, term, "the pieces form a directed cycle");
  // Undirected connectivity of the block graph.
  std::vector<char> reached(n, 0);
  std::vector<int> stack{0};
  reached[0] = 1;
  while (!stack.empty()) {
    int b = stack.back();
    stack.pop_back();
    auto visit = [&](const std::vector<Port>& ports) {
      for (const Port& p : ports)
        if (!p.is_leg() && !reached[p.vertex]) {
          reached[p.vertex] = 1;
          stack.push_back(p.vertex);
        }
    };
    visit(term.inputs[b]);
    visit(term.outputs[b]);
  }
  if (std::count(reached.begin(), reached.end(), 0)) throw bad_term(n, term, "the pieces are not connected");
  if (weight != t.weight() + n - 2) throw bad_term(n, term, "piece weights must add up to the target weight plus n - 2");
  if (degree != t.degree + 2 - n) throw bad_term(n, term, "piece degrees violate the degree law of l_n");
}

Tensor ConvolutionAlgebra::compose_term(const DecompositionTerm& term, const std::vector<const Tensor*>& values) const {
  const EndoProperad& e = *endo_;
  const std::vector<int> order = topological_blocks(term);
  const int n = static_cast<int>(order.size());
  // Boundary of the merged blocks: origin (block, slot) of each leg, in tensor order.
  std::vector<std::pair<int, int>> m_in, m_out;
  Tensor m = *values[order[0]];
  for (std::size_t i = 0; i < term.inputs[order[0]].size(); ++i) m_in.push_back({order[0], static_cast<int>(i)});
  for (std::size_t j = 0; j < term.outputs[order[0]].size(); ++j) m_out.push_back({order[0], static_cast<int>(j)});
  for (int step = 1; step < n; ++step) {
    const int u = order[step];
    const auto& ins = term.inputs[u];
    const auto& outs = term.outputs[u];
    Wiring w;
    std::vector<std::pair<int, int>> in2 = m_in, out2;
    for (std::size_t j = 0; j < outs.size(); ++j) out2.push_back({u, static_cast<int>(j)});
    std::vector<int> consumed(m_out.size(), -1);
    for (std::size_t i = 0; i < ins.size(); ++i) {
      if (ins[i].is_leg()) {
        w.upper_in.push_back(static_cast<int>(in2.size()));
        in2.push_back({u, static_cast<int>(i)});
        continue;
      }
      auto it = std::find(m_out.begin(), m_out.end(), std::make_pair(ins[i].vertex, ins[i].slot));
      int a = static_cast<int>(it - m_out.begin());
      consumed[a] = static_cast<int>(i);
      w.upper_in.push_back(-1 - a);
    }
    for (std::size_t j = 0; j < outs.size(); ++j) w.upper_out.push_back(static_cast<int>(j));
    for (std::size_t k = 0; k < m_in.size(); ++k) w.lower_in.push_back(static_cast<int>(k));
    for (std::size_t a = 0; a < m_out.size(); ++a) {
      if (consumed[a] >= 0) {
        w.lower_out.push_back(-1 - consumed[a]);
      } else {
        w.lower_out.push_back(static_cast<int>(out2.size()));
        out2.push_back(m_out[a]);
      }
    }
    w.inputs = static_cast<int>(in2.size());
    w.outputs = static_cast<int>(out2.size());
    m = e.compose(*values[u], m, w);
    m_in = std::move(in2);
    m_out = std::move(out2);
  }
  // Relabel to the target's legs.
  LegPerm to_target;
  for (auto [b, i] : m_in) to_target.in.push_back(term.inputs[b][i].slot);
  for (auto [b, j] : m_out) to_target.out.push_back(term.outputs[b][j].slot);
  Tensor out = e.act(m, to_target);
  // The composite is mu of the factors in reverse merge order.
  std::vector<int> degrees(n), target(n);
  for (int b = 0; b < n; ++b) {
    const Tensor& v = *values[b];
    degrees[b] = v.entries.empty() ? 0 : e.key_degree(v.entries.entries().front().first, v.inputs, v.outputs);
  }
  for (int step = 0; step < n; ++step) target[order[step]] = n - 1 - step;
  if (koszul_sign(degrees, target) < 0) out.entries.scale(Rational(-1));
  return out;
}

DifferentialData ConvolutionAlgebra::quadratic_differential_data() const {
  DifferentialData data;
  auto& terms = data[2];
  for (std::size_t t = 0; t < cuts_.size(); ++t)
    for (const Cut& c : cuts_[t]) {
      DecompositionTerm term;
      term.target = static_cast<int>(t);
      term.pieces = {c.upper, c.lower};
      term.coefficient = c.sign * c.multiplicity;
      const LegPerm& tu = c.tau_upper;
      const LegPerm& tl = c.tau_lower;
      // Piece slot -> representative slot.
      LegPerm u_rep = tu.inverse(), l_rep = tl.inverse();
      const Wiring& w = c.wiring;
      term.inputs.assign(2, {});
      term.outputs.assign(2, {});
      term.inputs[0].resize(tu.in.size());
      term.outputs[0].resize(tu.out.size());
      term.inputs[1].resize(tl.in.size());
      term.outputs[1].resize(tl.out.size());
      for (std::size_t j = 0; j < w.upper_in.size(); ++j) {
        int v = w.upper_in[j];
        term.inputs[0][u_rep.in[j]] = v >= 0 ? Port::leg(v) : Port{1, l_rep.out[-1 - v]};
      }
      for (std::size_t j = 0; j < w.upper_out.size(); ++j) term.outputs[0][u_rep.out[j]] = Port::leg(w.upper_out[j]);
      for (std::size_t j = 0; j < w.lower_in.size(); ++j) term.inputs[1][l_rep.in[j]] = Port::leg(w.lower_in[j]);
      for (std::size_t j = 0; j < w.lower_out.size(); ++j) {
        int v = w.lower_out[j];
        term.outputs[1][l_rep.out[j]] = v >= 0 ? Port::leg(v) : Port{0, u_rep.in[-1 - v]};
      }
      terms.push_back(std::move(term));
    }
  return data;
}

void ConvolutionAlgebra::apply_differential_data(const DifferentialData& data) {
  for (const auto& [n, terms] : data)
    for (const auto& term : terms) validate_term(n, term);
  custom_ = true;

  std::vector<std::vector<int>> by_orbit(orbits_.size());
  for (std::size_t i = 0; i < dim(); ++i) by_orbit[basis_[i].orbit].push_back(static_cast<int>(i));

  bool higher = false;
  for (const auto& [n, terms] : data) {
    if (n > 2 && !terms.empty()) higher = true;
    // Every ordered assignment of basis elements to the pieces of every term.
    auto partial = kernels::map<std::map<std::vector<int>, SparseVector>>(
        terms.size(),
        [&](std::size_t ti) {
          const DecompositionTerm& term = terms[ti];
          std::map<std::vector<int>, VectorBuilder> acc;
          std::vector<std::size_t> idx(n, 0);
          for (int b = 0; b < n; ++b)
            if (by_orbit[term.pieces[b]].empty()) return std::map<std::vector<int>, SparseVector>{};
          std::vector<Tensor> tensors(n);
          std::vector<const Tensor*> values(n);
          const OrbitRep& target = orbits_[term.target].rep;
          while (true) {
            std::vector<int> args(n);
            int sign = 1;
            for (int b = 0; b < n; ++b) {
              args[b] = by_orbit[term.pieces[b]][idx[b]];
              const OrbitRep& r = orbits_[term.pieces[b]].rep;
              tensors[b] = Tensor{r.inputs(), r.outputs(), coords_[basis_coord_[args[b]]].sym};
              values[b] = &tensors[b];
            }
            // (f_0 (x) ... (x) f_{n-1}) applied to the pieces in order.
            for (int i = 0; i < n; ++i)
              for (int j = i + 1; j < n; ++j)
                sign *= parity_sign(static_cast<long>(basis_[args[j]].degree) * orbits_[term.pieces[i]].rep.degree);
            std::vector<int> sorted = args;
            int sort = algebra_.sort_sign(sorted);
            if (sort != 0) {
              long mult = 1;
              for (std::size_t a = 0, run = 1; a < sorted.size(); ++a) {
                if (a + 1 < sorted.size() && sorted[a + 1] == sorted[a]) {
                  mult *= static_cast<long>(++run);
                } else {
                  run = 1;
                }
              }
              Tensor v = compose_term(term, values);
              // Project onto the invariants of the target.
              VectorBuilder sym;
              for (const auto& [h, chi] : target.automorphisms) {
                Tensor hv = endo_->act(v, h);
                sym.add(hv.entries, Rational(chi));
              }
              SparseVector inv = sym.finalize();
              Rational c = term.coefficient * sign * sort * mult / static_cast<long>(target.automorphisms.size());
              read_off(term.target, inv, c, acc[sorted]);
            }
            int b = 0;
            while (b < n && ++idx[b] == by_orbit[term.pieces[b]].size()) idx[b++] = 0;
            if (b == n) break;
          }
          std::map<std::vector<int>, SparseVector> out;
          for (auto& [k, v] : acc) out[k] = v.finalize();
          return out;
        },
        options_.parallel);
    std::map<std::vector<int>, SparseVector> total;
    for (auto& part : partial)
      for (auto& [k, v] : part) total[k].axpy(1, v);
    if (n == 2) algebra_.brackets.erase(2);
    for (auto& [args, coordsum] : total) {
      SparseVector v = to_basis(coordsum);
      if (!v.empty()) algebra_.add_bracket(args, v);
    }
  }
  // Higher brackets lower the weight sum, so the weight-sum pruning no longer applies.
  if (higher) algebra_.weight_cap.reset();

  if (auto v = check_linfty(algebra_)) {
    int weight = 0;
    for (int i : v->witness) weight += algebra_.weights[i];
    std::ostringstream os;
    os << "the supplied differential does not square to zero: " << v->identity << " identity fails with "
       << v->arity << " inputs of total weight " << weight;
    throw Error(ErrorKind::Mathematical, "DifferentialNotSquareZero", os.str());
  }
}

ConvolutionAlgebra::ConvolutionAlgebra(const Presentation& p, const CochainComplex& X, const Truncation& t,
                                       const DifferentialData& data, ConvolutionOptions options)
    : ConvolutionAlgebra(p, X, t, ConvolutionOptions{options.parallel, !data.count(2)}) {
  options_ = options;
  apply_differential_data(data);
}

ConvolutionAlgebra convolution_linfty(const Presentation& p, const CochainComplex& X, const Truncation& t,
                                      const DifferentialData& data, ConvolutionOptions options) {
  return ConvolutionAlgebra(p, X, t, data, options);
}

}  // namespace deforma
