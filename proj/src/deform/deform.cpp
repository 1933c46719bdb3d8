#include "deforma/deform/deform.hpp"

#include <algorithm>
#include <functional>
#include <regex>

namespace deforma {

namespace {

Rational factorial(int k) {
  Rational r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

// Compositions of j into m positive parts, each at most `cap`.
void compositions(int j, int m, int cap, std::vector<int>& cur, const std::function<void()>& emit) {
  if (m == 0) {
    if (j == 0) emit();
    return;
  }
  for (int first = 1; first <= std::min(j - (m - 1), cap); ++first) {
    cur.push_back(first);
    compositions(j - first, m - 1, cap, cur, emit);
    cur.pop_back();
  }
}

SparseMatrix restrict_columns(const SparseMatrix& d, const std::vector<int>& degrees, int degree) {
  SparseMatrix out(d.rows(), d.cols());
  for (auto& [rc, x] : d.entries())
    if (degrees[rc.second] == degree) out.add(rc.first, rc.second, x);
  return out;
}

std::vector<SparseVector> columns_of_degree(const SparseMatrix& d, const std::vector<int>& degrees, int degree) {
  auto cols = d.column_vectors();
  std::vector<SparseVector> out;
  for (std::size_t c = 0; c < cols.size(); ++c)
    if (degrees[c] == degree) out.push_back(cols[c]);
  return out;
}

}  // namespace

ArtinianScalars ArtinianScalars::from_modulus(const std::string& text) {
  static const std::regex re(R"(^t\^([0-9]+)$)");
  std::smatch m;
  if (!std::regex_match(text, m, re))
    throw Error(ErrorKind::Validation, "BadModulus", "modulus must look like t^k (got '" + text + "')");
  int k = std::stoi(m[1]);
  if (k < 1 || k > 64) throw Error(ErrorKind::Validation, "BadModulus", "modulus exponent must be between 1 and 64");
  return ArtinianScalars{k - 1};
}

std::size_t ExtendedAlgebra::index(std::size_t g_index, int power) const {
  if (power < first_power() || power > n)
    throw Error(ErrorKind::Validation, "PowerOutOfRange", "power of t outside the Artinian truncation");
  return g_index * powers() + static_cast<std::size_t>(power - first_power());
}

SparseVector ExtendedAlgebra::embed(const SparseVector& x, int power) const {
  std::vector<SparseVector::Entry> out;
  for (auto& [i, c] : x.entries()) out.push_back({index(i, power), c});
  return SparseVector(std::move(out));
}

SparseVector ExtendedAlgebra::coefficient(const SparseVector& v, int power) const {
  std::vector<SparseVector::Entry> out;
  const std::size_t P = powers();
  for (auto& [i, c] : v.entries())
    if (static_cast<int>(i % P) + first_power() == power) out.push_back({i / P, c});
  return SparseVector(std::move(out));
}

ExtendedAlgebra extend_scalars(const LInftyAlgebra& g, const ArtinianScalars& R, bool with_unit) {
  if (R.n < 0) throw Error(ErrorKind::Validation, "BadModulus", "modulus exponent must be positive");
  ExtendedAlgebra ext;
  ext.base_dim = g.dim();
  ext.n = R.n;
  ext.with_unit = with_unit;
  ext.base_d = g.d;
  ext.base_degrees = g.degrees;
  const int P = ext.powers();
  LInftyAlgebra& a = ext.algebra;
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (int p = ext.first_power(); p <= R.n; ++p) {
      a.labels.push_back(p == 0 ? g.labels[i] : g.labels[i] + "*t^" + std::to_string(p));
      a.degrees.push_back(g.degrees[i]);
      a.weights.push_back(g.weights.empty() ? 0 : g.weights[i]);
    }
  a.d = SparseMatrix(a.dim(), a.dim());
  for (auto& [rc, x] : g.d.entries())
    for (int p = ext.first_power(); p <= R.n; ++p) a.d.add(ext.index(rc.first, p), ext.index(rc.second, p), x);
  a.weight_cap = g.weight_cap;
  if (g.curved) {
    a.curved = true;
    if (with_unit) a.curvature = ext.embed(g.curvature, 0);
  }
  for (auto& [k, table] : g.brackets)
    for (auto& [args, value] : table) {
      // powers nondecreasing along runs of equal arguments, so each extended tuple appears once
      std::vector<int> pw(k, ext.first_power());
      std::function<void(int, int)> rec = [&](int pos, int used) {
        if (pos == k) {
          std::vector<int> ext_args(k);
          for (int q = 0; q < k; ++q) ext_args[q] = static_cast<int>(ext.index(args[q], pw[q]));
          a.set_bracket(ext_args, ext.embed(value, used));
          return;
        }
        int lo = (pos > 0 && args[pos] == args[pos - 1]) ? pw[pos - 1] : ext.first_power();
        for (int p = lo; used + p <= R.n; ++p) {
          pw[pos] = p;
          rec(pos + 1, used + p);
        }
      };
      rec(0, 0);
    }
  (void)P;
  return ext;
}

DeformationProblem make_problem(const LInftyAlgebra& g, const SparseVector& phi) {
  DeformationProblem p{twist(g, phi), phi};
  if (p.twisted.curved)
    throw Error(ErrorKind::Mathematical, "NotMaurerCartan", "the base element does not satisfy the MC equation");
  return p;
}

SparseVector order_residual(const DeformationProblem& p, const DeformationState& s, int j) {
  const LInftyAlgebra& g = p.twisted;
  VectorBuilder out;
  const int K = g.max_arity();
  for (int m = 1; m <= std::max(K, 1); ++m) {
    std::vector<int> cur;
    compositions(j, m, s.order(), cur, [&] {
      std::vector<SparseVector> args;
      for (int i : cur) args.push_back(s.corrections[i - 1]);
      out.add(g.bracket(args), Rational(1) / factorial(m));
    });
  }
  return out.finalize();
}

void validate_state(const DeformationProblem& p, const DeformationState& s) {
  for (const auto& c : s.corrections)
    if (!c.empty() && p.twisted.degree_of(c) != 1)
      throw Error(ErrorKind::Validation, "WrongDegree", "deformation terms must have degree 1");
  for (int j = 1; j <= s.order(); ++j)
    if (!order_residual(p, s, j).empty())
      throw Error(ErrorKind::Mathematical, "NotMaurerCartan",
                  "state fails the MC equation at order " + std::to_string(j));
}

SparseVector obstruction_cochain(const DeformationProblem& p, const DeformationState& s) {
  // the order-(k+1) residual with phi_{k+1} = 0 has no l_1 term
  SparseVector o = order_residual(p, s, s.order() + 1);
  o.scale(-1);
  return o;
}

LiftResult lift_order(const DeformationProblem& p, const DeformationState& s) {
  validate_state(p, s);
  const LInftyAlgebra& g = p.twisted;
  SparseVector o = obstruction_cochain(p, s);
  if (!g.d.apply(o).empty())
    throw Error(ErrorKind::Mathematical, "ObstructionNotCocycle", "obstruction cochain is not a twisted cocycle");
  LiftResult r;
  auto x = solve(restrict_columns(g.d, g.degrees, 1), o);
  if (x) {
    DeformationState next = s;
    next.corrections.push_back(*x);
    r.lifted = std::move(next);
    return r;
  }
  ObstructionClass c;
  c.order = s.order() + 1;
  c.representative = o;
  EchelonBasis span(g.dim());
  for (auto& col : columns_of_degree(g.d, g.degrees, 1)) span.insert(col);
  c.rank_boundaries = span.rank();
  span.insert(o);
  c.rank_with_class = span.rank();
  r.obstruction = std::move(c);
  return r;
}

LiftRun lift_to_order(const DeformationProblem& p, const SparseVector& direction, int order) {
  if (order < 1) throw Error(ErrorKind::Validation, "BadOrder", "order must be at least 1");
  LiftRun run;
  run.state.corrections = {direction};
  validate_state(p, run.state);
  while (run.state.order() < order) {
    auto r = lift_order(p, run.state);
    if (r.obstruction) {
      run.obstruction = std::move(r.obstruction);
      break;
    }
    run.state = std::move(*r.lifted);
  }
  return run;
}

LiftParametrization lift_set_parametrize(const DeformationProblem& p, const DeformationState& s,
                                         const SparseVector& lift) {
  DeformationState next = s;
  next.corrections.push_back(lift);
  validate_state(p, next);
  const LInftyAlgebra& g = p.twisted;
  LiftParametrization out;
  out.particular = lift;
  out.cocycles = kernel_basis(restrict_columns(g.d, g.degrees, 1));
  // kernel_basis also returns unit vectors of the other degrees; keep degree 1 only
  std::vector<SparseVector> z;
  for (auto& v : out.cocycles)
    if (g.degree_of(v) == 1) z.push_back(v);
  out.cocycles = std::move(z);
  EchelonBasis b(g.dim());
  for (auto& col : columns_of_degree(g.d, g.degrees, 0)) b.insert(col);
  b.fully_reduce();
  for (auto& [piv, row] : b.rows()) out.coboundaries.push_back(row);
  return out;
}

GaugeResult gauge_equivalent(const ExtendedAlgebra& ext, const SparseVector& tau1, const SparseVector& tau2) {
  const LInftyAlgebra& g = ext.algebra;
  for (const auto* t : {&tau1, &tau2})
    if (!mc_residual(g, *t).empty())
      throw Error(ErrorKind::Mathematical, "NotMaurerCartan", "gauge equivalence needs MC elements");
  SparseMatrix d0 = restrict_columns(ext.base_d, ext.base_degrees, 0);
  // degree-0 cocycles: free to add at order p - 1, where they enter the order-p equation linearly
  std::vector<SparseVector> z0;
  for (auto& v : kernel_basis(d0))
    if (std::all_of(v.entries().begin(), v.entries().end(), [&](auto& e) { return ext.base_degrees[e.first] == 0; }))
      z0.push_back(v);
  GaugeResult r;
  for (int p = ext.first_power(); p <= ext.n; ++p) {
    SparseVector current = ext.coefficient(gauge_act(g, r.lambda, tau1), p);
    SparseVector rhs = current - ext.coefficient(tau2, p);
    if (rhs.empty()) continue;
    // unknowns: lambda_p (acting by -d) and coefficients of z0 at order p - 1
    std::vector<SparseVector> cols = d0.column_vectors();
    const std::size_t base_cols = cols.size();
    if (p - 1 >= ext.first_power())
      for (const auto& z : z0) {
        SparseVector moved = r.lambda + ext.embed(z, p - 1);
        SparseVector delta = current - ext.coefficient(gauge_act(g, moved, tau1), p);
        cols.push_back(delta);
      }
    auto x = solve(SparseMatrix::from_columns(ext.base_dim, cols), rhs);
    if (!x) {
      r.failed_order = p;
      r.residual = rhs;
      return r;
    }
    VectorBuilder lambda_p, shift;
    for (auto& [i, c] : x->entries()) {
      if (i < base_cols)
        lambda_p.add(i, c);
      else
        shift.add(z0[i - base_cols], c);
    }
    r.lambda.axpy(1, ext.embed(lambda_p.finalize(), p));
    if (!shift.empty()) r.lambda.axpy(1, ext.embed(shift.finalize(), p - 1));
  }
  if (!(gauge_act(g, r.lambda, tau1) == tau2))
    throw Error(ErrorKind::Mathematical, "GaugeMismatch", "order-by-order gauge does not reproduce the target");
  r.equivalent = true;
  return r;
}

std::size_t GerstenhaberAlgebra::index(int output, const std::vector<int>& inputs) const {
  std::size_t key = output;
  for (int i : inputs) key = key * dim + i;
  return offsets.at(inputs.size()) + key;
}

SparseVector GerstenhaberAlgebra::bilinear(const std::vector<std::vector<std::vector<Rational>>>& mu) const {
  VectorBuilder b;
  for (int k = 0; k < dim; ++k)
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) b.add(index(k, {i, j}), mu[k][i][j]);
  return b.finalize();
}

SparseVector GerstenhaberAlgebra::linear(const std::vector<std::vector<Rational>>& a) const {
  VectorBuilder b;
  for (int k = 0; k < dim; ++k)
    for (int i = 0; i < dim; ++i) b.add(index(k, {i}), a[k][i]);
  return b.finalize();
}

GerstenhaberAlgebra gerstenhaber_algebra(const std::vector<std::string>& labels, int max_arity) {
  if (labels.empty() || max_arity < 1)
    throw Error(ErrorKind::Validation, "BadTruncation", "need a nonempty basis and arity >= 1");
  GerstenhaberAlgebra G;
  G.dim = static_cast<int>(labels.size());
  G.max_arity = max_arity;
  G.offsets.assign(max_arity + 2, 0);
  struct Op {
    int arity, output;
    std::vector<int> inputs;
  };
  std::vector<Op> ops;
  for (int a = 1; a <= max_arity; ++a) {
    G.offsets[a] = ops.size();
    std::size_t count = 1;
    for (int k = 0; k <= a; ++k) count *= G.dim;
    for (std::size_t key = 0; key < count; ++key) {
      Op op{a, 0, std::vector<int>(a)};
      std::size_t r = key;
      for (int k = a - 1; k >= 0; --k) {
        op.inputs[k] = static_cast<int>(r % G.dim);
        r /= G.dim;
      }
      op.output = static_cast<int>(r);
      std::string label = "c" + std::to_string(a) + "[" + labels[op.output] + "<-";
      for (int k = 0; k < a; ++k) label += (k ? "," : "") + labels[op.inputs[k]];
      G.algebra.labels.push_back(label + "]");
      G.algebra.degrees.push_back(a - 1);
      G.algebra.weights.push_back(a - 1);
      ops.push_back(std::move(op));
    }
  }
  G.offsets[max_arity + 1] = ops.size();
  LInftyAlgebra& L = G.algebra;
  L.d = SparseMatrix(ops.size(), ops.size());
  L.weight_cap = max_arity - 1;
  // f o g = sum_i (-1)^{i (b-1)} f o_i g on elementary maps
  auto pre_lie = [&](const Op& f, const Op& g, VectorBuilder& out, const Rational& c) {
    for (int i = 0; i < f.arity; ++i) {
      if (f.inputs[i] != g.output) continue;
      std::vector<int> ins(f.inputs.begin(), f.inputs.begin() + i);
      ins.insert(ins.end(), g.inputs.begin(), g.inputs.end());
      ins.insert(ins.end(), f.inputs.begin() + i + 1, f.inputs.end());
      int s = (i * (g.arity - 1)) % 2 ? -1 : 1;
      out.add(G.index(f.output, ins), c * s);
    }
  };
  for (std::size_t x = 0; x < ops.size(); ++x)
    for (std::size_t y = x; y < ops.size(); ++y) {
      const Op &f = ops[x], &g = ops[y];
      if (f.arity + g.arity - 1 > max_arity) continue;
      VectorBuilder out;
      pre_lie(f, g, out, 1);
      int s = ((f.arity - 1) * (g.arity - 1)) % 2 ? -1 : 1;
      pre_lie(g, f, out, -s);
      SparseVector v = out.finalize();
      if (!v.empty()) L.set_bracket({static_cast<int>(x), static_cast<int>(y)}, v);
    }
  return G;
}

}  // namespace deforma
