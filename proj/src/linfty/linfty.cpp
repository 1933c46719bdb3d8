#include "deforma/linfty/linfty.hpp"

#include "deforma/exactalg/text.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace deforma {

namespace {

Rational factorial(int k) {
  Rational r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

Rational power(const Rational& c, int m) {
  Rational r = 1;
  for (int i = 0; i < m; ++i) r *= c;
  return r;
}

}  // namespace

LInftyAlgebra::LInftyAlgebra(const CochainComplex& c) {
  std::map<int, std::size_t> offset;
  for (auto& [deg, ls] : c.space().components()) {
    offset[deg] = labels.size();
    for (auto& l : ls) {
      labels.push_back(l);
      degrees.push_back(deg);
    }
  }
  weights.assign(labels.size(), 0);
  d = SparseMatrix(labels.size(), labels.size());
  for (auto& [deg, m] : c.differentials())
    for (auto& [rc, a] : m.entries()) d.add(offset[deg + 1] + rc.first, offset[deg] + rc.second, a);
}

int LInftyAlgebra::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return static_cast<int>(i);
  throw Error(ErrorKind::Validation, "UnknownBasisLabel", "no basis element '" + label + "'");
}

std::vector<std::size_t> LInftyAlgebra::degree_indices(int degree) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < degrees.size(); ++i)
    if (degrees[i] == degree) out.push_back(i);
  return out;
}

int LInftyAlgebra::degree_of(const SparseVector& v) const {
  if (v.empty()) return 0;
  int deg = degrees[v.entries().front().first];
  for (auto& [i, x] : v.entries())
    if (degrees[i] != deg) throw Error(ErrorKind::Validation, "InhomogeneousElement", "element mixes degrees");
  return deg;
}

int LInftyAlgebra::sort_sign(std::vector<int>& args) const {
  int s = 1;
  for (std::size_t i = 1; i < args.size(); ++i)
    for (std::size_t j = i; j > 0 && args[j - 1] > args[j]; --j) {
      // [.., a, b, ..] = -(-1)^{|a||b|} [.., b, a, ..]
      if (!((degrees[args[j - 1]] & 1) && (degrees[args[j]] & 1))) s = -s;
      std::swap(args[j - 1], args[j]);
    }
  for (std::size_t i = 1; i < args.size(); ++i)
    if (args[i] == args[i - 1] && !(degrees[args[i]] & 1)) return 0;
  return s;
}

SparseVector LInftyAlgebra::bracket(std::vector<int> args) const {
  const int k = static_cast<int>(args.size());
  if (k == 1) return d.apply(SparseVector::unit(args[0]));
  if (weight_cap) {
    int w = 0;
    for (int a : args) w += weights[a];
    if (w > *weight_cap) return {};
  }
  auto t = brackets.find(k);
  if (t == brackets.end()) return {};
  int s = sort_sign(args);
  if (s == 0) return {};
  auto it = t->second.find(args);
  if (it == t->second.end()) return {};
  return s > 0 ? it->second : it->second * Rational(-1);
}

SparseVector LInftyAlgebra::bracket(const std::vector<SparseVector>& args) const {
  if (args.size() == 1) return d.apply(args[0]);
  if (!brackets.count(static_cast<int>(args.size()))) return {};
  VectorBuilder b;
  std::vector<int> idx(args.size());
  std::function<void(std::size_t, Rational)> rec = [&](std::size_t pos, Rational c) {
    if (pos == args.size()) {
      b.add(bracket(idx), c);
      return;
    }
    for (auto& [i, x] : args[pos].entries()) {
      idx[pos] = static_cast<int>(i);
      rec(pos + 1, c * x);
    }
  };
  rec(0, 1);
  return b.finalize();
}

void LInftyAlgebra::set_bracket(std::vector<int> args, const SparseVector& value) {
  int s = sort_sign(args);
  auto& table = brackets[static_cast<int>(args.size())];
  if (s == 0 || value.empty()) {
    table.erase(args);
    return;
  }
  table[args] = s > 0 ? value : value * Rational(-1);
}

void LInftyAlgebra::add_bracket(std::vector<int> args, const SparseVector& value) {
  int s = sort_sign(args);
  if (s == 0 || value.empty()) return;
  auto& table = brackets[static_cast<int>(args.size())];
  auto& slot = table[args];
  slot.axpy(s, value);
  if (slot.empty()) table.erase(args);
}

CochainComplex LInftyAlgebra::complex() const {
  GradedVectorSpace v;
  std::map<int, std::vector<std::size_t>> by_degree;
  std::vector<std::size_t> local(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    local[i] = by_degree[degrees[i]].size();
    by_degree[degrees[i]].push_back(i);
    v.add(degrees[i], labels[i]);
  }
  CochainComplex c(v);
  std::map<int, SparseMatrix> blocks;
  for (auto& [deg, idx] : by_degree) {
    auto next = by_degree.find(deg + 1);
    blocks[deg] = SparseMatrix(next == by_degree.end() ? 0 : next->second.size(), idx.size());
  }
  for (auto& [rc, a] : d.entries()) {
    int deg = degrees[rc.second];
    if (degrees[rc.first] != deg + 1)
      throw Error(ErrorKind::Mathematical, "DifferentialDegree", "l1 does not raise degree by one");
    blocks[deg].add(local[rc.first], local[rc.second], a);
  }
  for (auto& [deg, m] : blocks)
    if (!m.is_zero()) c.set_differential(deg, m);
  return c;
}

bool operator==(const LInftyAlgebra& a, const LInftyAlgebra& b) {
  auto strip = [](const std::map<int, std::map<std::vector<int>, SparseVector>>& m) {
    std::map<int, std::map<std::vector<int>, SparseVector>> out;
    for (auto& [k, t] : m)
      if (!t.empty()) out[k] = t;
    return out;
  };
  return a.labels == b.labels && a.degrees == b.degrees && a.d == b.d && strip(a.brackets) == strip(b.brackets) &&
         a.curved == b.curved && a.curvature == b.curvature;
}

SparseVector jacobi_expression(const LInftyAlgebra& g, const std::vector<int>& args) {
  const int n = static_cast<int>(args.size());
  const int K = g.max_arity();
  VectorBuilder total;
  for (int i = 1; i <= n; ++i) {
    int j = n + 1 - i;
    if (i > K || j > K) continue;
    if ((i >= 2 && !g.brackets.count(i)) || (j >= 2 && !g.brackets.count(j))) continue;
    int outer = (i * (j - 1)) % 2 ? -1 : 1;
    // unshuffles: subsets of size i in increasing order, then the complement
    std::vector<int> sel(n, 0);
    std::fill(sel.end() - i, sel.end(), 1);
    do {
      std::vector<int> inner, rest;
      int chi = 1;
      for (int p = 0; p < n; ++p) {
        if (sel[p]) {
          inner.push_back(args[p]);
          for (int q : rest)  // moving args[p] left past earlier complement elements
            if (!((g.degrees[q] & 1) && (g.degrees[args[p]] & 1))) chi = -chi;
        } else {
          rest.push_back(args[p]);
        }
      }
      SparseVector v = g.bracket(inner);
      if (v.empty()) continue;
      std::vector<SparseVector> outer_args{v};
      for (int q : rest) outer_args.push_back(SparseVector::unit(q));
      total.add(g.bracket(outer_args), Rational(chi * outer));
    } while (std::next_permutation(sel.begin(), sel.end()));
  }
  return total.finalize();
}

std::optional<LInftyViolation> check_linfty(const LInftyAlgebra& g, int max_inputs) {
  for (auto& [rc, a] : g.d.entries())
    if (g.degrees[rc.first] != g.degrees[rc.second] + 1) return LInftyViolation{"degree", 1, {int(rc.second)}, {}};
  for (auto& [k, table] : g.brackets)
    for (auto& [args, value] : table) {
      int deg = 2 - k;
      for (int a : args) deg += g.degrees[a];
      for (auto& [i, x] : value.entries())
        if (g.degrees[i] != deg) return LInftyViolation{"degree", k, args, value};
      for (std::size_t p = 1; p < args.size(); ++p)
        if (args[p] == args[p - 1] && !(g.degrees[args[p]] & 1)) return LInftyViolation{"antisymmetry", k, args, value};
      if (!std::is_sorted(args.begin(), args.end())) return LInftyViolation{"antisymmetry", k, args, value};
    }
  const int K = g.max_arity();
  int top = max_inputs > 0 ? max_inputs : 2 * K - 1;
  // visit basis elements by weight so the cap prunes early
  std::vector<int> order(g.dim());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g.weights[a] < g.weights[b]; });
  int min_w = g.dim() ? g.weights[order.front()] : 0;
  std::optional<LInftyViolation> found;
  for (int n = 1; n <= top && !found; ++n) {
    std::vector<int> pos(n);
    std::function<void(int, int, int)> rec = [&](int level, int start, int wsum) {
      if (found) return;
      if (level == n) {
        std::vector<int> args(n);
        for (int p = 0; p < n; ++p) args[p] = order[pos[p]];
        auto v = jacobi_expression(g, args);
        if (!v.empty()) found = LInftyViolation{"jacobi", n, args, v};
        return;
      }
      for (int p = start; p < static_cast<int>(order.size()); ++p) {
        int w = wsum + g.weights[order[p]];
        if (g.weight_cap && w + (n - level - 1) * min_w > *g.weight_cap) break;
        pos[level] = p;
        rec(level + 1, p, w);
        if (found) return;
      }
    };
    rec(0, 0, 0);
  }
  return found;
}

std::optional<std::vector<int>> check_filtration(const LInftyAlgebra& g) {
  for (auto& [rc, a] : g.d.entries())
    if (g.weights[rc.first] < g.weights[rc.second]) return std::vector<int>{int(rc.second)};
  for (auto& [k, table] : g.brackets)
    for (auto& [args, value] : table) {
      int w = 0;
      for (int a : args) w = std::max(w, g.weights[a]);
      for (auto& [i, x] : value.entries())
        if (g.weights[i] < w) return args;
    }
  return std::nullopt;
}

namespace {

// Calls fn(sorted tuple, multiplicity coefficient prod c^m / m!) for each
// multiset of size k drawn from the support of tau.
void for_each_power(const SparseVector& tau, int k, const std::function<void(const std::vector<int>&, const Rational&)>& fn) {
  const auto& e = tau.entries();
  std::vector<int> tuple;
  std::function<void(std::size_t, int, Rational)> rec = [&](std::size_t pos, int left, Rational c) {
    if (left == 0) {
      fn(tuple, c);
      return;
    }
    if (pos == e.size()) return;
    for (int m = left; m >= 0; --m) {
      for (int r = 0; r < m; ++r) tuple.push_back(static_cast<int>(e[pos].first));
      rec(pos + 1, left - m, c * power(e[pos].second, m) / factorial(m));
      tuple.resize(tuple.size() - m);
    }
  };
  rec(0, k, 1);
}

}  // namespace

SparseVector mc_residual(const LInftyAlgebra& g, const SparseVector& tau) {
  if (!tau.empty() && g.degree_of(tau) != 1)
    throw Error(ErrorKind::Validation, "WrongDegree", "Maurer-Cartan elements have degree 1");
  VectorBuilder b;
  b.add(g.d.apply(tau));
  if (g.curved) b.add(g.curvature);
  for (auto& [k, table] : g.brackets) {
    if (table.empty()) continue;
    double combos = 1;
    for (int i = 0; i < k; ++i) combos *= double(tau.size() + i) / (i + 1);
    if (combos < double(table.size())) {
      for_each_power(tau, k, [&](const std::vector<int>& t, const Rational& c) {
        auto it = table.find(t);
        if (it != table.end()) b.add(it->second, c);
      });
    } else {
      for (auto& [args, value] : table) {
        Rational c = 1;
        bool inside = true;
        for (std::size_t p = 0; p < args.size() && inside; ++p) {
          Rational x = tau.at(args[p]);
          if (is_zero(x)) inside = false;
          c *= x;
        }
        if (!inside) continue;
        for (std::size_t p = 0; p < args.size();) {  // divide by multiplicities
          std::size_t q = p;
          while (q < args.size() && args[q] == args[p]) ++q;
          c /= factorial(static_cast<int>(q - p));
          p = q;
        }
        b.add(value, c);
      }
    }
  }
  return b.finalize();
}

LInftyAlgebra twist(const LInftyAlgebra& g, const SparseVector& tau) {
  if (!tau.empty() && g.degree_of(tau) != 1) throw Error(ErrorKind::Validation, "WrongDegree", "twisting element must have degree 1");
  LInftyAlgebra out = g;
  out.curvature = mc_residual(g, tau);
  out.curved = !out.curvature.empty();
  for (auto& [k, table] : g.brackets)
    for (auto& [args, value] : table) {
      // distinct elements of the tuple with multiplicities
      std::vector<std::pair<int, int>> groups;
      for (int a : args) {
        if (!groups.empty() && groups.back().first == a) ++groups.back().second;
        else groups.push_back({a, 1});
      }
      std::vector<int> take(groups.size(), 0);
      std::function<void(std::size_t)> rec = [&](std::size_t gi) {
        if (gi == groups.size()) {
          std::vector<int> B, C;
          Rational c = 1;
          for (std::size_t q = 0; q < groups.size(); ++q) {
            for (int r = 0; r < take[q]; ++r) B.push_back(groups[q].first);
            for (int r = take[q]; r < groups[q].second; ++r) C.push_back(groups[q].first);
            if (take[q]) c *= power(tau.at(groups[q].first), take[q]) / factorial(take[q]);
          }
          if (B.empty() || C.empty()) return;  // i = 0 is l_k itself; C empty is the curvature
          std::vector<int> all = B;
          all.insert(all.end(), C.begin(), C.end());
          int s = out.sort_sign(all);
          if (s == 0) return;
          SparseVector v = value * (c * s);
          if (C.size() == 1) {
            for (auto& [i, x] : v.entries()) out.d.add(i, C[0], x);
          } else {
            out.add_bracket(C, v);
          }
          return;
        }
        int a = groups[gi].first;
        int top = is_zero(tau.at(a)) ? 0 : groups[gi].second;
        for (int m = 0; m <= top; ++m) {
          take[gi] = m;
          rec(gi + 1);
        }
        take[gi] = 0;
      };
      rec(0);
    }
  return out;
}

SparseVector gauge_act(const LInftyAlgebra& g, const SparseVector& lambda, const SparseVector& tau, int max_terms) {
  if (g.max_arity() > 2) throw Error(ErrorKind::Validation, "NotDgLie", "gauge action implemented for dg Lie algebras");
  if (!lambda.empty() && g.degree_of(lambda) != 0) throw Error(ErrorKind::Validation, "WrongDegree", "gauge parameter must have degree 0");
  if (!tau.empty() && g.degree_of(tau) != 1) throw Error(ErrorKind::Validation, "WrongDegree", "gauge target must have degree 1");
  SparseVector result = tau;
  SparseVector term = g.bracket(std::vector<SparseVector>{lambda, tau}) - g.d.apply(lambda);
  for (int k = 0; !term.empty(); ++k) {
    if (k >= max_terms)
      throw Error(ErrorKind::Validation, "GaugeSeriesDiverges", "ad_lambda series does not terminate within the bound");
    result.axpy(Rational(1) / factorial(k + 1), term);
    term = g.bracket(std::vector<SparseVector>{lambda, term});
  }
  return result;
}

SparseVector bch(const LInftyAlgebra& g, const SparseVector& x, const SparseVector& y, int order) {
  if (order > 4) throw Error(ErrorKind::Validation, "BchOrderTooHigh", "BCH coefficients are available through order 4");
  if ((!x.empty() && g.degree_of(x) != 0) || (!y.empty() && g.degree_of(y) != 0))
    throw Error(ErrorKind::Validation, "WrongDegree", "BCH acts on degree-0 elements");
  auto br = [&](const SparseVector& a, const SparseVector& b) { return g.bracket(std::vector<SparseVector>{a, b}); };
  SparseVector r;
  if (order >= 1) r = x + y;
  if (order >= 2) {
    SparseVector xy = br(x, y);
    r.axpy(Rational(1, 2), xy);
    if (order >= 3) {
      SparseVector xxy = br(x, xy);
      r.axpy(Rational(1, 12), xxy);
      r.axpy(Rational(-1, 12), br(y, xy));
      if (order >= 4) r.axpy(Rational(-1, 24), br(y, xxy));
    }
  }
  return r;
}

int FormMonomial::poly_degree() const { return std::accumulate(t.begin(), t.end(), 0) + degree(); }

std::size_t FormsAlgebra::index(std::size_t g_index, const FormMonomial& w) const {
  auto it = std::lower_bound(monomials.begin(), monomials.end(), w);
  if (it == monomials.end() || *it != w)
    throw Error(ErrorKind::Validation, "PolynomialDegreeOverflow", "form exceeds the polynomial degree bound");
  return g_index * monomials.size() + static_cast<std::size_t>(it - monomials.begin());
}

SparseVector FormsAlgebra::evaluate_at_vertex(const SparseVector& v, int vertex) const {
  VectorBuilder b;
  for (auto& [i, x] : v.entries()) {
    const FormMonomial& w = monomials[i % monomials.size()];
    if (w.dt) continue;
    bool zero = false;
    for (int p = 0; p < level; ++p)
      if (w.t[p] > 0 && vertex != p + 1) zero = true;
    if (!zero) b.add(i / monomials.size(), x);
  }
  return b.finalize();
}

namespace {

// Product of monomials with the sign from sorting the dt factors; nullopt if zero.
std::optional<std::pair<FormMonomial, int>> multiply(const FormMonomial& a, const FormMonomial& b) {
  if (a.dt & b.dt) return std::nullopt;
  FormMonomial r;
  r.t.resize(a.t.size());
  for (std::size_t i = 0; i < a.t.size(); ++i) r.t[i] = a.t[i] + b.t[i];
  r.dt = a.dt | b.dt;
  int s = 1;
  for (unsigned i = 0; i < 32; ++i)
    if (a.dt >> i & 1) s *= (__builtin_popcount(b.dt & ((1u << i) - 1)) % 2) ? -1 : 1;
  return std::make_pair(r, s);
}

}  // namespace

FormsAlgebra extend_forms(const LInftyAlgebra& g, int level, int max_degree) {
  if (level < 0 || level > 8) throw Error(ErrorKind::Validation, "BadSimplicialLevel", "simplicial level out of range");
  FormsAlgebra f;
  f.level = level;
  f.max_degree = max_degree;
  f.base_dim = g.dim();
  // all monomials t^a dt_S with |a| + |S| <= D
  std::function<void(int, FormMonomial&, int)> rec = [&](int p, FormMonomial& w, int left) {
    if (p == level) {
      for (unsigned mask = 0; mask < (1u << level); ++mask)
        if (__builtin_popcount(mask) <= left) {
          FormMonomial m = w;
          m.dt = mask;
          f.monomials.push_back(m);
        }
      return;
    }
    for (int e = 0; e <= left; ++e) {
      w.t[p] = e;
      rec(p + 1, w, left - e);
    }
    w.t[p] = 0;
  };
  FormMonomial w;
  w.t.assign(level, 0);
  rec(0, w, max_degree);
  std::sort(f.monomials.begin(), f.monomials.end());
  const std::size_t M = f.monomials.size();
  auto in_range = [&](const FormMonomial& m) { return m.poly_degree() <= max_degree; };

  LInftyAlgebra& a = f.algebra;
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (auto& m : f.monomials) {
      std::string name = g.labels[i];
      for (int p = 0; p < level; ++p)
        if (m.t[p]) name += "*t" + std::to_string(p + 1) + "^" + std::to_string(m.t[p]);
      for (int p = 0; p < level; ++p)
        if (m.dt >> p & 1) name += "*dt" + std::to_string(p + 1);
      a.labels.push_back(name);
      a.degrees.push_back(g.degrees[i] + m.degree());
      a.weights.push_back(g.weights[i]);
    }
  a.weight_cap = g.weight_cap;
  a.d = SparseMatrix(a.labels.size(), a.labels.size());
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t mi = 0; mi < M; ++mi) {
      const FormMonomial& m = f.monomials[mi];
      std::size_t src = i * M + mi;
      SparseVector di = g.d.apply(SparseVector::unit(i));
      for (auto& [r, x] : di.entries()) a.d.add(r * M + mi, src, x);
      int sx = (g.degrees[i] & 1) ? -1 : 1;
      for (int p = 0; p < level; ++p) {
        if (m.t[p] == 0 || (m.dt >> p & 1)) continue;
        FormMonomial dm = m;
        dm.t[p] -= 1;
        FormMonomial dtp;
        dtp.t.assign(level, 0);
        dtp.dt = 1u << p;
        auto prod = multiply(dtp, dm);
        if (!prod || !in_range(prod->first)) continue;
        a.d.add(f.index(i, prod->first), src, Rational(sx * prod->second * m.t[p]));
      }
    }
  for (auto& [k, table] : g.brackets)
    for (auto& [args, value] : table) {
      std::vector<std::size_t> choice(k, 0);
      while (true) {
        FormMonomial prod;
        prod.t.assign(level, 0);
        int sign = 1;
        bool zero = false;
        for (int p = 0; p < k && !zero; ++p) {
          auto r = multiply(prod, f.monomials[choice[p]]);
          if (!r || !in_range(r->first)) zero = true;
          else {
            prod = r->first;
            sign *= r->second;
          }
        }
        if (!zero) {
          // (-1)^{sum_{j<l} |w_j||x_l|}
          for (int j = 0; j < k; ++j)
            if (f.monomials[choice[j]].degree() & 1)
              for (int l = j + 1; l < k; ++l)
                if (g.degrees[args[l]] & 1) sign = -sign;
          std::vector<int> idx(k);
          for (int p = 0; p < k; ++p) idx[p] = static_cast<int>(args[p] * M + choice[p]);
          VectorBuilder b;
          std::size_t col = f.index(0, prod);
          for (auto& [i, x] : value.entries()) b.add(i * M + col, x * sign);
          a.set_bracket(idx, b.finalize());
        }
        int p = k - 1;
        while (p >= 0 && ++choice[p] == M) choice[p--] = 0;
        if (p < 0) break;
      }
    }
  return f;
}

LInftyAlgebra parse_linfty(const std::string& text) {
  std::istringstream in(text);
  std::string raw, complex_text;
  std::map<std::string, int> weights;
  while (std::getline(in, raw)) {
    std::string body = trim(raw.substr(0, raw.find('#')));
    if (body.rfind("bracket", 0) == 0) {
      complex_text += "\n";
      continue;
    }
    if (body.rfind("basis", 0) == 0) {
      auto tok = split_ws(body);
      std::string kept;
      for (auto& t : tok) {
        if (t.rfind("wt=", 0) == 0 && tok.size() > 1) weights[tok[1]] = parse_int(t.substr(3));
        else kept += t + " ";
      }
      complex_text += kept + "\n";
      continue;
    }
    complex_text += raw + "\n";
  }
  LInftyAlgebra g(parse_complex(complex_text));
  for (std::size_t i = 0; i < g.dim(); ++i)
    if (auto it = weights.find(g.labels[i]); it != weights.end()) g.weights[i] = it->second;

  LineReader lines(text);
  while (auto line = lines.next()) {
    if (line->text.rfind("bracket", 0) != 0) continue;
    const std::string& s = line->text;
    auto colon = s.find(':');
    auto open = s.find('(', colon == std::string::npos ? 0 : colon);
    auto close = s.find(')', open == std::string::npos ? 0 : open);
    auto arrow = s.find("->", close == std::string::npos ? 0 : close);
    if (colon == std::string::npos || open == std::string::npos || close == std::string::npos || arrow == std::string::npos)
      throw syntax_error(*line, "expected `bracket k: (a,b,..) -> terms`");
    int k = parse_int(trim(s.substr(7, colon - 7)));
    std::vector<int> args;
    std::stringstream list(s.substr(open + 1, close - open - 1));
    std::string item;
    while (std::getline(list, item, ',')) args.push_back(g.index_of(trim(item)));
    if (static_cast<int>(args.size()) != k || k < 2) throw syntax_error(*line, "bracket arity does not match its argument list", open + 1);
    std::string rhs = trim(s.substr(arrow + 2));
    VectorBuilder b;
    if (rhs != "0")
      for (auto& [c, label] : parse_linear_terms(*line, rhs)) b.add(g.index_of(label), c);
    std::vector<int> sorted = args;
    if (g.sort_sign(sorted) == 0 && !b.empty())
      throw Error(ErrorKind::Validation, "AntisymmetryViolation",
                  "line " + std::to_string(line->number) + ": repeated even element must bracket to zero");
    g.add_bracket(args, b.finalize());
  }
  return g;
}

std::string format_linfty(const LInftyAlgebra& g, const std::string& name) {
  std::ostringstream out;
  out << "complex " << name << "\n";
  for (std::size_t i = 0; i < g.dim(); ++i) out << "basis " << g.labels[i] << " deg=" << g.degrees[i] << " wt=" << g.weights[i] << "\n";
  auto terms = [&](const SparseVector& v) {
    std::string s;
    for (auto& [i, x] : v.entries()) s += (s.empty() ? "" : " + ") + to_string(x) + "*" + g.labels[i];
    return s.empty() ? std::string("0") : s;
  };
  for (std::size_t j = 0; j < g.dim(); ++j) {
    auto v = g.d.apply(SparseVector::unit(j));
    if (!v.empty()) out << "d " << g.labels[j] << " -> " << terms(v) << "\n";
  }
  for (auto& [k, table] : g.brackets)
    for (auto& [args, value] : table) {
      out << "bracket " << k << ": (";
      for (std::size_t p = 0; p < args.size(); ++p) out << (p ? "," : "") << g.labels[args[p]];
      out << ") -> " << terms(value) << "\n";
    }
  return out.str();
}

}  // namespace deforma
