#include "deforma/deform/ce.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace deforma {

namespace {

bool odd(int d) { return d % 2 != 0; }

Rational factorial(int k) {
  Rational r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

// Every distinct ordering of a sorted tuple.
void for_each_ordering(std::vector<int> sorted, const std::function<void(const std::vector<int>&)>& fn) {
  do fn(sorted);
  while (std::next_permutation(sorted.begin(), sorted.end()));
}

// Canonical form of an equation: scaled so the first coefficient is 1.
std::string normal_form(const Polynomial& p, const std::vector<std::string>& names) {
  Polynomial q;
  Rational lead = p.begin()->second;
  for (auto& [m, c] : p) q[m] = c / lead;
  return format_polynomial(q, names);
}

}  // namespace

int GradedPolynomials::degree(const Monomial& m) const {
  int s = 0;
  for (int k : m) s += degrees[k];
  return s;
}

int GradedPolynomials::merge(const Monomial& a, const Monomial& b, Monomial& out) const {
  int sign = 1;
  for (int x : a)
    for (int y : b) {
      if (x == y && odd(degrees[x])) return 0;
      if (y < x && odd(degrees[x]) && odd(degrees[y])) sign = -sign;
    }
  out.clear();
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return sign;
}

Polynomial GradedPolynomials::multiply(const Polynomial& a, const Polynomial& b) const {
  Polynomial out;
  Monomial m;
  for (auto& [ma, ca] : a)
    for (auto& [mb, cb] : b) {
      int s = merge(ma, mb, m);
      if (s) add_to(out, m, ca * cb * s);
    }
  return out;
}

void add_to(Polynomial& p, const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = p.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

void add_to(Polynomial& p, const Polynomial& q, const Rational& c) {
  for (auto& [m, x] : q) add_to(p, m, x * c);
}

std::string format_polynomial(const Polynomial& p, const std::vector<std::string>& names) {
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [m, c] : p) {
    os << (first ? "" : " + ") << c.get_str();
    for (int k : m) os << "*" << names[k];
    first = false;
  }
  return os.str();
}

Polynomial CEAlgebra::differential(const Polynomial& p) const {
  Polynomial out;
  Monomial tmp, full;
  for (auto& [m, c] : p) {
    int prefix = 0;
    for (std::size_t s = 0; s < m.size(); ++s) {
      Monomial left(m.begin(), m.begin() + s), right(m.begin() + s + 1, m.end());
      Rational sc = c * (odd(prefix) ? -1 : 1);
      for (auto& [dm, dc] : d[m[s]]) {
        int s1 = ring.merge(left, dm, tmp);
        if (!s1) continue;
        int s2 = ring.merge(tmp, right, full);
        if (s2) add_to(out, full, sc * dc * s1 * s2);
      }
      prefix += ring.degrees[m[s]];
    }
  }
  return out;
}

std::optional<std::pair<int, Polynomial>> CEAlgebra::square_defect() const {
  for (std::size_t k = 0; k < d.size(); ++k) {
    Polynomial sq = differential(d[k]);
    if (!sq.empty()) return std::make_pair(static_cast<int>(k), sq);
  }
  return std::nullopt;
}

CochainComplex CEAlgebra::complex() const {
  std::vector<Monomial> words{{}};
  std::vector<Monomial> frontier{{}};
  for (int len = 1; len <= max_word_length; ++len) {
    std::vector<Monomial> next;
    for (const auto& w : frontier)
      for (int k = w.empty() ? 0 : w.back(); k < static_cast<int>(generators.size()); ++k) {
        if (!w.empty() && k == w.back() && odd(ring.degrees[k])) continue;
        Monomial m = w;
        m.push_back(k);
        next.push_back(m);
      }
    words.insert(words.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  auto label = [&](const Monomial& m) {
    if (m.empty()) return std::string("1");
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "*" : "") + generators[m[i]];
    return s;
  };
  std::map<int, std::vector<Monomial>> by_degree;
  for (const auto& w : words) by_degree[ring.degree(w)].push_back(w);
  GradedVectorSpace space;
  std::map<Monomial, std::size_t> position;
  for (auto& [deg, ws] : by_degree)
    for (std::size_t i = 0; i < ws.size(); ++i) {
      space.add(deg, label(ws[i]));
      position[ws[i]] = i;
    }
  CochainComplex c(space);
  c.name = "CE";
  for (auto& [deg, ws] : by_degree) {
    if (!by_degree.count(deg + 1)) continue;
    SparseMatrix m(by_degree[deg + 1].size(), ws.size());
    for (std::size_t i = 0; i < ws.size(); ++i)
      for (auto& [w, x] : differential(Polynomial{{ws[i], Rational(1)}}))
        if (static_cast<int>(w.size()) <= max_word_length) m.add(position.at(w), i, x);
    c.set_differential(deg, std::move(m));
  }
  return c;
}

CEAlgebra ce_algebra(const LInftyAlgebra& g, int max_word_length) {
  if (g.curved) throw Error(ErrorKind::Validation, "CurvedAlgebra", "the CE algebra needs an uncurved algebra");
  CEAlgebra ce;
  ce.max_word_length = max_word_length > 0 ? max_word_length : 2 * g.max_arity() - 1;
  for (std::size_t k = 0; k < g.dim(); ++k) {
    ce.generators.push_back("xi_" + g.labels[k]);
    ce.ring.degrees.push_back(1 - g.degrees[k]);
  }
  // sum_n (1/n!) l_n(tau, .., tau) for tau = sum_k x_k (x) xi_k, read off per x_k
  std::vector<Polynomial> value(g.dim());
  for (auto& [rc, x] : g.d.entries()) add_to(value[rc.first], Monomial{static_cast<int>(rc.second)}, x);
  for (auto& [n, table] : g.brackets) {
    Rational weight = Rational(1) / factorial(n);
    for (auto& [args, unused] : table)
      for_each_ordering(args, [&](const std::vector<int>& order) {
        SparseVector v = g.bracket(order);
        if (v.empty()) return;
        int koszul = 0;
        for (int j = 0; j < n; ++j)
          for (int l = j + 1; l < n; ++l) koszul += ce.ring.degrees[order[j]] * g.degrees[order[l]];
        Polynomial word{{Monomial{}, Rational(1)}};
        for (int k : order) word = ce.ring.multiply(word, Polynomial{{Monomial{k}, Rational(1)}});
        for (auto& [k, c] : v.entries()) add_to(value[k], word, c * weight * (odd(koszul) ? -1 : 1));
      });
  }
  for (std::size_t k = 0; k < g.dim(); ++k) {
    Polynomial dk;
    add_to(dk, value[k], odd(g.degrees[k]) ? 1 : -1);
    ce.d.push_back(std::move(dk));
  }
  return ce;
}

CESquareCheck ce_square_check(const LInftyAlgebra& g) {
  CESquareCheck out;
  auto ce = ce_algebra(g);
  if (auto defect = ce.square_defect()) {
    out.square_zero = false;
    out.generator = defect->first;
    out.defect = defect->second;
    out.witness = check_linfty(g);
  }
  return out;
}

McCeReport mc_vs_ce_points(const LInftyAlgebra& g, int n, const std::vector<int>& identification) {
  if (g.curved) throw Error(ErrorKind::Validation, "CurvedAlgebra", "MC points need an uncurved algebra");
  if (n < 1) throw Error(ErrorKind::Validation, "BadModulus", "need a nonzero maximal ideal");
  std::vector<int> ident = identification;
  if (ident.empty())
    for (std::size_t k = 0; k < g.dim(); ++k) ident.push_back(static_cast<int>(k));
  if (ident.size() != g.dim()) throw Error(ErrorKind::Validation, "BadIdentification", "wrong identification size");

  McCeReport report;
  std::map<std::pair<int, int>, int> var;  // (basis index, power) -> variable
  for (std::size_t k = 0; k < g.dim(); ++k)
    if (g.degrees[k] == 1)
      for (int p = 1; p <= n; ++p) {
        var[{static_cast<int>(k), p}] = static_cast<int>(report.variables.size());
        report.variables.push_back("a_" + g.labels[k] + "_" + std::to_string(p));
      }
  GradedPolynomials commutative{std::vector<int>(report.variables.size(), 0)};
  // truncated polynomials in t with coefficients in Q[a]
  using Series = std::map<int, Polynomial>;
  auto series_multiply = [&](const Series& a, const Series& b) {
    Series out;
    for (auto& [p, x] : a)
      for (auto& [q, y] : b)
        if (p + q <= n) add_to(out[p + q], commutative.multiply(x, y));
    return out;
  };
  auto coordinate = [&](int k) {
    Series s;
    for (int p = 1; p <= n; ++p) s[p] = Polynomial{{Monomial{var.at({k, p})}, Rational(1)}};
    return s;
  };

  // MC side: coefficients of x_j t^p in sum_m (1/m!) l_m(tau, .., tau)
  std::map<int, Series> mc;
  for (auto& [rc, x] : g.d.entries())
    if (g.degrees[rc.second] == 1)
      for (auto& [p, poly] : coordinate(static_cast<int>(rc.second))) add_to(mc[rc.first][p], poly, x);
  for (auto& [m, table] : g.brackets) {
    Rational weight = Rational(1) / factorial(m);
    for (auto& [args, unused] : table) {
      if (std::any_of(args.begin(), args.end(), [&](int a) { return g.degrees[a] != 1; })) continue;
      for_each_ordering(args, [&](const std::vector<int>& order) {
        SparseVector v = g.bracket(order);
        Series prod{{0, Polynomial{{Monomial{}, Rational(1)}}}};
        for (int k : order) prod = series_multiply(prod, coordinate(k));
        for (auto& [j, c] : v.entries())
          for (auto& [p, poly] : prod) add_to(mc[j][p], poly, c * weight);
      });
    }
  }

  // CE side: images of d xi_j under xi_k -> sum_p a_{ident[k],p} t^p
  CEAlgebra ce = ce_algebra(g, 1);
  std::map<int, Series> cdga;
  for (std::size_t j = 0; j < g.dim(); ++j) {
    if (ce.ring.degrees[j] != -1) continue;
    for (auto& [word, c] : ce.d[j]) {
      Series prod{{0, Polynomial{{Monomial{}, Rational(1)}}}};
      bool vanishes = false;
      for (int k : word) {
        if (ce.ring.degrees[k] != 0) {
          vanishes = true;
          break;
        }
        int target = ident[k];
        if (g.degrees.at(target) != 1)
          throw Error(ErrorKind::Validation, "BadIdentification", "degree-0 generators must map to degree-1 elements");
        prod = series_multiply(prod, coordinate(target));
      }
      if (vanishes) continue;
      for (auto& [p, poly] : prod) add_to(cdga[static_cast<int>(j)][p], poly, c);
    }
  }

  auto collect = [&](const std::map<int, Series>& eqs) {
    std::set<std::string> forms;
    for (auto& [j, s] : eqs)
      for (auto& [p, poly] : s)
        if (p >= 1 && !poly.empty()) forms.insert(normal_form(poly, report.variables));
    return std::vector<std::string>(forms.begin(), forms.end());
  };
  report.mc_equations = collect(mc);
  report.ce_equations = collect(cdga);
  report.equal = report.mc_equations == report.ce_equations;
  if (!report.equal) {
    std::size_t i = 0;
    while (i < report.mc_equations.size() && i < report.ce_equations.size() &&
           report.mc_equations[i] == report.ce_equations[i])
      ++i;
    report.mismatch = i < report.mc_equations.size() ? report.mc_equations[i] : report.ce_equations[i];
  }
  return report;
}

}  // namespace deforma
