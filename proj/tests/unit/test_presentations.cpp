#include "dense_oracle.hpp"

#include "deforma/graphcal/graph.hpp"
#include "deforma/presentations/components.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

using namespace deforma;

namespace {

// Binary trees on leaves {0,1,2} written as nested triples, independent of the
// graph code: ((a,b),c) is "outer(inner(a,b),c)" and (a,(b,c)) the mirror.
struct Expr {
  bool inner_left;  // inner node sits in the left slot of the root
  int a, b, c;      // leaves in slot order: inner gets (a,b), root gets the remaining c
};

std::vector<Expr> all_exprs() {
  std::vector<Expr> out;
  std::vector<int> p{0, 1, 2};
  do {
    out.push_back({true, p[0], p[1], p[2]});
    out.push_back({false, p[0], p[1], p[2]});
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Normal form under antisymmetry of both nodes: returns (key, sign).
std::pair<std::vector<int>, int> antisym_normal(const Expr& e) {
  int a = e.a, b = e.b, sign = 1;
  if (a > b) {
    std::swap(a, b);
    sign = -sign;
  }
  // root has (inner, c); put inner first
  if (!e.inner_left) sign = -sign;
  return {{a, b, e.c}, sign};
}

}  // namespace

TEST_CASE("builtin presentations have the documented shape") {
  auto lie = builtin_presentation("lie");
  REQUIRE(lie.generators.size() == 1);
  CHECK(lie.generators[0].inputs == 2);
  CHECK(lie.generators[0].outputs == 1);
  CHECK(lie.generators[0].degree == 0);
  CHECK(lie.generators[0].symmetry == Symmetry::Sign);
  REQUIRE(lie.relations.size() == 1);
  CHECK(lie.relations[0].terms.size() == 3);

  auto frob = builtin_presentation("frob");
  REQUIRE(frob.generators.size() == 2);
  CHECK(frob.generators[0].inputs == 2);
  CHECK(frob.generators[0].outputs == 1);
  CHECK(frob.generators[1].inputs == 1);
  CHECK(frob.generators[1].outputs == 2);
  for (auto& g : frob.generators) CHECK(g.symmetry == Symmetry::Trivial);
  CHECK(frob.relations.size() == 4);

  auto diamond = builtin_presentation("bilie-diamond");
  CHECK(diamond.relations.size() == 4);
  CHECK(diamond.relations.back().name == "involutive");
  CHECK(term_shape(diamond, diamond.relations.back().terms[0]).genus == 1);
  CHECK(diamond.max_genus == 1);
}

TEST_CASE("presentation text round trips") {
  for (auto& name : builtin_names()) {
    auto p = builtin_presentation(name);
    auto text = format_presentation(p);
    auto q = parse_presentation(text);
    CHECK_MESSAGE(p == q, name);
    CHECK(format_presentation(q) == text);
  }
}

TEST_CASE("presentation parse errors") {
  auto code_of = [](const std::string& text) {
    try {
      parse_presentation(text);
    } catch (const Error& e) {
      return e.code();
    }
    return std::string("ok");
  };
  std::string gens = "properad x\ngen m : in=2 out=1 deg=0 sym=trivial\ngen c : in=1 out=2 deg=0 sym=trivial\n";
  CHECK(code_of(gens + "rel bad = 1*term(lower=m, upper=m, edges=[(1,1)], in=[1,2,3], out=[1]) - "
                       "1*term(lower=m, upper=c, edges=[(1,1)], in=[1,2], out=[1,2])\n") == "RelationBiarityMismatch");
  CHECK(code_of(gens + "rel q = 1*term(lower=m, in=[1,2], out=[1])\n") == "NonQuadraticRelation");
  CHECK(code_of(gens + "rel q = 1*term(lower=m, upper=m, edges=[], in=[1,2,3,4], out=[1,2])\n") == "NonQuadraticRelation");
  CHECK(code_of(gens + "rel q = 0.5*term(lower=m, upper=m, edges=[(1,1)], in=[1,2,3], out=[1])\n") == "SyntaxError");
  CHECK(code_of(gens + "rel q = 1*term(lower=m, upper=m, edges=[(1,3)], in=[1,2,3], out=[1])\n") == "EdgeOutOfRange");
  CHECK(code_of(gens + "rel q = 1*term(lower=m, upper=m, edges=[(1,1)], in=[1,1,3], out=[1])\n") == "BadLegLabeling");
  CHECK(code_of("operad y\ngen m : in=2 out=2 deg=0 sym=trivial\n") == "BadBiarity");
  CHECK(code_of("operad y\ngen m : in=2 out=1 deg=0 sym=cyclic\n") == "BadSymmetry");
  CHECK(code_of("gen m : in=2 out=1 deg=0 sym=sign\n") == "SyntaxError");

  try {
    parse_presentation(gens + "rel q = 1*term(lower=m upper=m)\n");
    FAIL("expected a syntax error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 4, column") != std::string::npos);
  }
}

TEST_CASE("free components at weight one are the generators") {
  std::vector<Generator> reg{{"m", 2, 1, 0, Symmetry::Regular}};
  std::vector<Generator> sgn{{"b", 2, 1, 0, Symmetry::Sign}};
  std::vector<Generator> triv{{"c", 1, 2, 0, Symmetry::Trivial}};
  CHECK(free_component(reg, 2, 1, 1, 0).dim() == 2);
  CHECK(free_component(sgn, 2, 1, 1, 0).dim() == 1);
  CHECK(free_component(triv, 1, 2, 1, 0).dim() == 1);
  CHECK(free_component(reg, 1, 2, 1, 0).dim() == 0);
}

TEST_CASE("free and quotient components against brute-force trees") {
  // sign-symmetric binary generator: distinct antisymmetry classes of the 12 expressions
  std::set<std::vector<int>> classes;
  for (auto& e : all_exprs()) classes.insert(antisym_normal(e).first);
  std::vector<Generator> sgn{{"b", 2, 1, 0, Symmetry::Sign}};
  CHECK(classes.size() == 3);
  CHECK(free_component(sgn, 3, 1, 2, 0).dim() == classes.size());

  // regular generator: every expression is its own basis element
  auto assoc = builtin_presentation("assoc");
  auto exprs = all_exprs();
  auto qa = quotient_component(assoc, 3, 1, 2, 0);
  CHECK(qa.free.dim() == exprs.size());
  {
    // associators ((a,b),c) - (a,(b,c)) for every ordering of the leaves
    auto index = [&](bool left, int a, int b, int c) {
      for (std::size_t i = 0; i < exprs.size(); ++i)
        if (exprs[i].inner_left == left && exprs[i].a == a && exprs[i].b == b && exprs[i].c == c) return i;
      return std::size_t(0);
    };
    oracle::Dense rows;
    std::vector<int> p{0, 1, 2};
    do {
      std::vector<Rational> r(exprs.size(), 0);
      r[index(true, p[0], p[1], p[2])] += 1;     // (p0 p1) p2
      r[index(false, p[1], p[2], p[0])] -= 1;    // p0 (p1 p2): inner (p1,p2) in the right slot
      rows.push_back(r);
    } while (std::next_permutation(p.begin(), p.end()));
    CHECK(qa.dim() == exprs.size() - oracle::dense_rank(rows));
    CHECK(qa.dim() == 6);
  }

  // lie: Jacobi in the 3-dim antisymmetric space
  {
    std::vector<std::vector<int>> basis(classes.begin(), classes.end());
    auto coord = [&](const Expr& e) {
      auto [k, s] = antisym_normal(e);
      std::vector<Rational> v(basis.size(), 0);
      v[std::find(basis.begin(), basis.end(), k) - basis.begin()] = s;
      return v;
    };
    oracle::Dense rows;
    std::vector<int> p{0, 1, 2};
    do {
      std::vector<Rational> r(basis.size(), 0);
      for (auto e : {Expr{true, p[0], p[1], p[2]}, Expr{true, p[1], p[2], p[0]}, Expr{true, p[2], p[0], p[1]}}) {
        auto v = coord(e);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] += v[i];
      }
      rows.push_back(r);
    } while (std::next_permutation(p.begin(), p.end()));
    auto ql = quotient_component(builtin_presentation("lie"), 3, 1, 2, 0);
    CHECK(ql.free.dim() == 3);
    CHECK(ql.dim() == basis.size() - oracle::dense_rank(rows));
    CHECK(ql.dim() == 2);
  }

  // frob: a single edge between two trivalent vertices never gives biarity (1,1)
  auto frob = builtin_presentation("frob");
  int hits = 0;
  for (auto& a : frob.generators)
    for (auto& b : frob.generators)
      if (a.inputs + b.inputs - 1 == 1 && a.outputs + b.outputs - 1 == 1) ++hits;
  CHECK(hits == 0);
  CHECK(free_component(frob.generators, 1, 1, 2, 0).dim() == 0);
  CHECK(quotient_component(frob, 1, 1, 2, 0).dim() == 0);
}

TEST_CASE("quotient never exceeds the free component") {
  for (auto& name : builtin_names()) {
    auto p = builtin_presentation(name);
    for (int m = 1; m <= 3; ++m)
      for (int n = 1; n <= 3; ++n) {
        if (m + n > 5) continue;
        auto q = quotient_component(p, m, n, 2, p.max_genus);
        CHECK(q.dim() <= q.free.dim());
        CHECK(q.dim() + q.ideal.rank() == q.free.dim());
      }
  }
}

TEST_CASE("symmetric group actions permute the free basis") {
  for (auto& name : builtin_names()) {
    auto p = builtin_presentation(name);
    for (int w = 1; w <= 3; ++w)
      for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {4, 1}, {1, 2}, {2, 2}, {1, 3}}) {
        if (p.kind == PresentationKind::Operad && n != 1) continue;
        auto space = free_component(p.generators, m, n, w, std::min(p.max_genus, 1));
        for (auto& h : all_leg_perms(m, n)) {
          std::set<std::size_t> image;
          for (std::size_t i = 0; i < space.dim(); ++i) {
            auto loc = space.locate(relabel(space.graph(i), h));
            REQUIRE(loc.has_value());
            image.insert(loc->first);
          }
          CHECK(image.size() == space.dim());
        }
      }
  }
}

TEST_CASE("operad graphs are trees with one output") {
  for (auto name : {"assoc", "lie"}) {
    auto p = builtin_presentation(name);
    GraphContext ctx{&p.generators, 0};
    auto orbits = enumerate_orbits(ctx, 4, 3);
    for (int w = 1; w <= 4; ++w)
      for (auto& r : orbits[w]) {
        CHECK(r.genus == 0);
        CHECK(r.outputs() == 1);
        CHECK(r.inputs() == w + 1);
      }
  }
}

TEST_CASE("canonical form is stable under vertex renumbering") {
  std::mt19937 rng(7);
  for (auto name : {"frob", "bilie", "lie"}) {
    auto p = builtin_presentation(name);
    for (int shift : {0, -1}) {
      GraphContext ctx{&p.generators, shift};
      auto orbits = enumerate_orbits(ctx, 3, 1);
      for (int w = 1; w <= 3; ++w)
        for (auto& r : orbits[w]) {
          auto c0 = canonical_labeled(ctx, r.graph);
          CHECK(canonical_labeled(ctx, c0.graph).key == c0.key);
          // renumber vertices at random and compare
          std::vector<int> perm(w);
          std::iota(perm.begin(), perm.end(), 0);
          std::shuffle(perm.begin(), perm.end(), rng);
          DecoratedGraph g;
          g.inputs = r.graph.inputs;
          g.outputs = r.graph.outputs;
          g.gens.resize(w);
          g.in.resize(w);
          g.out.resize(w);
          int sign = 1;
          for (int v = 0; v < w; ++v) {
            int nv = perm[v];
            g.gens[nv] = r.graph.gens[v];
            for (auto q : r.graph.in[v]) g.in[nv].push_back(q.is_leg() ? q : Port{perm[q.vertex], q.slot});
            for (auto q : r.graph.out[v]) g.out[nv].push_back(q.is_leg() ? q : Port{perm[q.vertex], q.slot});
          }
          for (int a = 0; a < w; ++a)
            for (int b = a + 1; b < w; ++b)
              if (perm[a] > perm[b] && (ctx.vertex_degree(r.graph.gens[a]) & 1) && (ctx.vertex_degree(r.graph.gens[b]) & 1))
                sign = -sign;
          validate_graph(p.generators, g);
          auto c1 = canonical_labeled(ctx, g);
          CHECK(c1.key == c0.key);
          CHECK(c1.sign * sign == c0.sign);
        }
    }
  }
}
