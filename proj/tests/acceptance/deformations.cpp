// Criteria 6, 7 and 8: lifting and obstructions, gauge group, CE function ring.

#include "acceptance.hpp"

#include "../unit/bch_oracle.hpp"
#include "deforma/deform/ce.hpp"
#include "deforma/deform/deform.hpp"

namespace acceptance {

namespace {

// u, x, y, v in degrees 0, 1, 1, 1 and z in degree 2 with d u = v, d y = z.
LInftyAlgebra abelian() {
  return parse_linfty(
      "complex ab\nbasis u deg=0\nbasis x deg=1\nbasis y deg=1\nbasis v deg=1\nbasis z deg=2\n"
      "d u -> 1*v\nd y -> 1*z\n");
}

LInftyAlgebra heisenberg_graded() {
  return parse_linfty("complex h\nbasis x deg=1\nbasis y deg=1\nbasis z deg=2\nbracket 2: (x,y) -> 1*z\n");
}

LInftyAlgebra two_step() {
  return parse_linfty(
      "complex t\nbasis x deg=1\nbasis y deg=1\nbasis w deg=1\nbasis z deg=2\n"
      "d w -> 1*z\nbracket 2: (x,y) -> 1*z\nbracket 2: (x,x) -> 1*z\n");
}

SparseVector random_element(const LInftyAlgebra& g, int degree, std::mt19937& rng, int density = 3) {
  std::uniform_int_distribution<int> coef(-2, 2), pick(0, 5);
  VectorBuilder b;
  for (auto i : g.degree_indices(degree))
    if (pick(rng) < density) b.add(i, coef(rng));
  return b.finalize();
}

// Associator of sum_p mu_p t^p vanishes through t^top.
bool associative_mod(const std::vector<DenseProduct>& mu, int top) {
  const int n = static_cast<int>(mu[0].size());
  for (int r = 0; r <= top; ++r)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int o = 0; o < n; ++o) {
            Rational s = 0;
            for (int p = 0; p < static_cast<int>(mu.size()); ++p)
              for (int q = 0; q < static_cast<int>(mu.size()); ++q) {
                if (p + q != r) continue;
                for (int k = 0; k < n; ++k) s += mu[q][k][a][b] * mu[p][o][k][c] - mu[q][k][b][c] * mu[p][o][a][k];
              }
            if (s != 0) return false;
          }
  return true;
}

json vector_json(const SparseVector& v, const LInftyAlgebra& g) {
  json out = json::object();
  for (auto& [i, c] : v.entries()) out[g.labels.at(i)] = c.get_str();
  return out;
}

}  // namespace

Outcome obstruction_theory() {
  Outcome out;
  // (a) K[x]/(x^2) deforms to K[x]/(x^2 - t)
  {
    ConvolutionAlgebra conv(builtin_presentation("assoc"), flat(2), Truncation{2, 4, 0});
    const auto& e = conv.endo();
    auto phi = conv.from_generator_values(dual_numbers(e));
    auto psi = conv.from_generator_values({Tensor{2, 1, SparseVector::unit(e.encode({0}, {1, 1}))}});
    auto problem = make_problem(conv.algebra(), phi);
    auto run = lift_to_order(problem, psi, 5);
    out.require(!run.obstruction && run.state.order() == 5, "dual numbers: lifting stopped early");
    bool zero = true;
    for (int i = 1; i < run.state.order(); ++i) zero = zero && run.state.corrections[i].empty();
    out.require(zero, "dual numbers: a higher correction is nonzero");
    auto ext = extend_scalars(conv.algebra(), ArtinianScalars{5}, true);
    SparseVector tau = ext.embed(phi, 0);
    for (int i = 1; i <= run.state.order(); ++i) tau.axpy(1, ext.embed(run.state.corrections[i - 1], i));
    out.require(mc_residual(ext.algebra, tau).empty(), "dual numbers: not MC mod t^6");
    out.require(associative_mod({dual_numbers_dense(), dense(2, {{1, 1, 0, 1}})}, 5),
                "dual numbers: direct associator nonzero");

    // (d) the lift set has the dimension of pi_0
    auto lift = lift_order(problem, DeformationState{{psi}});
    out.require(lift.lifted.has_value(), "dual numbers: order 2 lift missing");
    if (lift.lifted) {
      auto par = lift_set_parametrize(problem, DeformationState{{psi}}, lift.lifted->corrections.back());
      auto pi = moduli_homotopy_groups(conv, phi, -1, -1);
      out.require(par.parameters() == pi.pi.at(-1), "dual numbers: lift parameters != pi_0");
      out.report["dual_numbers"] = {{"order", run.state.order()}, {"lift_parameters", par.parameters()}};
    }
  }
  // (b) abelian fixture: every cocycle direction lifts to every order
  {
    auto g = abelian();
    auto problem = make_problem(g, {});
    std::vector<std::size_t> deg1 = g.degree_indices(1);
    SparseMatrix d1 = SparseMatrix::from_columns(
        g.dim(), [&] {
          std::vector<SparseVector> cols;
          for (auto i : deg1) cols.push_back(g.d.apply(SparseVector::unit(i)));
          return cols;
        }());
    auto kernel = kernel_basis(d1);
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> coef(-3, 3);
    int lifted = 0, tried = 0;
    for (int trial = 0; trial < 20; ++trial) {
      SparseVector dir;
      for (auto& k : kernel)
        for (auto& [pos, c] : k.entries()) dir.axpy(c * coef(rng), SparseVector::unit(deg1[pos]));
      if (trial < static_cast<int>(kernel.size())) {
        dir = SparseVector();
        for (auto& [pos, c] : kernel[trial].entries()) dir.axpy(c, SparseVector::unit(deg1[pos]));
      }
      if (dir.empty()) continue;
      auto run = lift_to_order(problem, dir, 6);
      ++tried;
      lifted += !run.obstruction && run.state.order() == 6;
    }
    out.require(tried > 0 && lifted == tried, "abelian: a direction failed to lift");
    DeformationState s{{SparseVector::unit(g.index_of("x"))}};
    auto lift = lift_order(problem, s);
    if (lift.lifted) {
      auto par = lift_set_parametrize(problem, s, lift.lifted->corrections.back());
      out.require(par.parameters() == cohomology(g.complex(), 1, 1).betti.at(1), "abelian: lift parameters != H^1");
      out.report["abelian"] = {{"directions", tried}, {"lifted", lifted}, {"lift_parameters", par.parameters()}};
    } else {
      out.require(false, "abelian: x did not lift");
    }
  }
  // (c) the committed fixture carries a nonzero obstruction
  {
    auto g = parse_linfty(read_file(data_path("obstructed.linfty")));
    out.require(!check_linfty(g).has_value(), "obstruction fixture is not L-infinity");
    auto problem = make_problem(g, {});
    auto run = lift_to_order(problem, SparseVector::unit(g.index_of("x")) + SparseVector::unit(g.index_of("y")), 3);
    out.require(run.obstruction.has_value(), "obstruction fixture lifted");
    if (run.obstruction) {
      const auto& ob = *run.obstruction;
      out.require(problem.twisted.d.apply(ob.representative).empty(), "obstruction is not a twisted cocycle");
      EchelonBasis boundaries(g.dim());
      for (auto& col : problem.twisted.d.column_vectors()) boundaries.insert(col);
      out.require(!boundaries.contains(ob.representative), "obstruction is a coboundary");
      out.require(ob.nonzero() && ob.rank_with_class == ob.rank_boundaries + 1, "rank certificate does not grow");
      out.report["obstruction"] = {{"order", ob.order},
                                   {"representative", vector_json(ob.representative, g)},
                                   {"rank_boundaries", ob.rank_boundaries},
                                   {"rank_with_class", ob.rank_with_class}};
    }
  }
  return out;
}

Outcome gauge_group() {
  Outcome out;
  // BCH against log(exp x exp y) in the free nilpotent model, order by order
  {
    bch_oracle::WordAlgebra w;
    bch_oracle::Poly x{{"x", 1}}, y{{"y", 1}};
    auto oracle = bch_oracle::log_series(bch_oracle::mul(bch_oracle::exp_series(x), bch_oracle::exp_series(y)));
    int terms = 0;
    for (int order = 1; order <= 4; ++order) {
      bch_oracle::Poly part;
      for (auto& [word, c] : oracle)
        if (static_cast<int>(word.size()) <= order) part[word] = c;
      auto got = bch(w.g, w.vec(x), w.vec(y), order);
      out.require(got == w.vec(part), "BCH differs from the oracle at order " + std::to_string(order));
      terms = static_cast<int>(part.size());
    }
    out.report["bch_terms"] = terms;
  }
  // gauge action keeps MC elements MC
  {
    std::mt19937 rng(77);
    int instances = 0, preserved = 0;
    auto heis = parse_linfty("complex h\nbasis x deg=0\nbasis y deg=0\nbasis z deg=0\nbracket 2: (x,y) -> 1*z\n");
    for (auto [level, degree] : {std::pair{1, 3}, std::pair{2, 3}}) {
      auto forms = extend_forms(heis, level, degree).algebra;
      for (int trial = 0; trial < 30; ++trial) {
        auto tau = gauge_act(forms, random_element(forms, 0, rng), {});
        tau = gauge_act(forms, random_element(forms, 0, rng), tau);
        auto moved = gauge_act(forms, random_element(forms, 0, rng), tau);
        ++instances;
        preserved += mc_residual(forms, tau).empty() && mc_residual(forms, moved).empty();
      }
    }
    out.require(instances >= 50 && preserved == instances, "gauge action broke the MC equation");
    out.report["gauge_instances"] = {{"instances", instances}, {"preserved", preserved}};
  }
  // abelian: gauge equivalent iff the difference is a coboundary
  {
    auto g = abelian();
    auto ext = extend_scalars(g, ArtinianScalars{3});
    EchelonBasis boundaries(ext.algebra.dim());
    for (auto i : ext.algebra.degree_indices(0)) boundaries.insert(ext.algebra.d.apply(SparseVector::unit(i)));
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> coef(-2, 2), coin(0, 1);
    auto cocycle = [&] {
      SparseVector t;
      for (int p = 1; p <= 3; ++p)
        for (const char* l : {"x", "v"}) t.axpy(coef(rng), ext.embed(SparseVector::unit(g.index_of(l)), p));
      return t;
    };
    int agree = 0, equivalent = 0, total = 40;
    for (int trial = 0; trial < total; ++trial) {
      auto t1 = cocycle();
      auto t2 = coin(rng) ? t1 + ext.embed(SparseVector::unit(g.index_of("v")) * coef(rng), 1 + trial % 3) : cocycle();
      bool coboundary = boundaries.contains(t2 - t1);
      auto r = gauge_equivalent(ext, t1, t2);
      agree += r.equivalent == coboundary;
      equivalent += r.equivalent;
    }
    out.require(agree == total, "abelian gauge equivalence differs from the coboundary test");
    out.require(equivalent > 0 && equivalent < total, "abelian gauge trials are one-sided");
    out.report["abelian_gauge"] = {{"trials", total}, {"equivalent", equivalent}};
  }
  return out;
}

Outcome ce_function_ring() {
  Outcome out;
  const std::vector<std::pair<std::string, LInftyAlgebra>> fixtures = {
      {"abelian", abelian()}, {"heisenberg", heisenberg_graded()}, {"two_step", two_step()}};
  for (const auto& [name, g] : fixtures) {
    auto r = mc_vs_ce_points(g, 2);
    out.require(r.equal, name + ": MC and CE point systems differ");
    out.require(!check_linfty(g).has_value() && ce_square_check(g).square_zero, name + ": d^2 != 0");
    out.report[name] = {{"equations", r.mc_equations}, {"equal", r.equal}};
  }
  auto control = mc_vs_ce_points(two_step(), 2, {1, 0, 2, 3});
  out.require(!control.equal, "shuffled identification was not detected");

  auto sl2 = parse_linfty(
      "complex sl2b\nbasis e deg=0\nbasis f deg=0\nbasis h deg=0\nbasis b deg=-1\n"
      "bracket 2: (e,f) -> 1*h\nbracket 2: (e,h) -> -2*e\nbracket 2: (f,h) -> 2*f\n"
      "bracket 3: (e,f,h) -> 1*b\n");
  out.require(!check_linfty(sl2).has_value() && ce_square_check(sl2).square_zero, "sl2 with l3: d^2 != 0");
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> pick(0, 3), coef(-1, 1);
  int broken = 0, agree = 0, total = 40;
  for (int trial = 0; trial < total; ++trial) {
    auto g = sl2;
    auto even = g.degree_indices(0);
    int i = pick(rng) % 3, j = (i + 1 + pick(rng) % 2) % 3;
    g.add_bracket({int(even[i]), int(even[j])}, SparseVector({{even[pick(rng) % 3], Rational(coef(rng))}}));
    bool linfty = !check_linfty(g).has_value();
    agree += linfty == ce_square_check(g).square_zero;
    broken += !linfty;
  }
  out.require(agree == total, "d^2 = 0 disagrees with check_linfty");
  out.require(broken > 0, "no corrupted negative control");
  out.report["corruptions"] = {{"trials", total}, {"broken", broken}};
  return out;
}

}  // namespace acceptance
