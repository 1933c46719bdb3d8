#pragma once

// Shared fixtures: small complexes and random structure tensors.

#include "deforma/convolution/convolution.hpp"
#include "deforma/deform/oracles.hpp"
#include "deforma/graphcal/labeled.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <tuple>

namespace fixtures {

using namespace deforma;

/// Complex with `n` basis vectors in degree 0 and zero differential.
inline CochainComplex flat(int n, const std::string& prefix = "e") {
  GradedVectorSpace v;
  for (int i = 0; i < n; ++i) v.add(0, prefix + std::to_string(i));
  CochainComplex c(v);
  c.name = "flat" + std::to_string(n);
  return c;
}

/// e0 in degree 0, e1 in degree 1, d e0 = e1.
inline CochainComplex two_term() {
  return parse_complex("complex k01\nbasis e0 deg=0\nbasis e1 deg=1\nd e0 -> 1*e1\n");
}

/// Random tensor of the generator's degree, symmetrized under its declared symmetry.
inline Tensor random_generator_tensor(const Generator& g, const EndoProperad& e, std::mt19937& rng,
                                      int spread = 2, double density = 0.7) {
  std::uniform_int_distribution<int> coef(-spread, spread);
  std::bernoulli_distribution keep(density);
  VectorBuilder b;
  for (std::uint64_t k = 0; k < e.component_dim(g.inputs, g.outputs); ++k)
    if (e.key_degree(k, g.inputs, g.outputs) == g.degree && keep(rng)) b.add(k, coef(rng));
  Tensor raw{g.inputs, g.outputs, b.finalize()};
  if (g.symmetry == Symmetry::Regular) return raw;
  Tensor out{g.inputs, g.outputs, {}};
  for (const auto& h : all_leg_perms(g.inputs, g.outputs)) {
    int chi = g.symmetry == Symmetry::Sign ? permutation_sign(h.in) * permutation_sign(h.out) : 1;
    out.entries.axpy(chi, e.act(raw, h).entries);
  }
  return out;
}

inline std::vector<Tensor> random_structure(const Presentation& p, const EndoProperad& e, std::mt19937& rng,
                                            int spread = 2, double density = 0.7) {
  std::vector<Tensor> out;
  for (const auto& g : p.generators) out.push_back(random_generator_tensor(g, e, rng, spread, density));
  return out;
}

/// Multiplication table of K[x]/(x^2) on basis (1, x) = (e0, e1).
inline std::vector<Tensor> dual_numbers(const EndoProperad& e) {
  VectorBuilder b;
  b.add(e.encode({0}, {0, 0}), 1);
  b.add(e.encode({1}, {0, 1}), 1);
  b.add(e.encode({1}, {1, 0}), 1);
  return {Tensor{2, 1, b.finalize()}};
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string data_path(const std::string& name) { return std::string(DEFORMA_TEST_DATA) + "/" + name; }

/// Structure constants of dimension n with the listed (i, j, k, c): e_i e_j += c e_k.
inline DenseProduct dense(int n, const std::vector<std::tuple<int, int, int, Rational>>& table) {
  DenseProduct mu(n, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n)));
  for (auto& [i, j, k, c] : table) mu[k][i][j] += c;
  return mu;
}

/// Antisymmetric bracket from the listed [e_i, e_j] = c e_k with i < j.
inline DenseProduct dense_lie(int n, const std::vector<std::tuple<int, int, int, Rational>>& table) {
  DenseProduct br = dense(n, table);
  for (auto& [i, j, k, c] : table) br[k][j][i] -= c;
  return br;
}

inline DenseProduct ground_field() { return dense(1, {{0, 0, 0, 1}}); }
inline DenseProduct dual_numbers_dense() { return dense(2, {{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}}); }
/// 2x2 upper-triangular matrices on (e11, e12, e22).
inline DenseProduct upper_triangular() {
  return dense(3, {{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 2, 1, 1}, {2, 2, 2, 1}});
}
inline DenseProduct heisenberg_dense() { return dense_lie(3, {{0, 1, 2, 1}}); }

/// The binary generator of assoc or lie as a tensor on X.
inline Tensor binary_tensor(const DenseProduct& mu, const EndoProperad& e) {
  VectorBuilder b;
  const int n = static_cast<int>(mu.size());
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) b.add(e.encode({k}, {i, j}), mu[k][i][j]);
  return Tensor{2, 1, b.finalize()};
}

/// Lie algebra concentrated in degree 0 as an L-infinity algebra.
inline LInftyAlgebra lie_linfty(const DenseProduct& br) {
  const int n = static_cast<int>(br.size());
  GradedVectorSpace v;
  for (int i = 0; i < n; ++i) v.add(0, "e" + std::to_string(i));
  LInftyAlgebra g{CochainComplex(v)};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      VectorBuilder b;
      for (int k = 0; k < n; ++k) b.add(k, br[k][i][j]);
      SparseVector val = b.finalize();
      if (!val.empty()) g.set_bracket({i, j}, val);
    }
  return g;
}

}  // namespace fixtures
