#pragma once

#include "deforma/graphcal/endo.hpp"
#include "deforma/graphcal/graph.hpp"
#include "deforma/linfty/linfty.hpp"
#include "deforma/presentations/presentation.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace deforma {

/// Weight W, total biarity N, genus G.
struct Truncation {
  int max_weight = 3;
  int max_biarity = 4;
  int max_genus = 0;
  bool operator==(const Truncation&) const = default;
};

/// One term of the weight-n part of the cobar differential: the target orbit
/// is sent to n orbit representatives glued along internal edges. Slots refer
/// to representative leg order; Port::leg(k) is leg k of the target.
struct DecompositionTerm {
  int target = 0;
  std::vector<int> pieces;               // orbit per block, in tensor-factor order
  std::vector<std::vector<Port>> inputs;   // inputs[b][i]: target input leg or {block, output slot}
  std::vector<std::vector<Port>> outputs;  // outputs[b][j]: target output leg or {block, input slot}
  Rational coefficient = 1;
};

/// n -> terms of the weight-n part, n >= 2. An entry for n = 2 replaces the
/// quadratic decomposition of the presentation's Koszul dual.
using DifferentialData = std::map<int, std::vector<DecompositionTerm>>;

struct ConvolutionOptions {
  bool parallel = true;
  /// Build the full l_2 table inside algebra(); brackets stay available on demand either way.
  bool bracket_table = true;
};

/// Hom_Sigma(C, End_X) for C the Koszul dual coproperad of a quadratic presentation.
///
/// An equivariant map is determined by its values on orbit representatives of
/// the free graph span F(sE); on a representative with automorphism group A
/// the value is A-invariant, so it is a combination of symmetrized tensors
/// (one coordinate per A-orbit of tensor basis keys). Maps vanishing on C form
/// the subspace K spanned by the symmetrized annihilator; the algebra basis is
/// the set of coordinates that are free modulo K.
class ConvolutionAlgebra {
public:
  struct BasisInfo {
    int orbit = 0;          // index into orbits()
    std::uint64_t key = 0;  // canonical tensor key
    int inputs = 0, outputs = 0, weight = 0, genus = 0, degree = 0;
  };

  struct Orbit {
    OrbitRep rep;
    std::vector<int> coords;  // coordinates living on this orbit
    /// Every tensor key whose symmetrization is nonzero: (coordinate, factor)
    /// with Sym(key) = factor * Sym(canonical key).
    std::unordered_map<std::uint64_t, std::pair<int, int>> keys;
  };

  ConvolutionAlgebra(const Presentation& p, const CochainComplex& X, const Truncation& t,
                     ConvolutionOptions options = {});

  const Presentation& presentation() const { return *presentation_; }
  const EndoProperad& endo() const { return *endo_; }
  const Truncation& truncation() const { return truncation_; }
  const GraphContext& context() const { return ctx_; }
  const std::vector<Orbit>& orbits() const { return orbits_; }

  std::size_t dim() const { return basis_.size(); }
  const std::vector<BasisInfo>& basis() const { return basis_; }
  /// Underlying L-infinity algebra (weight_cap = W). Brackets are filled only
  /// when the table option is on.
  const LInftyAlgebra& algebra() const { return algebra_; }
  /// (inputs, outputs, weight, degree) -> basis count.
  std::map<std::tuple<int, int, int, int>, std::size_t> dimension_table() const;

  SparseVector differential(const SparseVector& f) const;
  SparseVector bracket(const SparseVector& f, const SparseVector& g) const;
  /// delta(tau) + 1/2 [tau, tau].
  SparseVector mc_residual(const SparseVector& tau) const;
  /// Matrix of delta + [tau, -] on the whole basis.
  SparseMatrix twisted_differential(const SparseVector& tau) const;

  /// Value of f on a representative orbit.
  Tensor value_on_orbit(const SparseVector& f, int orbit) const;
  /// Value of f on a labeled graph of F(sE) (zero if the graph vanishes).
  Tensor value(const SparseVector& f, const DecoratedGraph& g) const;
  /// Orbit index of a graph, with b = sign * to_canonical^{-1} . rep (sign 0: vanishes).
  std::tuple<int, int, LegPerm> locate(const DecoratedGraph& g) const;

  /// The element supported on the generator orbits whose value on each
  /// suspended generator is the given tensor. Throws on shape, degree or
  /// equivariance mismatches.
  SparseVector from_generator_values(const std::vector<Tensor>& values) const;

  /// Serial recomputation of the bracket table, for kernel comparisons.
  std::map<std::vector<int>, SparseVector> bracket_table(bool parallel) const;

  /// The quadratic decomposition as weight-2 differential data.
  DifferentialData quadratic_differential_data() const;
  /// True when the brackets come from supplied differential data.
  bool custom_differential() const { return custom_; }

private:
  friend ConvolutionAlgebra convolution_linfty(const Presentation&, const CochainComplex&, const Truncation&,
                                               const DifferentialData&, ConvolutionOptions);
  ConvolutionAlgebra(const Presentation& p, const CochainComplex& X, const Truncation& t,
                     const DifferentialData& data, ConvolutionOptions options);

  struct Coord {
    int orbit = 0;
    std::uint64_t key = 0;
    SparseVector sym;
    Rational norm;  // coefficient of the canonical key in sym
    int degree = 0;
  };
  struct Cut {
    int upper = 0, lower = 0, target = 0;
    int sign = 1;
    /// Wirings rebuilding the target, relative to the symmetrized coordinates:
    /// leg-fixing symmetries of the pieces over those of the target.
    Rational multiplicity = 1;
    int upper_degree = 0;
    LegPerm tau_upper, tau_lower;
    Wiring wiring;
  };

  void build_orbits();
  void build_coordinates();
  void build_cuts();
  void build_kernel();
  void build_algebra();
  void apply_differential_data(const DifferentialData& data);
  void validate_term(int n, const DecompositionTerm& term) const;
  /// Composite of representative-order tensors along the term, on the target representative.
  Tensor compose_term(const DecompositionTerm& term, const std::vector<const Tensor*>& values) const;

  /// Adds c * (coordinates of the tensor v on orbit t) to b.
  void read_off(int t, const SparseVector& v, const Rational& c, VectorBuilder& b) const;
  /// Coordinate vector (over coords_) reduced modulo K, re-indexed by basis.
  SparseVector to_basis(const SparseVector& coords) const;
  SparseVector star(int a, int b) const;  // coordinate vector of f_a * g_b
  SparseVector pair_bracket(std::size_t i, std::size_t j) const;

  std::shared_ptr<const Presentation> presentation_;
  std::shared_ptr<const EndoProperad> endo_;
  Truncation truncation_;
  ConvolutionOptions options_;
  GraphContext ctx_;

  std::vector<Orbit> orbits_;
  std::map<std::vector<int>, int> orbit_index_;
  std::vector<Coord> coords_;
  std::vector<std::vector<Cut>> cuts_;  // by target orbit
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> cuts_by_pieces_;  // (upper, lower) -> (target, cut)
  EchelonBasis kernel_;
  std::vector<int> coord_to_basis_;
  std::vector<int> basis_coord_;
  std::vector<BasisInfo> basis_;
  LInftyAlgebra algebra_;
  bool custom_ = false;
};

/// Convolution L-infinity algebra whose brackets l_n come from the supplied
/// parts of the differential. Throws BadDecomposition on malformed terms and
/// DifferentialNotSquareZero when the brackets fail the L-infinity identities.
ConvolutionAlgebra convolution_linfty(const Presentation& p, const CochainComplex& X, const Truncation& t,
                                      const DifferentialData& data, ConvolutionOptions options = {});

/// Generator tensors on X, one per generator of the presentation.
struct StructureMaps {
  std::string presentation;
  std::string complex;
  std::vector<Tensor> tensors;
};

/// `struct <presentation> on <complex>` followed by
/// `map <gen>: [out,...] <- [in,...] = p/q` lines; omitted entries are zero.
StructureMaps parse_structure_maps(const std::string& text, const Presentation& p, const EndoProperad& endo);
std::string format_structure_maps(const StructureMaps& s, const Presentation& p, const EndoProperad& endo);

/// Checks every relation of p directly on the tensors; returns the name of the
/// first failing relation.
std::optional<std::string> first_failing_relation(const Presentation& p, const EndoProperad& endo,
                                                  const std::vector<Tensor>& tensors);
/// Value of a relation on the tensors, as a tensor of the relation's biarity.
Tensor relation_value(const Presentation& p, const EndoProperad& endo, const std::vector<Tensor>& tensors,
                      const Relation& r);

SparseVector structure_to_mc(const ConvolutionAlgebra& conv, const StructureMaps& s);

/// Twisted complex of delta + [phi, -]. `curved` reports a nonzero MC residual.
struct DeformationComplex {
  CochainComplex complex;
  std::vector<std::size_t> basis_order;  // complex basis position -> algebra index
  bool curved = false;
  SparseVector curvature;
};
DeformationComplex deformation_complex(const ConvolutionAlgebra& conv, const SparseVector& phi);

/// Betti numbers of the twisted complex: n -> dim H^{-n - shift}.
struct HomotopyGroups {
  std::map<int, std::size_t> pi;  // key n, value dim pi_{n+1}
  std::map<int, bool> stable;     // filled by compare_truncations
  bool curved = false;
};
HomotopyGroups moduli_homotopy_groups(const ConvolutionAlgebra& conv, const SparseVector& phi, int n_min, int n_max,
                                      int shift = 0);
/// Marks the entries of `base` that agree with `larger`.
void compare_truncations(HomotopyGroups& base, const HomotopyGroups& larger);

}  // namespace deforma
