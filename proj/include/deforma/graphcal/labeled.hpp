#pragma once

#include "deforma/exactalg/sparse.hpp"
#include "deforma/graphcal/graph.hpp"

#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace deforma {

/// Basis of labeled graphs of one biarity and weight, each stored in its
/// labeled canonical form. Graphs vanishing in the coinvariants are omitted.
class LabeledSpace {
public:
  LabeledSpace() = default;
  LabeledSpace(GraphContext ctx, int inputs, int outputs, int weight, int max_genus);

  const GraphContext& context() const { return ctx_; }
  int inputs() const { return inputs_; }
  int outputs() const { return outputs_; }
  int weight() const { return weight_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<DecoratedGraph>& basis() const { return basis_; }
  const DecoratedGraph& graph(std::size_t i) const { return basis_[i]; }

  /// (index, sign) with g = sign * basis[index]; nullopt if g is zero.
  std::optional<std::pair<std::size_t, int>> locate(const DecoratedGraph& g) const;
  /// Adds c * g to the builder (nothing if g vanishes). Throws if g is outside the space.
  void accumulate(VectorBuilder& b, const DecoratedGraph& g, const Rational& c) const;

  /// Action of a leg relabeling on a basis vector, as a vector.
  SparseVector act(const SparseVector& v, const LegPerm& p) const;

private:
  std::shared_ptr<const std::vector<Generator>> gens_;  // keeps ctx_.generators alive across copies
  GraphContext ctx_;
  int inputs_ = 0, outputs_ = 0, weight_ = 0;
  std::vector<DecoratedGraph> basis_;
  std::map<std::vector<int>, std::size_t> index_;
};

/// All elements of Sigma_m x Sigma_n.
std::vector<LegPerm> all_leg_perms(int m, int n);

}  // namespace deforma
