#include "deforma/graphcal/labeled.hpp"

#include <algorithm>
#include <numeric>

namespace deforma {

std::vector<LegPerm> all_leg_perms(int m, int n) {
  std::vector<LegPerm> out;
  std::vector<int> a(m), b(n);
  std::iota(a.begin(), a.end(), 0);
  do {
    std::iota(b.begin(), b.end(), 0);
    do out.push_back({a, b});
    while (std::next_permutation(b.begin(), b.end()));
  } while (std::next_permutation(a.begin(), a.end()));
  return out;
}

LabeledSpace::LabeledSpace(GraphContext ctx, int inputs, int outputs, int weight, int max_genus)
    : gens_(std::make_shared<const std::vector<Generator>>(*ctx.generators)),
      ctx_{gens_.get(), ctx.shift},
      inputs_(inputs),
      outputs_(outputs),
      weight_(weight) {
  auto orbits = enumerate_orbits(ctx_, weight, max_genus);
  if (weight < 1) return;
  auto perms = all_leg_perms(inputs, outputs);
  for (const auto& rep : orbits[weight]) {
    if (rep.zero || rep.inputs() != inputs || rep.outputs() != outputs) continue;
    for (const auto& h : perms) {
      Canonical c = canonical_labeled(ctx_, relabel(rep.graph, h));
      if (c.sign == 0 || index_.count(c.key)) continue;
      index_.emplace(c.key, basis_.size());
      basis_.push_back(std::move(c.graph));
    }
  }
  // deterministic order independent of enumeration: sort by key
  std::vector<std::pair<std::vector<int>, DecoratedGraph>> tmp;
  for (std::size_t i = 0; i < basis_.size(); ++i) tmp.emplace_back(canonical_labeled(ctx_, basis_[i]).key, basis_[i]);
  std::sort(tmp.begin(), tmp.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  basis_.clear();
  index_.clear();
  for (auto& [k, g] : tmp) {
    index_.emplace(k, basis_.size());
    basis_.push_back(std::move(g));
  }
}

std::optional<std::pair<std::size_t, int>> LabeledSpace::locate(const DecoratedGraph& g) const {
  Canonical c = canonical_labeled(ctx_, g);
  if (c.sign == 0) return std::nullopt;
  auto it = index_.find(c.key);
  if (it == index_.end())
    throw Error(ErrorKind::Truncation, "TruncationUnderflow", "graph lies outside the computed component");
  return std::make_pair(it->second, c.sign);
}

void LabeledSpace::accumulate(VectorBuilder& b, const DecoratedGraph& g, const Rational& c) const {
  if (auto loc = locate(g)) b.add(loc->first, c * loc->second);
}

SparseVector LabeledSpace::act(const SparseVector& v, const LegPerm& p) const {
  VectorBuilder b;
  for (auto& [i, x] : v.entries()) accumulate(b, relabel(basis_[i], p), x);
  return b.finalize();
}

}  // namespace deforma
