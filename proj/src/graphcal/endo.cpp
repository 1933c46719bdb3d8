#include "deforma/graphcal/endo.hpp"

#include <map>

namespace deforma {

int koszul_sign(const std::vector<int>& degrees, const std::vector<int>& target) {
  int s = 1;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (!(degrees[i] & 1)) continue;
    for (std::size_t j = i + 1; j < degrees.size(); ++j)
      if (target[i] > target[j] && (degrees[j] & 1)) s = -s;
  }
  return s;
}

EndoProperad::EndoProperad(const CochainComplex& X, int max_biarity) : max_biarity_(max_biarity) {
  if (max_biarity < 2) throw Error(ErrorKind::Validation, "BadTruncation", "End_X needs max biarity N >= 2");
  std::map<int, std::size_t> offset;
  for (auto& [deg, labels] : X.space().components()) {
    offset[deg] = degrees_.size();
    for (auto& l : labels) {
      degrees_.push_back(deg);
      labels_.push_back(l);
    }
  }
  const std::size_t d = degrees_.size();
  dx_ = SparseMatrix(d, d);
  for (auto& [deg, m] : X.differentials())
    for (auto& [rc, a] : m.entries()) dx_.add(offset[deg + 1] + rc.first, offset[deg] + rc.second, a);
  dx_cols_.resize(d);
  dx_rows_.resize(d);
  for (auto& [rc, a] : dx_.entries()) {
    dx_cols_[rc.second].emplace_back(static_cast<int>(rc.first), a);
    dx_rows_[rc.first].emplace_back(static_cast<int>(rc.second), a);
  }
}

int EndoProperad::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<int>(i);
  throw Error(ErrorKind::Validation, "UnknownBasisLabel", "no basis element '" + label + "' in X");
}

std::uint64_t EndoProperad::encode(const std::vector<int>& outs, const std::vector<int>& ins) const {
  std::uint64_t k = 0, d = static_cast<std::uint64_t>(dim());
  for (int o : outs) k = k * d + o;
  for (int i : ins) k = k * d + i;
  return k;
}

void EndoProperad::decode(std::uint64_t key, int m, int n, std::vector<int>& outs, std::vector<int>& ins) const {
  std::uint64_t d = static_cast<std::uint64_t>(dim());
  ins.resize(m);
  outs.resize(n);
  for (int i = m - 1; i >= 0; --i) {
    ins[i] = static_cast<int>(key % d);
    key /= d;
  }
  for (int j = n - 1; j >= 0; --j) {
    outs[j] = static_cast<int>(key % d);
    key /= d;
  }
}

std::uint64_t EndoProperad::component_dim(int m, int n) const {
  std::uint64_t r = 1;
  for (int k = 0; k < m + n; ++k) r *= static_cast<std::uint64_t>(dim());
  return r;
}

int EndoProperad::key_degree(std::uint64_t key, int m, int n) const {
  std::vector<int> outs, ins;
  decode(key, m, n, outs, ins);
  int deg = 0;
  for (int o : outs) deg += degrees_[o];
  for (int i : ins) deg -= degrees_[i];
  return deg;
}

Tensor EndoProperad::differential(const Tensor& f) const {
  VectorBuilder b;
  std::vector<int> outs, ins;
  for (auto& [key, c] : f.entries.entries()) {
    decode(key, f.inputs, f.outputs, outs, ins);
    int fdeg = 0;
    for (int o : outs) fdeg += degrees_[o];
    for (int i : ins) fdeg -= degrees_[i];
    int prefix = 0;
    for (std::size_t p = 0; p < outs.size(); ++p) {
      int keep = outs[p];
      for (auto& [r, a] : dx_cols_[keep]) {
        outs[p] = r;
        b.add(encode(outs, ins), (prefix & 1 ? -c : c) * a);
      }
      outs[p] = keep;
      prefix += degrees_[keep];
    }
    // - (-1)^{|F|} F . d
    int outer = (fdeg & 1) ? 1 : -1;
    prefix = 0;
    for (std::size_t p = 0; p < ins.size(); ++p) {
      int keep = ins[p];
      for (auto& [j, a] : dx_rows_[keep]) {
        ins[p] = j;
        b.add(encode(outs, ins), (prefix & 1 ? -c : c) * a * outer);
      }
      ins[p] = keep;
      prefix += degrees_[keep];
    }
  }
  return {f.inputs, f.outputs, b.finalize()};
}

Tensor EndoProperad::act(const Tensor& f, const LegPerm& p) const {
  VectorBuilder b;
  std::vector<int> outs, ins, outs2(f.outputs), ins2(f.inputs), dout(f.outputs), din(f.inputs);
  for (auto& [key, c] : f.entries.entries()) {
    decode(key, f.inputs, f.outputs, outs, ins);
    for (int i = 0; i < f.inputs; ++i) {
      ins2[p.in[i]] = ins[i];
      din[i] = degrees_[ins[i]];
    }
    for (int j = 0; j < f.outputs; ++j) {
      outs2[p.out[j]] = outs[j];
      dout[j] = degrees_[outs[j]];
    }
    int s = koszul_sign(din, p.in) * koszul_sign(dout, p.out);
    b.add(encode(outs2, ins2), s > 0 ? c : Rational(-c));
  }
  return {f.inputs, f.outputs, b.finalize()};
}

Tensor EndoProperad::compose(const Tensor& upper, const Tensor& lower, const Wiring& w) const {
  const int mU = upper.inputs, nU = upper.outputs, mL = lower.inputs, nL = lower.outputs;
  // Positions after each reordering step, fixed by the wiring.
  // step 1: global inputs -> [lower inputs, upper global inputs]
  std::vector<int> in_target(w.inputs, -1);
  for (int k = 0; k < mL; ++k) in_target[w.lower_in[k]] = k;
  std::vector<int> upper_global_inputs;
  for (int k = 0; k < mU; ++k)
    if (w.upper_in[k] >= 0) {
      in_target[w.upper_in[k]] = mL + static_cast<int>(upper_global_inputs.size());
      upper_global_inputs.push_back(k);
    }
  // step 3: [lower outputs, upper global inputs] -> [upper inputs, lower global outputs]
  std::vector<int> mid_target(nL + upper_global_inputs.size(), -1);
  std::vector<int> lower_global_outputs;
  for (int a = 0; a < nL; ++a) {
    if (w.lower_out[a] < 0) mid_target[a] = -1 - w.lower_out[a];
    else {
      mid_target[a] = mU + static_cast<int>(lower_global_outputs.size());
      lower_global_outputs.push_back(a);
    }
  }
  for (std::size_t r = 0; r < upper_global_inputs.size(); ++r) mid_target[nL + r] = upper_global_inputs[r];
  // step 5: [upper outputs, lower global outputs] -> global outputs
  std::vector<int> out_target(nU + lower_global_outputs.size());
  for (int k = 0; k < nU; ++k) out_target[k] = w.upper_out[k];
  for (std::size_t r = 0; r < lower_global_outputs.size(); ++r) out_target[nU + r] = w.lower_out[lower_global_outputs[r]];

  VectorBuilder b;
  std::vector<int> uo, ui, lo, li;
  std::vector<int> gin(w.inputs), gout(w.outputs), deg_in(w.inputs), deg_mid(mid_target.size()), deg_out(out_target.size());
  for (auto& [lkey, lc] : lower.entries.entries()) {
    decode(lkey, mL, nL, lo, li);
    for (auto& [ukey, uc] : upper.entries.entries()) {
      decode(ukey, mU, nU, uo, ui);
      bool ok = true;
      for (int k = 0; k < mU && ok; ++k)
        if (w.upper_in[k] < 0 && ui[k] != lo[-1 - w.upper_in[k]]) ok = false;
      if (!ok) continue;
      for (int k = 0; k < mL; ++k) gin[w.lower_in[k]] = li[k];
      for (int k : upper_global_inputs) gin[w.upper_in[k]] = ui[k];
      for (int k = 0; k < nU; ++k) gout[w.upper_out[k]] = uo[k];
      for (int a : lower_global_outputs) gout[w.lower_out[a]] = lo[a];
      for (int i = 0; i < w.inputs; ++i) deg_in[i] = degrees_[gin[i]];
      for (int a = 0; a < nL; ++a) deg_mid[a] = degrees_[lo[a]];
      for (std::size_t r = 0; r < upper_global_inputs.size(); ++r) deg_mid[nL + r] = degrees_[ui[upper_global_inputs[r]]];
      for (int k = 0; k < nU; ++k) deg_out[k] = degrees_[uo[k]];
      for (std::size_t r = 0; r < lower_global_outputs.size(); ++r) deg_out[nU + r] = degrees_[lo[lower_global_outputs[r]]];
      int s = koszul_sign(deg_in, in_target) * koszul_sign(deg_mid, mid_target) * koszul_sign(deg_out, out_target);
      Rational c = lc * uc;
      b.add(encode(gout, gin), s > 0 ? c : Rational(-c));
    }
  }
  return {w.inputs, w.outputs, b.finalize()};
}

}  // namespace deforma
