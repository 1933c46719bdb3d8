#include "deforma/convolution/convolution.hpp"

#include "deforma/exactalg/text.hpp"

#include <regex>
#include <sstream>

namespace deforma {

namespace {

std::vector<std::string> split_labels(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

StructureMaps parse_structure_maps(const std::string& text, const Presentation& p, const EndoProperad& endo) {
  static const std::regex header(R"(^struct\s+(\S+)\s+on\s+(\S+)$)");
  static const std::regex entry(R"(^map\s+([^:\s]+)\s*:\s*\[([^\]]*)\]\s*<-\s*\[([^\]]*)\]\s*=\s*(\S+)$)");
  StructureMaps s;
  for (const auto& g : p.generators) s.tensors.push_back(Tensor{g.inputs, g.outputs, {}});
  std::vector<std::map<std::uint64_t, Rational>> acc(p.generators.size());
  LineReader reader(text);
  bool have_header = false;
  while (auto line = reader.next()) {
    std::smatch m;
    if (!have_header) {
      if (!std::regex_match(line->text, m, header)) throw syntax_error(*line, "expected `struct <presentation> on <complex>`");
      s.presentation = m[1];
      s.complex = m[2];
      if (s.presentation != p.name)
        throw Error(ErrorKind::Validation, "NameMismatch",
                    "structure maps are for `" + s.presentation + "`, not `" + p.name + "`");
      have_header = true;
      continue;
    }
    if (!std::regex_match(line->text, m, entry))
      throw syntax_error(*line, "expected `map <gen>: [outs] <- [ins] = p/q`");
    int gi = p.generator_index(m[1]);
    if (gi < 0) throw syntax_error(*line, "unknown generator `" + std::string(m[1]) + "`");
    const Generator& gen = p.generators[gi];
    auto outs_l = split_labels(m[2]), ins_l = split_labels(m[3]);
    if (static_cast<int>(outs_l.size()) != gen.outputs || static_cast<int>(ins_l.size()) != gen.inputs)
      throw Error(ErrorKind::Validation, "ShapeMismatch",
                  "line " + std::to_string(line->number) + ": generator `" + gen.name + "` takes " +
                      std::to_string(gen.inputs) + " inputs and " + std::to_string(gen.outputs) + " outputs");
    std::vector<int> outs, ins;
    for (auto& l : outs_l) outs.push_back(endo.index_of(l));
    for (auto& l : ins_l) ins.push_back(endo.index_of(l));
    Rational v;
    try {
      v = parse_rational(std::string(m[4]));
    } catch (const Error&) {
      throw syntax_error(*line, "coefficient must be an exact rational");
    }
    std::uint64_t key = endo.encode(outs, ins);
    if (acc[gi].count(key)) throw syntax_error(*line, "duplicate entry");
    acc[gi][key] = v;
  }
  if (!have_header) throw Error(ErrorKind::Validation, "SyntaxError", "empty structure map file");
  for (std::size_t gi = 0; gi < acc.size(); ++gi) {
    std::vector<SparseVector::Entry> entries(acc[gi].begin(), acc[gi].end());
    s.tensors[gi].entries = SparseVector(std::move(entries));
  }
  return s;
}

std::string format_structure_maps(const StructureMaps& s, const Presentation& p, const EndoProperad& endo) {
  std::ostringstream os;
  os << "struct " << p.name << " on " << (s.complex.empty() ? "X" : s.complex) << "\n";
  const auto& labels = endo.labels();
  for (std::size_t gi = 0; gi < p.generators.size(); ++gi) {
    const Generator& g = p.generators[gi];
    for (auto& [key, x] : s.tensors[gi].entries.entries()) {
      std::vector<int> outs, ins;
      endo.decode(key, g.inputs, g.outputs, outs, ins);
      os << "map " << g.name << ": [";
      for (std::size_t k = 0; k < outs.size(); ++k) os << (k ? ", " : "") << labels[outs[k]];
      os << "] <- [";
      for (std::size_t k = 0; k < ins.size(); ++k) os << (k ? ", " : "") << labels[ins[k]];
      os << "] = " << x.get_str() << "\n";
    }
  }
  return os.str();
}

Tensor relation_value(const Presentation& p, const EndoProperad& endo, const std::vector<Tensor>& tensors,
                      const Relation& r) {
  Tensor out;
  bool first = true;
  for (const auto& t : r.terms) {
    const Generator& lo = p.generators.at(t.lower);
    const Generator& up = p.generators.at(t.upper);
    Wiring w;
    w.inputs = static_cast<int>(t.input_labels.size());
    w.outputs = static_cast<int>(t.output_labels.size());
    std::vector<int> up_from(up.inputs, -1), lo_to(lo.outputs, -1);
    for (auto [o, i] : t.edges) {
      up_from[i] = o;
      lo_to[o] = i;
    }
    std::size_t k = 0;
    for (int i = 0; i < lo.inputs; ++i) w.lower_in.push_back(t.input_labels.at(k++));
    for (int i = 0; i < up.inputs; ++i) w.upper_in.push_back(up_from[i] >= 0 ? -(1 + up_from[i]) : t.input_labels.at(k++));
    k = 0;
    for (int j = 0; j < lo.outputs; ++j) w.lower_out.push_back(lo_to[j] >= 0 ? -(1 + lo_to[j]) : t.output_labels.at(k++));
    for (int j = 0; j < up.outputs; ++j) w.upper_out.push_back(t.output_labels.at(k++));
    Tensor v = endo.compose(tensors.at(t.upper), tensors.at(t.lower), w);
    if (first) {
      out = Tensor{v.inputs, v.outputs, {}};
      first = false;
    }
    out.entries.axpy(t.coefficient, v.entries);
  }
  return out;
}

std::optional<std::string> first_failing_relation(const Presentation& p, const EndoProperad& endo,
                                                  const std::vector<Tensor>& tensors) {
  for (const auto& r : p.relations)
    if (!relation_value(p, endo, tensors, r).entries.empty()) return r.name;
  return std::nullopt;
}

SparseVector structure_to_mc(const ConvolutionAlgebra& conv, const StructureMaps& s) {
  if (!s.presentation.empty() && s.presentation != conv.presentation().name)
    throw Error(ErrorKind::Validation, "NameMismatch",
                "structure maps are for `" + s.presentation + "`, not `" + conv.presentation().name + "`");
  return conv.from_generator_values(s.tensors);
}

DeformationComplex deformation_complex(const ConvolutionAlgebra& conv, const SparseVector& phi) {
  DeformationComplex out;
  out.curvature = conv.mc_residual(phi);
  out.curved = !out.curvature.empty();
  SparseMatrix d = conv.twisted_differential(phi);
  const auto& alg = conv.algebra();
  std::map<int, std::vector<std::size_t>> by_degree;
  for (std::size_t i = 0; i < conv.dim(); ++i) by_degree[alg.degrees[i]].push_back(i);
  GradedVectorSpace space;
  std::vector<std::pair<int, std::size_t>> position(conv.dim());
  for (auto& [deg, idx] : by_degree)
    for (std::size_t k = 0; k < idx.size(); ++k) {
      space.add(deg, alg.labels[idx[k]]);
      position[idx[k]] = {deg, k};
      out.basis_order.push_back(idx[k]);
    }
  out.complex = CochainComplex(space);
  out.complex.name = conv.presentation().name + "-deformation";
  std::map<int, SparseMatrix> blocks;
  for (auto& [deg, idx] : by_degree)
    if (by_degree.count(deg + 1)) blocks[deg] = SparseMatrix(by_degree[deg + 1].size(), idx.size());
  for (auto& [rc, x] : d.entries()) {
    auto [rdeg, r] = position[rc.first];
    auto [cdeg, c] = position[rc.second];
    if (rdeg != cdeg + 1)
      throw Error(ErrorKind::Mathematical, "DifferentialDegree", "twisted differential does not raise degree by one");
    blocks[cdeg].add(r, c, x);
  }
  for (auto& [deg, m] : blocks) out.complex.set_differential(deg, std::move(m));
  return out;
}

HomotopyGroups moduli_homotopy_groups(const ConvolutionAlgebra& conv, const SparseVector& phi, int n_min, int n_max,
                                      int shift) {
  if (n_min > n_max) throw Error(ErrorKind::Validation, "BadRange", "empty degree range");
  auto dc = deformation_complex(conv, phi);
  HomotopyGroups out;
  out.curved = dc.curved;
  if (dc.curved)
    throw Error(ErrorKind::Mathematical, "NotMaurerCartan", "the twisting element does not satisfy the MC equation");
  auto report = cohomology(dc.complex, -n_max - shift, -n_min - shift);
  for (int n = n_min; n <= n_max; ++n) out.pi[n] = report.betti.at(-n - shift);
  return out;
}

void compare_truncations(HomotopyGroups& base, const HomotopyGroups& larger) {
  for (auto& [n, v] : base.pi) {
    auto it = larger.pi.find(n);
    base.stable[n] = it != larger.pi.end() && it->second == v;
  }
}

}  // namespace deforma
