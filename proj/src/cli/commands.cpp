#include "deforma/cli/commands.hpp"

#include "deforma/convolution/convolution.hpp"
#include "deforma/deform/ce.hpp"
#include "deforma/deform/deform.hpp"
#include "deforma/deform/oracles.hpp"
#include "deforma/exactalg/text.hpp"
#include "deforma/graphcal/koszul.hpp"
#include "deforma/presentations/components.hpp"

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

namespace deforma::cli {

namespace fs = std::filesystem;

namespace {

std::string str(const Rational& q) { return q.get_str(); }
std::string str(std::size_t v) { return std::to_string(v); }
std::string str(int v) { return std::to_string(v); }

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Validation, "FileNotFound", "cannot read `" + path + "`");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// FNV-1a, 64 bit.
std::string digest(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << "fnv1a64:" << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

struct Input {
  std::string text;
  std::string digest;
};

Input read_input(const std::string& path) {
  Input in{read_text(path), ""};
  in.digest = digest(in.text);
  return in;
}

struct LoadedPresentation {
  Presentation p;
  std::string digest;
};

// A readable file wins over a built-in of the same name.
LoadedPresentation load_presentation(const std::string& arg) {
  if (fs::is_regular_file(arg)) {
    auto in = read_input(arg);
    return {parse_presentation(in.text), in.digest};
  }
  if (is_builtin(arg)) return {builtin_presentation(arg), "builtin:" + arg};
  throw Error(ErrorKind::Validation, "FileNotFound", "no presentation file or built-in named `" + arg + "`");
}

struct Stamp {
  int W = 0, N = 0, G = 0;
  std::string modulus = "none";
  json to_json() const {
    return {{"max_weight", str(W)}, {"max_biarity", str(N)}, {"max_genus", str(G)}, {"modulus", modulus}};
  }
};

Stamp resolve(const Options& o, int default_w, int default_n, int default_g) {
  Stamp s;
  s.W = o.max_weight.value_or(default_w);
  s.N = o.max_biarity.value_or(default_n);
  s.G = o.max_genus.value_or(default_g);
  if (s.W < 1 || s.N < 1 || s.G < 0)
    throw Error(ErrorKind::Validation, "BadTruncation", "truncation parameters must be positive");
  if (o.modulus) {
    ArtinianScalars::from_modulus(*o.modulus);
    s.modulus = *o.modulus;
  }
  return s;
}

json envelope(const std::string& command, json inputs, const Stamp& stamp, json result) {
  return {{"tool", "deforma"},   {"version", kVersion},         {"command", command}, {"inputs", std::move(inputs)},
          {"truncation", stamp.to_json()}, {"result", std::move(result)}, {"status", "ok"}};
}

const char* symmetry_name(Symmetry s) {
  switch (s) {
    case Symmetry::Trivial: return "trivial";
    case Symmetry::Sign: return "sign";
    default: return "regular";
  }
}

json vector_json(const SparseVector& v, const std::vector<std::string>& labels) {
  json out = json::object();
  for (auto& [i, c] : v.entries()) out[labels.at(i)] = str(c);
  return out;
}

json betti_json(const std::map<int, std::size_t>& betti) {
  json out = json::object();
  for (auto& [d, b] : betti) out[str(d)] = str(b);
  return out;
}

StructureMaps load_structure(const std::string& path, const Presentation& p, const EndoProperad& e, json& inputs,
                             const std::string& key) {
  auto in = read_input(path);
  inputs[key] = in.digest;
  return parse_structure_maps(in.text, p, e);
}

SparseVector element_in(const LInftyAlgebra& g, const std::string& text) {
  VectorBuilder b;
  for (auto& [c, label, power] : parse_element_terms(text)) {
    if (power != 0) throw Error(ErrorKind::Validation, "UnexpectedPower", "element of g cannot carry t^" + str(power));
    int i = g.index_of(label);
    b.add(i, c);
  }
  return b.finalize();
}

SparseVector element_in(const ExtendedAlgebra& ext, const LInftyAlgebra& base, const std::string& text) {
  VectorBuilder b;
  for (auto& [c, label, power] : parse_element_terms(text)) b.add(ext.index(base.index_of(label), power), c);
  return b.finalize();
}

void require_mc(const ConvolutionAlgebra& conv, const SparseVector& phi, const std::vector<Tensor>& tensors) {
  SparseVector res = conv.mc_residual(phi);
  if (res.empty()) return;
  auto failing = first_failing_relation(conv.presentation(), conv.endo(), tensors);
  json details = {{"failing_relation", failing.value_or("")}, {"residual_support", str(res.size())}};
  throw ReportedError(ErrorKind::Mathematical, "NotMaurerCartan",
                      "structure maps fail relation `" + failing.value_or("?") + "`", details);
}

json homotopy_json(const HomotopyGroups& hg) {
  json rows = json::array();
  for (auto& [n, dim] : hg.pi) {
    json row = {{"n", str(n)}, {"label", "pi_" + str(n + 1)}, {"cohomology_degree", str(-n)}, {"dim", str(dim)}};
    if (auto it = hg.stable.find(n); it != hg.stable.end()) row["stable"] = it->second;
    rows.push_back(row);
  }
  return rows;
}

// Dense product constants from a structure file, parsed on its own so the
// oracle shares no code with the graph and convolution pipeline.
DenseProduct dense_from_structure(const std::string& text, const CochainComplex& x) {
  const auto& comps = x.space().components();
  if (comps.size() != 1 || comps.begin()->first != 0)
    throw Error(ErrorKind::Validation, "GradedAlgebra", "oracles need an algebra concentrated in degree 0");
  const auto& labels = comps.begin()->second;
  const std::size_t n = labels.size();
  auto index = [&](const std::string& l) {
    for (std::size_t i = 0; i < n; ++i)
      if (labels[i] == l) return i;
    throw Error(ErrorKind::Validation, "UnknownLabel", "unknown basis label `" + l + "`");
  };
  if (!x.differentials().empty())
    for (auto& [deg, m] : x.differentials())
      if (!m.is_zero()) throw Error(ErrorKind::Validation, "NonzeroDifferential", "oracles need d = 0");
  DenseProduct mu(n, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n)));
  static const std::regex header(R"(^struct\s+\S+\s+on\s+\S+$)");
  static const std::regex entry(R"(^map\s+[^:\s]+\s*:\s*\[\s*([^\],\s]+)\s*\]\s*<-\s*\[\s*([^\],\s]+)\s*,\s*([^\],\s]+)\s*\]\s*=\s*(\S+)$)");
  LineReader reader(text);
  bool have_header = false;
  while (auto line = reader.next()) {
    std::smatch m;
    if (!have_header) {
      if (!std::regex_match(line->text, m, header)) throw syntax_error(*line, "expected `struct <name> on <complex>`");
      have_header = true;
      continue;
    }
    if (!std::regex_match(line->text, m, entry)) throw syntax_error(*line, "expected a binary map entry");
    mu[index(m[1])][index(m[2])][index(m[3])] += parse_rational(std::string(m[4]));
  }
  return mu;
}

}  // namespace

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Validation: return 2;
    case ErrorKind::Mathematical: return 3;
    case ErrorKind::Truncation: return 4;
  }
  return 2;
}

json error_report(const Error& e) {
  const char* kind = e.kind() == ErrorKind::Validation ? "validation"
                     : e.kind() == ErrorKind::Mathematical ? "mathematical"
                                                            : "truncation";
  json err = {{"kind", kind}, {"code", e.code()}, {"message", e.what()}};
  if (auto* r = dynamic_cast<const ReportedError*>(&e)) err["details"] = r->details();
  return {{"tool", "deforma"}, {"version", kVersion}, {"status", "error"}, {"error", err}};
}

std::pair<int, int> parse_degree_range(const std::string& text) {
  static const std::regex re(R"(^(-?[0-9]+)\.\.(-?[0-9]+)$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw Error(ErrorKind::Validation, "BadRange", "degrees must look like a..b");
  int a = std::stoi(m[1]), b = std::stoi(m[2]);
  if (a > b) throw Error(ErrorKind::Validation, "BadRange", "empty degree range");
  return {a, b};
}

std::string JobFile::get(const std::string& key) const {
  auto it = values.find(key);
  if (it == values.end()) throw Error(ErrorKind::Validation, "MissingKey", "job file lacks `" + key + "=`");
  return it->second;
}

std::string JobFile::path(const std::string& key) const {
  fs::path p(get(key));
  return p.is_absolute() ? p.string() : (fs::path(directory) / p).string();
}

JobFile parse_job_file(const std::string& path) {
  JobFile job;
  job.directory = fs::path(path).parent_path().string();
  LineReader reader(read_text(path));
  while (auto line = reader.next()) {
    auto eq = line->text.find('=');
    if (eq == std::string::npos) throw syntax_error(*line, "expected key=value");
    std::string key = trim(line->text.substr(0, eq)), value = trim(line->text.substr(eq + 1));
    if (key.empty()) throw syntax_error(*line, "empty key");
    if (job.values.count(key)) throw syntax_error(*line, "duplicate key `" + key + "`");
    job.values[key] = value;
  }
  return job;
}

std::vector<std::tuple<Rational, std::string, int>> parse_element_terms(const std::string& text) {
  static const std::regex term(R"(^([^*\s]+)\*([^*\s]+)(?:\*t\^([0-9]+))?$)");
  std::vector<std::tuple<Rational, std::string, int>> out;
  std::string t = trim(text);
  if (t.empty() || t == "0") return out;
  std::stringstream ss(t);
  std::string piece;
  while (std::getline(ss, piece, '+')) {
    piece = trim(piece);
    std::smatch m;
    if (!std::regex_match(piece, m, term))
      throw Error(ErrorKind::Validation, "SyntaxError", "bad element term `" + piece + "` (expected c*label or c*label*t^p)");
    out.emplace_back(parse_rational(std::string(m[1])), std::string(m[2]), m[3].matched ? std::stoi(m[3]) : 0);
  }
  return out;
}

json cmd_check(const std::string& presentation, const Options& o) {
  auto [p, dg] = load_presentation(presentation);
  Stamp s = resolve(o, 2, 4, p.max_genus);
  json gens = json::array();
  for (const auto& g : p.generators)
    gens.push_back({{"name", g.name},
                    {"inputs", str(g.inputs)},
                    {"outputs", str(g.outputs)},
                    {"degree", str(g.degree)},
                    {"symmetry", symmetry_name(g.symmetry)}});
  json rels = json::array();
  for (const auto& r : p.relations) {
    auto shape = term_shape(p, r.terms.front());
    rels.push_back({{"name", r.name},
                    {"terms", str(r.terms.size())},
                    {"inputs", str(shape.inputs)},
                    {"outputs", str(shape.outputs)},
                    {"genus", str(shape.genus)}});
  }
  json dims = json::array();
  int G = p.kind == PresentationKind::Operad ? 0 : s.G;
  for (int w = 1; w <= s.W; ++w)
    for (int total = 2; total <= s.N; ++total)
      for (int n = 1; n < total; ++n) {
        int m = total - n;
        if (p.kind == PresentationKind::Operad && n != 1) continue;
        auto free = free_component(p.generators, m, n, w, G);
        if (free.dim() == 0) continue;
        auto q = quotient_component(p, m, n, w, G);
        dims.push_back({{"m", str(m)}, {"n", str(n)}, {"w", str(w)}, {"free", str(free.dim())}, {"quotient", str(q.dim())}});
      }
  json result = {{"name", p.name},
                 {"kind", p.kind == PresentationKind::Operad ? "operad" : "properad"},
                 {"generators", gens},
                 {"relations", rels},
                 {"relation_families", str(p.relations.size())},
                 {"dimensions", dims}};
  return envelope("check", {{"presentation", dg}}, s, result);
}

json cmd_component(const std::string& presentation, int m, int n, int w, const Options& o) {
  auto [p, dg] = load_presentation(presentation);
  Stamp s = resolve(o, w, m + n, p.max_genus);
  if (m < 1 || n < 1 || w < 1) throw Error(ErrorKind::Validation, "BadBiarity", "m, n and w must be positive");
  int G = p.kind == PresentationKind::Operad ? 0 : s.G;
  auto free = free_component(p.generators, m, n, w, G);
  auto q = quotient_component(p, m, n, w, G);
  auto k = koszul_dual_component(p, m, n, w, G);
  json result = {{"m", str(m)},
                 {"n", str(n)},
                 {"w", str(w)},
                 {"genus_bound", str(G)},
                 {"free", str(free.dim())},
                 {"quotient", str(q.dim())},
                 {"koszul_dual", str(k.dim())}};
  return envelope("component", {{"presentation", dg}}, s, result);
}

json cmd_koszul(const std::string& presentation, const Options& o) {
  auto [p, dg] = load_presentation(presentation);
  Stamp s = resolve(o, 3, 4, p.max_genus);
  int G = p.kind == PresentationKind::Operad ? 0 : s.G;
  json rows = json::array();
  for (int w = 1; w <= s.W; ++w)
    for (int total = 2; total <= s.N; ++total)
      for (int n = 1; n < total; ++n) {
        int m = total - n;
        if (p.kind == PresentationKind::Operad && n != 1) continue;
        auto k = koszul_dual_component(p, m, n, w, G);
        if (k.dim() == 0) continue;
        rows.push_back({{"m", str(m)}, {"n", str(n)}, {"w", str(w)}, {"dim", str(k.dim())}, {"suspensions", str(k.shift)}});
      }
  return envelope("koszul", {{"presentation", dg}}, s, {{"components", rows}});
}

json cmd_defcomplex(const std::string& presentation, const std::string& complex, const std::string& structure,
                    const Options& o) {
  auto [p, dg] = load_presentation(presentation);
  Stamp s = resolve(o, 3, 5, p.max_genus);
  json inputs = {{"presentation", dg}};
  auto cx = read_input(complex);
  inputs["complex"] = cx.digest;
  ConvolutionAlgebra conv(p, parse_complex(cx.text), Truncation{s.W, s.N, s.G});
  json table = json::array();
  std::map<int, std::size_t> per_degree;
  for (auto& [k, v] : conv.dimension_table()) {
    auto [m, n, w, deg] = k;
    table.push_back({{"m", str(m)}, {"n", str(n)}, {"w", str(w)}, {"degree", str(deg)}, {"dim", str(v)}});
    per_degree[deg] += v;
  }
  json result = {{"dimension", str(conv.dim())}, {"components", table}, {"per_degree", betti_json(per_degree)}};
  if (!structure.empty()) {
    auto sm = load_structure(structure, p, conv.endo(), inputs, "structure");
    auto phi = structure_to_mc(conv, sm);
    auto dc = deformation_complex(conv, phi);
    result["twisted"] = {{"curved", dc.curved}, {"curvature_support", str(dc.curvature.size())}};
  }
  return envelope("defcomplex", inputs, s, result);
}

json cmd_cohomology(const std::string& presentation, const std::string& complex, const std::string& structure,
                    const Options& o) {
  auto [p, dg] = load_presentation(presentation);
  auto [lo, hi] = o.degrees.value_or(std::pair<int, int>{-3, 3});
  int w = std::max(2, hi + 1);
  Stamp s = resolve(o, w, (o.max_weight ? *o.max_weight : w) + 2, p.max_genus);
  json inputs = {{"presentation", dg}};
  auto cx = read_input(complex);
  inputs["complex"] = cx.digest;
  CochainComplex x = parse_complex(cx.text);
  ConvolutionAlgebra conv(p, x, Truncation{s.W, s.N, s.G});
  auto sm = load_structure(structure, p, conv.endo(), inputs, "structure");
  auto phi = structure_to_mc(conv, sm);
  require_mc(conv, phi, sm.tensors);
  auto hg = moduli_homotopy_groups(conv, phi, -hi, -lo);
  ConvolutionAlgebra larger(p, x, Truncation{s.W + 1, s.N + 1, s.G});
  auto hg2 = moduli_homotopy_groups(larger, structure_to_mc(larger, sm), -hi, -lo);
  compare_truncations(hg, hg2);
  std::map<int, std::size_t> betti;
  for (auto& [n, v] : hg.pi) betti[-n] = v;
  bool all_stable = std::all_of(hg.stable.begin(), hg.stable.end(), [](auto& kv) { return kv.second; });
  json result = {{"homotopy", homotopy_json(hg)},
                 {"betti", betti_json(betti)},
                 {"degrees", {str(lo), str(hi)}},
                 {"shift", "0"},
                 {"stable", all_stable},
                 {"stability_truncation", {{"max_weight", str(s.W + 1)}, {"max_biarity", str(s.N + 1)}}}};
  return envelope("cohomology", inputs, s, result);
}

json cmd_deform(const std::string& job_path, const Options& o) {
  JobFile job = parse_job_file(job_path);
  json inputs = {{"job", digest(read_text(job_path))}};
  int order = std::stoi(job.get("order"));
  if (order < 1) throw Error(ErrorKind::Validation, "BadOrder", "order must be at least 1");
  std::string modulus = job.has("modulus") ? job.get("modulus") : o.modulus.value_or("t^" + str(order + 1));
  ArtinianScalars R = ArtinianScalars::from_modulus(modulus);
  if (order > R.n)
    throw Error(ErrorKind::Validation, "OrderExceedsModulus",
                "order " + str(order) + " needs modulus t^" + str(order + 1) + " or higher, got " + modulus);
  Options local = o;
  local.modulus = modulus;
  if (job.has("max_weight")) local.max_weight = std::stoi(job.get("max_weight"));
  if (job.has("max_biarity")) local.max_biarity = std::stoi(job.get("max_biarity"));
  if (job.has("max_genus")) local.max_genus = std::stoi(job.get("max_genus"));

  LInftyAlgebra g;
  SparseVector phi, psi;
  Stamp s;
  std::optional<ConvolutionAlgebra> conv;
  if (job.has("linfty")) {
    s = resolve(local, 1, 1, 0);
    auto in = read_input(job.path("linfty"));
    inputs["linfty"] = in.digest;
    g = parse_linfty(in.text);
    if (job.has("base_element")) phi = element_in(g, job.get("base_element"));
    psi = element_in(g, job.get("direction_element"));
  } else {
    auto pres = job.get("presentation");
    auto [p, dg] = load_presentation(fs::is_regular_file(job.path("presentation")) ? job.path("presentation") : pres);
    inputs["presentation"] = dg;
    s = resolve(local, 2, 4, p.max_genus);
    auto cx = read_input(job.path("complex"));
    inputs["complex"] = cx.digest;
    conv.emplace(p, parse_complex(cx.text), Truncation{s.W, s.N, s.G});
    auto base = load_structure(job.path("base"), p, conv->endo(), inputs, "base");
    auto dir = load_structure(job.path("direction"), p, conv->endo(), inputs, "direction");
    phi = structure_to_mc(*conv, base);
    require_mc(*conv, phi, base.tensors);
    psi = structure_to_mc(*conv, dir);
    g = conv->algebra();
  }
  auto problem = make_problem(g, phi);
  auto run = lift_to_order(problem, psi, order);
  validate_state(problem, run.state);

  json corrections = json::array();
  for (int i = 0; i < run.state.order(); ++i)
    corrections.push_back({{"order", str(i + 1)}, {"coefficients", vector_json(run.state.corrections[i], g.labels)}});
  DeformationState prev = run.state;
  SparseVector last = prev.corrections.back();
  prev.corrections.pop_back();
  auto par = lift_set_parametrize(problem, prev, last);
  json result = {{"order_requested", str(order)},
                 {"order_reached", str(run.state.order())},
                 {"lifted", !run.obstruction.has_value()},
                 {"corrections", corrections},
                 {"mc_verified_mod", "t^" + str(run.state.order() + 1)},
                 {"torsor",
                  {{"cocycles", str(par.cocycles.size())},
                   {"coboundaries", str(par.coboundaries.size())},
                   {"dimension", str(par.parameters())}}}};
  if (run.obstruction) {
    const auto& ob = *run.obstruction;
    result["obstruction"] = {{"order", str(ob.order)},
                             {"representative", vector_json(ob.representative, g.labels)},
                             {"rank_boundaries", str(ob.rank_boundaries)},
                             {"rank_with_class", str(ob.rank_with_class)},
                             {"nonzero", ob.nonzero()}};
  }
  return envelope("deform", inputs, s, result);
}

json cmd_gauge(const std::string& job_path, const Options& o) {
  JobFile job = parse_job_file(job_path);
  json inputs = {{"job", digest(read_text(job_path))}};
  auto in = read_input(job.path("linfty"));
  inputs["linfty"] = in.digest;
  LInftyAlgebra g = parse_linfty(in.text);
  Options local = o;
  if (job.has("modulus")) local.modulus = job.get("modulus");
  if (!local.modulus) throw Error(ErrorKind::Validation, "MissingKey", "gauge needs a modulus");
  Stamp s = resolve(local, 1, 1, 0);
  if (job.has("base_element")) {
    g = twist(g, element_in(g, job.get("base_element")));
    if (g.curved) throw Error(ErrorKind::Mathematical, "NotMaurerCartan", "base element is not MC");
  }
  auto ext = extend_scalars(g, ArtinianScalars::from_modulus(*local.modulus));
  auto tau1 = element_in(ext, g, job.get("tau1"));
  auto tau2 = element_in(ext, g, job.get("tau2"));
  auto r = gauge_equivalent(ext, tau1, tau2);
  json result = {{"equivalent", r.equivalent}, {"lambda", vector_json(r.lambda, ext.algebra.labels)}};
  if (!r.equivalent)
    result["failure"] = {{"order", str(r.failed_order)}, {"residual", vector_json(r.residual, g.labels)}};
  return envelope("gauge", inputs, s, result);
}

json cmd_ce(const std::string& linfty, const Options& o) {
  auto in = read_input(linfty);
  LInftyAlgebra g = parse_linfty(in.text);
  Stamp s = resolve(o, 1, 1, 0);
  auto ce = ce_algebra(g, o.max_word.value_or(0));
  if (auto defect = ce.square_defect()) {
    json details = {{"generator", ce.generators[defect->first]},
                    {"d_squared", format_polynomial(defect->second, ce.generators)}};
    if (auto v = check_linfty(g)) {
      json witness = json::array();
      for (int i : v->witness) witness.push_back(g.labels.at(i));
      details["jacobi_witness"] = {{"identity", v->identity}, {"arity", str(v->arity)}, {"inputs", witness}};
    }
    throw ReportedError(ErrorKind::Mathematical, "JacobiFailure", "d^2 != 0 on " + ce.generators[defect->first],
                        details);
  }
  json gens = json::array(), diff = json::object();
  for (std::size_t k = 0; k < ce.generators.size(); ++k) {
    gens.push_back({{"name", ce.generators[k]}, {"degree", str(ce.ring.degrees[k])}});
    diff[ce.generators[k]] = format_polynomial(ce.d[k], ce.generators);
  }
  json result = {{"generators", gens},
                 {"differential", diff},
                 {"max_word_length", str(ce.max_word_length)},
                 {"d_squared_zero", true}};
  if (o.degrees) result["betti"] = betti_json(cohomology(ce.complex(), o.degrees->first, o.degrees->second).betti);
  if (o.certificate) {
    std::string modulus = o.modulus.value_or("t^3");
    s.modulus = modulus;
    auto rep = mc_vs_ce_points(g, ArtinianScalars::from_modulus(modulus).n);
    result["certificate"] = {{"modulus", modulus},
                             {"variables", rep.variables},
                             {"mc_equations", rep.mc_equations},
                             {"ce_equations", rep.ce_equations},
                             {"equal", rep.equal}};
    if (!rep.equal)
      throw ReportedError(ErrorKind::Mathematical, "CertificateMismatch", "MC and CE systems differ",
                          result["certificate"]);
  }
  return envelope("ce", {{"linfty", in.digest}}, s, result);
}

json cmd_oracle(const std::string& kind, const std::string& complex, const std::string& structure, const Options& o) {
  auto cx = read_input(complex);
  auto st = read_input(structure);
  CochainComplex x = parse_complex(cx.text);
  DenseProduct mu = dense_from_structure(st.text, x);
  auto [lo, hi] = o.degrees.value_or(std::pair<int, int>{-3, 3});
  CohomologyReport rep;
  int min_arity = 0, max_arity = 0;
  Stamp s;
  if (kind == "hochschild") {
    s = resolve(o, std::max(1, hi + 1), hi + 3, 0);
    max_arity = s.N - 1;
    min_arity = o.min_arity.value_or(1);
    rep = hochschild_oracle(mu, lo, hi, max_arity, min_arity);
  } else if (kind == "ce" || kind == "ce-trivial") {
    s = resolve(o, 1, static_cast<int>(mu.size()) + 1, 0);
    bool adjoint = kind == "ce";
    min_arity = o.min_arity.value_or(adjoint ? 1 : 0);
    max_arity = static_cast<int>(mu.size());
    rep = ce_oracle(mu, adjoint ? CECoefficients::Adjoint : CECoefficients::Trivial, lo, hi, min_arity);
  } else {
    throw Error(ErrorKind::Validation, "UnknownOracle", "oracle kind must be hochschild, ce or ce-trivial");
  }
  json result = {{"oracle", kind},
                 {"fixture", x.name},
                 {"min_arity", str(min_arity)},
                 {"max_arity", str(max_arity)},
                 {"degrees", {str(lo), str(hi)}},
                 {"betti", betti_json(rep.betti)}};
  if (o.emit_golden) return result;
  return envelope("oracle", {{"complex", cx.digest}, {"structure", st.digest}}, s, result);
}

}  // namespace deforma::cli
