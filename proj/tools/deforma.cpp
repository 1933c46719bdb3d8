#include "deforma/cli/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace deforma;
using namespace deforma::cli;

namespace {

void emit(const json& report, const std::string& out) {
  std::string text = report.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw Error(ErrorKind::Validation, "FileNotWritable", "cannot write `" + out + "`");
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deformation complexes, Maurer-Cartan loci and homotopy groups of algebraic structures"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Options opts;
  std::string out, degrees;
  auto common = [&](CLI::App* c) {
    c->add_option("--max-weight", opts.max_weight, "Weight bound W");
    c->add_option("--max-biarity", opts.max_biarity, "Biarity bound N");
    c->add_option("--max-genus", opts.max_genus, "Genus bound G");
    c->add_option("--degrees", degrees, "Degree range a..b");
    c->add_option("--modulus", opts.modulus, "Artinian modulus t^k");
    c->add_option("--out", out, "Write the report here instead of stdout");
    c->add_flag("--emit-golden", opts.emit_golden, "Emit the golden-file payload");
  };

  std::string pres, complex, structure, job, linfty, kind;
  int m = 0, n = 0, w = 0;
  std::function<json()> run;

  auto* check = app.add_subcommand("check", "Parse and summarize a presentation");
  check->add_option("presentation", pres, "File or built-in name")->required();
  common(check);
  check->callback([&] { run = [&] { return cmd_check(pres, opts); }; });

  auto* component = app.add_subcommand("component", "Free, quotient and Koszul dual dimensions in one biarity");
  component->add_option("presentation", pres)->required();
  component->add_option("m", m, "Inputs")->required();
  component->add_option("n", n, "Outputs")->required();
  component->add_option("w", w, "Weight")->required();
  common(component);
  component->callback([&] { run = [&] { return cmd_component(pres, m, n, w, opts); }; });

  auto* koszul = app.add_subcommand("koszul", "Dimension table of the Koszul dual");
  koszul->add_option("presentation", pres)->required();
  common(koszul);
  koszul->callback([&] { run = [&] { return cmd_koszul(pres, opts); }; });

  auto* defcomplex = app.add_subcommand("defcomplex", "Convolution algebra dimensions (and twisting check)");
  defcomplex->add_option("presentation", pres)->required();
  defcomplex->add_option("complex", complex)->required();
  defcomplex->add_option("structure", structure);
  common(defcomplex);
  defcomplex->callback([&] { run = [&] { return cmd_defcomplex(pres, complex, structure, opts); }; });

  auto* coh = app.add_subcommand("cohomology", "Homotopy groups of the moduli space at a structure");
  coh->add_option("presentation", pres)->required();
  coh->add_option("complex", complex)->required();
  coh->add_option("structure", structure)->required();
  common(coh);
  coh->callback([&] { run = [&] { return cmd_cohomology(pres, complex, structure, opts); }; });

  auto* deform = app.add_subcommand("deform", "Order-by-order lifting from a job file");
  deform->add_option("job", job)->required();
  common(deform);
  deform->callback([&] { run = [&] { return cmd_deform(job, opts); }; });

  auto* gauge = app.add_subcommand("gauge", "Gauge equivalence of two MC elements from a job file");
  gauge->add_option("job", job)->required();
  common(gauge);
  gauge->callback([&] { run = [&] { return cmd_gauge(job, opts); }; });

  auto* ce = app.add_subcommand("ce", "Chevalley-Eilenberg algebra of an L-infinity algebra");
  ce->add_option("linfty", linfty)->required();
  ce->add_option("--max-word", opts.max_word, "Word-length truncation");
  ce->add_flag("--certificate", opts.certificate, "Compare MC and CE point systems");
  common(ce);
  ce->callback([&] { run = [&] { return cmd_ce(linfty, opts); }; });

  auto* oracle = app.add_subcommand("oracle", "Direct Hochschild or Chevalley-Eilenberg cohomology");
  oracle->add_option("kind", kind, "hochschild, ce or ce-trivial")->required();
  oracle->add_option("complex", complex)->required();
  oracle->add_option("structure", structure)->required();
  oracle->add_option("--min-arity", opts.min_arity, "Lowest cochain arity");
  common(oracle);
  oracle->callback([&] { run = [&] { return cmd_oracle(kind, complex, structure, opts); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  try {
    if (!degrees.empty()) opts.degrees = parse_degree_range(degrees);
    emit(run(), out);
    return 0;
  } catch (const Error& e) {
    std::cerr << error_report(e).dump(2) << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << error_report(Error(ErrorKind::Validation, "InvalidInput", e.what())).dump(2) << "\n";
    return 2;
  }
}
