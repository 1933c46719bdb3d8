#pragma once

#include "deforma/exactalg/rational.hpp"

#include <string>
#include <vector>

namespace deforma {

/// Action of Sigma_m x Sigma_n on the one-dimensional span of a generator.
/// `Regular` means no identification at all: the generator spans a free
/// module (the regular representation).
enum class Symmetry { Trivial, Sign, Regular };

struct Generator {
  std::string name;
  int inputs = 0;   // m
  int outputs = 0;  // n
  int degree = 0;
  Symmetry symmetry = Symmetry::Regular;

  int biarity_total() const { return inputs + outputs; }
  bool operator==(const Generator&) const = default;
};

/// One two-vertex graph: `lower` feeds `upper` through `edges`
/// (lower output slot -> upper input slot, 0-based). The free inputs are the
/// lower inputs followed by the unused upper inputs, in slot order;
/// `input_labels[k]` is the global label of the k-th free input. Outputs are
/// listed the same way: unused lower outputs, then upper outputs.
struct RelationTerm {
  Rational coefficient;
  int lower = -1;
  int upper = -1;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> input_labels;   // 0-based global labels
  std::vector<int> output_labels;  // 0-based global labels
  bool operator==(const RelationTerm&) const = default;
};

struct Relation {
  std::string name;
  std::vector<RelationTerm> terms;
  bool operator==(const Relation&) const = default;
};

enum class PresentationKind { Operad, Properad };

struct Presentation {
  std::string name;
  PresentationKind kind = PresentationKind::Operad;
  std::vector<Generator> generators;
  std::vector<Relation> relations;
  int max_genus = 0;

  int generator_index(const std::string& name) const;  // -1 if absent
  bool operator==(const Presentation&) const = default;
};

/// Biarity (inputs, outputs) and genus of a relation term; throws on malformed terms.
struct TermShape {
  int inputs, outputs, genus;
};
TermShape term_shape(const Presentation& p, const RelationTerm& t);

/// Parses the presentation DSL. A bare built-in name (`assoc`, `lie`, `frob`,
/// `bilie`, `bilie-diamond`) loads the bundled presentation.
Presentation parse_presentation(const std::string& text);
std::string format_presentation(const Presentation& p);

std::vector<std::string> builtin_names();
Presentation builtin_presentation(const std::string& name);
bool is_builtin(const std::string& name);

}  // namespace deforma
