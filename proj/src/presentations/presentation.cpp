#include "deforma/presentations/presentation.hpp"

#include "deforma/exactalg/text.hpp"
#include "deforma/graphcal/graph.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>

namespace deforma {

int Presentation::generator_index(const std::string& n) const {
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i].name == n) return static_cast<int>(i);
  return -1;
}

TermShape term_shape(const Presentation& p, const RelationTerm& t) {
  const Generator& lo = p.generators.at(t.lower);
  const Generator& up = p.generators.at(t.upper);
  int e = static_cast<int>(t.edges.size());
  return {lo.inputs + up.inputs - e, lo.outputs + up.outputs - e, e - 1};
}

namespace {

const char* symmetry_name(Symmetry s) {
  switch (s) {
    case Symmetry::Trivial: return "trivial";
    case Symmetry::Sign: return "sign";
    case Symmetry::Regular: return "regular";
  }
  return "?";
}

Error validation(const std::string& code, const Line& line, const std::string& msg) {
  return Error(ErrorKind::Validation, code, "line " + std::to_string(line.number) + ": " + msg);
}

// Cursor over the right-hand side of a `rel` line; columns are 1-based in the line.
class RelParser {
public:
  RelParser(const Line& line, std::size_t start, const Presentation& p) : line_(line), pos_(start), p_(p) {}

  std::vector<RelationTerm> parse() {
    std::vector<RelationTerm> terms;
    bool first = true;
    while (true) {
      skip();
      if (pos_ >= s().size()) break;
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        throw syntax_error(line_, "expected '+' or '-' between terms", pos_ + 1);
      }
      terms.push_back(term(sign));
      first = false;
    }
    if (terms.empty()) throw syntax_error(line_, "relation has no terms", pos_ + 1);
    return terms;
  }

private:
  const std::string& s() const { return line_.text; }
  char peek() const { return pos_ < s().size() ? s()[pos_] : '\0'; }
  void skip() {
    while (pos_ < s().size() && std::isspace(static_cast<unsigned char>(s()[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip();
    if (peek() != c) throw syntax_error(line_, std::string("expected '") + c + "'", pos_ + 1);
    ++pos_;
  }
  std::string word() {
    skip();
    std::size_t b = pos_;
    while (pos_ < s().size() && (std::isalnum(static_cast<unsigned char>(s()[pos_])) || s()[pos_] == '_' || s()[pos_] == '-'))
      ++pos_;
    if (b == pos_) throw syntax_error(line_, "expected a name", pos_ + 1);
    return s().substr(b, pos_ - b);
  }
  int integer() {
    skip();
    std::size_t b = pos_;
    while (pos_ < s().size() && std::isdigit(static_cast<unsigned char>(s()[pos_]))) ++pos_;
    if (b == pos_) throw syntax_error(line_, "expected an integer", pos_ + 1);
    return std::stoi(s().substr(b, pos_ - b));
  }
  std::vector<int> int_list() {
    expect('[');
    std::vector<int> out;
    skip();
    if (peek() == ']') {
      ++pos_;
      return out;
    }
    while (true) {
      out.push_back(integer());
      skip();
      if (peek() == ']') {
        ++pos_;
        return out;
      }
      expect(',');
    }
  }
  std::vector<std::pair<int, int>> edge_list() {
    expect('[');
    std::vector<std::pair<int, int>> out;
    skip();
    if (peek() == ']') {
      ++pos_;
      return out;
    }
    while (true) {
      expect('(');
      int o = integer();
      expect(',');
      int i = integer();
      expect(')');
      out.emplace_back(o, i);
      skip();
      if (peek() == ']') {
        ++pos_;
        return out;
      }
      expect(',');
    }
  }

  RelationTerm term(int sign) {
    skip();
    std::size_t b = pos_;
    while (pos_ < s().size() && s()[pos_] != '*' && !std::isspace(static_cast<unsigned char>(s()[pos_]))) ++pos_;
    std::size_t coeff_col = b + 1;
    RelationTerm t;
    try {
      t.coefficient = parse_rational(s().substr(b, pos_ - b)) * sign;
    } catch (const Error&) {
      throw syntax_error(line_, "bad coefficient '" + s().substr(b, pos_ - b) + "'", coeff_col);
    }
    expect('*');
    std::size_t term_col = pos_ + 1;
    if (word() != "term") throw syntax_error(line_, "expected `term(`", term_col);
    expect('(');
    std::map<std::string, bool> seen;
    std::string lower, upper;
    bool have_edges = false;
    std::vector<int> ins, outs;
    while (true) {
      std::size_t key_col = pos_ + 1;
      std::string key = word();
      expect('=');
      if (seen[key]) throw syntax_error(line_, "duplicate key '" + key + "'", key_col);
      seen[key] = true;
      if (key == "lower") lower = word();
      else if (key == "upper") upper = word();
      else if (key == "edges") {
        t.edges = edge_list();
        have_edges = true;
      } else if (key == "in") ins = int_list();
      else if (key == "out") outs = int_list();
      else throw syntax_error(line_, "unknown key '" + key + "'", key_col);
      skip();
      if (peek() == ')') {
        ++pos_;
        break;
      }
      expect(',');
    }
    if (lower.empty()) throw syntax_error(line_, "term needs lower=", term_col);
    if (upper.empty() || !have_edges || t.edges.empty())
      throw validation("NonQuadraticRelation", line_, "every term must join two generators along at least one edge");
    t.lower = p_.generator_index(lower);
    t.upper = p_.generator_index(upper);
    if (t.lower < 0) throw validation("UnknownGenerator", line_, "unknown generator '" + lower + "'");
    if (t.upper < 0) throw validation("UnknownGenerator", line_, "unknown generator '" + upper + "'");
    for (auto& [o, i] : t.edges) {
      --o;
      --i;
    }
    for (int x : ins) t.input_labels.push_back(x - 1);
    for (int x : outs) t.output_labels.push_back(x - 1);
    return t;
  }

  const Line& line_;
  std::size_t pos_;
  const Presentation& p_;
};

bool is_permutation_of_range(const std::vector<int>& v) {
  std::vector<int> s = v;
  std::sort(s.begin(), s.end());
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] != static_cast<int>(i)) return false;
  return true;
}

void check_term(const Presentation& p, const RelationTerm& t, const Line& line) {
  const Generator& lo = p.generators[t.lower];
  const Generator& up = p.generators[t.upper];
  std::vector<char> used_o(lo.outputs, 0), used_i(up.inputs, 0);
  for (auto [o, i] : t.edges) {
    if (o < 0 || o >= lo.outputs || i < 0 || i >= up.inputs)
      throw validation("EdgeOutOfRange", line, "edge index out of range");
    if (used_o[o]++ || used_i[i]++) throw validation("EdgeOutOfRange", line, "slot used by two edges");
  }
  TermShape sh = term_shape(p, t);
  if (static_cast<int>(t.input_labels.size()) != sh.inputs || !is_permutation_of_range(t.input_labels))
    throw validation("BadLegLabeling", line, "in=[...] must be a permutation of 1.." + std::to_string(sh.inputs));
  if (static_cast<int>(t.output_labels.size()) != sh.outputs || !is_permutation_of_range(t.output_labels))
    throw validation("BadLegLabeling", line, "out=[...] must be a permutation of 1.." + std::to_string(sh.outputs));
  if (p.kind == PresentationKind::Operad && sh.genus != 0)
    throw validation("GenusInOperad", line, "operad relations must be trees");
}

Symmetry parse_symmetry(const Line& line, const std::string& s) {
  if (s == "trivial") return Symmetry::Trivial;
  if (s == "sign") return Symmetry::Sign;
  if (s == "regular") return Symmetry::Regular;
  throw validation("BadSymmetry", line, "symmetry must be trivial, sign or regular (got '" + s + "')");
}

const std::map<std::string, std::string>& builtin_texts() {
  static const std::map<std::string, std::string> texts = {
      {"assoc", R"(operad assoc
gen m : in=2 out=1 deg=0 sym=regular
rel assoc = 1*term(lower=m, upper=m, edges=[(1,1)], in=[1,2,3], out=[1]) - 1*term(lower=m, upper=m, edges=[(1,2)], in=[2,3,1], out=[1])
)"},
      {"lie", R"(operad lie
gen b : in=2 out=1 deg=0 sym=sign
rel jacobi = 1*term(lower=b, upper=b, edges=[(1,1)], in=[1,2,3], out=[1]) + 1*term(lower=b, upper=b, edges=[(1,1)], in=[2,3,1], out=[1]) + 1*term(lower=b, upper=b, edges=[(1,1)], in=[3,1,2], out=[1])
)"},
      {"frob", R"(properad frob
gen m : in=2 out=1 deg=0 sym=trivial
gen c : in=1 out=2 deg=0 sym=trivial
rel assoc = 1*term(lower=m, upper=m, edges=[(1,1)], in=[1,2,3], out=[1]) - 1*term(lower=m, upper=m, edges=[(1,2)], in=[2,3,1], out=[1])
rel coassoc = 1*term(lower=c, upper=c, edges=[(1,1)], in=[1], out=[3,1,2]) - 1*term(lower=c, upper=c, edges=[(2,1)], in=[1], out=[1,2,3])
rel frob_left = 1*term(lower=m, upper=c, edges=[(1,1)], in=[1,2], out=[1,2]) - 1*term(lower=c, upper=m, edges=[(1,2)], in=[2,1], out=[2,1])
rel frob_right = 1*term(lower=m, upper=c, edges=[(1,1)], in=[1,2], out=[1,2]) - 1*term(lower=c, upper=m, edges=[(2,1)], in=[1,2], out=[1,2])
)"},
      {"bilie", R"(properad bilie
gen b : in=2 out=1 deg=0 sym=sign
gen c : in=1 out=2 deg=0 sym=sign
rel jacobi = 1*term(lower=b, upper=b, edges=[(1,1)], in=[1,2,3], out=[1]) + 1*term(lower=b, upper=b, edges=[(1,1)], in=[2,3,1], out=[1]) + 1*term(lower=b, upper=b, edges=[(1,1)], in=[3,1,2], out=[1])
rel cojacobi = 1*term(lower=c, upper=c, edges=[(1,1)], in=[1], out=[3,1,2]) + 1*term(lower=c, upper=c, edges=[(1,1)], in=[1], out=[1,2,3]) + 1*term(lower=c, upper=c, edges=[(1,1)], in=[1], out=[2,3,1])
rel cocycle = 1*term(lower=b, upper=c, edges=[(1,1)], in=[1,2], out=[1,2]) - 1*term(lower=c, upper=b, edges=[(1,2)], in=[2,1], out=[2,1]) + 1*term(lower=c, upper=b, edges=[(1,2)], in=[1,2], out=[2,1]) - 1*term(lower=c, upper=b, edges=[(2,1)], in=[1,2], out=[1,2]) + 1*term(lower=c, upper=b, edges=[(2,1)], in=[2,1], out=[1,2])
)"},
  };
  return texts;
}

}  // namespace

Presentation parse_presentation(const std::string& text) {
  std::string bare = trim(text);
  if (is_builtin(bare)) return builtin_presentation(bare);

  Presentation p;
  bool have_header = false;
  bool have_genus = false;
  LineReader reader(text);
  std::vector<Line> rel_lines;
  while (auto line = reader.next()) {
    // continuation of the previous relation
    if ((line->text[0] == '+' || line->text[0] == '-') && !rel_lines.empty()) {
      rel_lines.back().text += " " + line->text;
      continue;
    }
    auto tok = split_ws(line->text);
    if (tok[0] == "operad" || tok[0] == "properad") {
      if (have_header) throw syntax_error(*line, "duplicate header");
      if (tok.size() != 2) throw syntax_error(*line, "expected `" + tok[0] + " <name>`");
      p.kind = tok[0] == "operad" ? PresentationKind::Operad : PresentationKind::Properad;
      p.name = tok[1];
      have_header = true;
    } else if (tok[0] == "genus") {
      if (tok.size() != 2) throw syntax_error(*line, "expected `genus <G>`");
      p.max_genus = parse_int(tok[1]);
      have_genus = true;
    } else if (tok[0] == "gen") {
      if (!have_header) throw syntax_error(*line, "`gen` before header");
      if (tok.size() != 7 || tok[2] != ":")
        throw syntax_error(*line, "expected `gen <name> : in=<m> out=<n> deg=<d> sym=<trivial|sign|regular>`");
      Generator g;
      g.name = tok[1];
      g.inputs = parse_int(key_value(*line, tok[3], "in"));
      g.outputs = parse_int(key_value(*line, tok[4], "out"));
      g.degree = parse_int(key_value(*line, tok[5], "deg"));
      g.symmetry = parse_symmetry(*line, key_value(*line, tok[6], "sym"));
      if (g.inputs < 0 || g.outputs < 0 || g.inputs + g.outputs < 1)
        throw validation("BadBiarity", *line, "generator needs m + n >= 1");
      if (p.kind == PresentationKind::Operad && g.outputs != 1)
        throw validation("BadBiarity", *line, "operad generators have exactly one output");
      if (p.generator_index(g.name) >= 0) throw validation("DuplicateGenerator", *line, "generator '" + g.name + "' repeated");
      p.generators.push_back(g);
    } else if (tok[0] == "rel") {
      if (!have_header) throw syntax_error(*line, "`rel` before header");
      rel_lines.push_back(*line);
    } else {
      throw syntax_error(*line, "unknown directive '" + tok[0] + "'");
    }
  }
  if (!have_header) throw Error(ErrorKind::Validation, "SyntaxError", "missing `operad` or `properad` header");

  int top_genus = 0;
  for (auto& line : rel_lines) {
    std::size_t eq = line.text.find('=');
    auto head = split_ws(line.text.substr(0, eq == std::string::npos ? line.text.size() : eq));
    if (eq == std::string::npos || head.size() != 2) throw syntax_error(line, "expected `rel <name> = terms`");
    Relation r;
    r.name = head[1];
    r.terms = RelParser(line, eq + 1, p).parse();
    std::optional<TermShape> shape;
    std::optional<int> degree;
    for (auto& t : r.terms) {
      check_term(p, t, line);
      TermShape sh = term_shape(p, t);
      int deg = p.generators[t.lower].degree + p.generators[t.upper].degree;
      if (shape && (shape->inputs != sh.inputs || shape->outputs != sh.outputs))
        throw validation("RelationBiarityMismatch", line,
                         "relation '" + r.name + "' mixes biarities (" + std::to_string(shape->inputs) + "," +
                             std::to_string(shape->outputs) + ") and (" + std::to_string(sh.inputs) + "," +
                             std::to_string(sh.outputs) + ")");
      if (degree && *degree != deg) throw validation("RelationDegreeMismatch", line, "relation terms differ in degree");
      shape = sh;
      degree = deg;
      top_genus = std::max(top_genus, sh.genus);
    }
    p.relations.push_back(std::move(r));
  }
  if (p.kind == PresentationKind::Operad) {
    if (have_genus && p.max_genus != 0) throw Error(ErrorKind::Validation, "GenusInOperad", "operads have genus 0");
    p.max_genus = 0;
  } else if (!have_genus) {
    p.max_genus = top_genus;
  }
  return p;
}

std::string format_presentation(const Presentation& p) {
  std::ostringstream out;
  out << (p.kind == PresentationKind::Operad ? "operad " : "properad ") << p.name << "\n";
  if (p.kind == PresentationKind::Properad) out << "genus " << p.max_genus << "\n";
  for (auto& g : p.generators)
    out << "gen " << g.name << " : in=" << g.inputs << " out=" << g.outputs << " deg=" << g.degree
        << " sym=" << symmetry_name(g.symmetry) << "\n";
  for (auto& r : p.relations) {
    out << "rel " << r.name << " =";
    bool first = true;
    for (auto& t : r.terms) {
      Rational c = t.coefficient;
      if (first) {
        out << " " << to_string(c);
      } else {
        out << (sgn(c) < 0 ? " - " : " + ") << to_string(Rational(abs(c)));
      }
      first = false;
      out << "*term(lower=" << p.generators[t.lower].name << ", upper=" << p.generators[t.upper].name << ", edges=[";
      for (std::size_t k = 0; k < t.edges.size(); ++k)
        out << (k ? "," : "") << "(" << t.edges[k].first + 1 << "," << t.edges[k].second + 1 << ")";
      out << "], in=[";
      for (std::size_t k = 0; k < t.input_labels.size(); ++k) out << (k ? "," : "") << t.input_labels[k] + 1;
      out << "], out=[";
      for (std::size_t k = 0; k < t.output_labels.size(); ++k) out << (k ? "," : "") << t.output_labels[k] + 1;
      out << "])";
    }
    out << "\n";
  }
  return out.str();
}

std::vector<std::string> builtin_names() { return {"assoc", "lie", "frob", "bilie", "bilie-diamond"}; }

bool is_builtin(const std::string& name) {
  auto names = builtin_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

Presentation builtin_presentation(const std::string& name) {
  const auto& texts = builtin_texts();
  if (name == "bilie-diamond") {
    Presentation p = parse_presentation(texts.at("bilie") +
                                        "rel involutive = 1*term(lower=c, upper=b, edges=[(1,1),(2,2)], in=[1], out=[1])\n");
    p.name = "bilie-diamond";
    return p;
  }
  auto it = texts.find(name);
  if (it == texts.end()) throw Error(ErrorKind::Validation, "UnknownPresentation", "no built-in named '" + name + "'");
  return parse_presentation(it->second);
}

}  // namespace deforma
