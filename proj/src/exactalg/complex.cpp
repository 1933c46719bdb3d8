#include "deforma/exactalg/complex.hpp"

#include "deforma/exactalg/text.hpp"

#include <sstream>

namespace deforma {

void GradedVectorSpace::add(int degree, std::string label) {
  if (index_.count(label))
    throw Error(ErrorKind::Validation, "DuplicateBasisLabel", "basis label '" + label + "' appears twice");
  auto& comp = components_[degree];
  index_[label] = {degree, comp.size()};
  comp.push_back(std::move(label));
}

std::size_t GradedVectorSpace::dim(int degree) const {
  auto it = components_.find(degree);
  return it == components_.end() ? 0 : it->second.size();
}

const std::vector<std::string>& GradedVectorSpace::basis(int degree) const {
  static const std::vector<std::string> empty;
  auto it = components_.find(degree);
  return it == components_.end() ? empty : it->second;
}

std::vector<int> GradedVectorSpace::degrees() const {
  std::vector<int> out;
  for (auto& [d, b] : components_)
    if (!b.empty()) out.push_back(d);
  return out;
}

std::pair<int, std::size_t> GradedVectorSpace::locate(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw Error(ErrorKind::Validation, "UnknownBasisLabel", "unknown basis label '" + label + "'");
  return it->second;
}

void CochainComplex::set_differential(int degree, SparseMatrix d) {
  if (d.rows() != dim(degree + 1) || d.cols() != dim(degree))
    throw Error(ErrorKind::Validation, "DifferentialShape", "d_" + std::to_string(degree) + " has the wrong shape");
  d_[degree] = std::move(d);
}

SparseMatrix CochainComplex::differential(int degree) const {
  auto it = d_.find(degree);
  if (it != d_.end()) return it->second;
  return SparseMatrix(dim(degree + 1), dim(degree));
}

std::optional<int> CochainComplex::square_defect(int lo, int hi) const {
  for (int n = lo; n <= hi; ++n) {
    if (!(differential(n + 1) * differential(n)).is_zero()) return n;
  }
  return std::nullopt;
}

CohomologyReport cohomology(const CochainComplex& c, int lo, int hi, bool with_representatives) {
  if (auto bad = c.square_defect(lo - 1, hi))
    throw Error(ErrorKind::Mathematical, "SquareNonzero", "d^2 != 0 starting in degree " + std::to_string(*bad));
  CohomologyReport rep;
  for (int n = lo; n <= hi; ++n) {
    SparseMatrix dn = c.differential(n);
    SparseMatrix dprev = c.differential(n - 1);
    std::size_t dimn = c.dim(n);
    std::size_t rk = rank(dn);
    std::size_t rkprev = rank(dprev);
    rep.kernel_dim[n] = dimn - rk;
    rep.image_rank[n] = rkprev;
    rep.betti[n] = dimn - rk - rkprev;
    if (with_representatives) {
      EchelonBasis span(dimn);
      for (auto& col : dprev.column_vectors()) span.insert(col);
      auto& reps = rep.representatives[n];
      for (auto& z : kernel_basis(dn))
        if (span.insert(z)) reps.push_back(z);
    }
  }
  return rep;
}

CochainComplex parse_complex(const std::string& text) {
  GradedVectorSpace space;
  std::string name;
  struct Pending {
    std::string source;
    std::vector<std::pair<Rational, std::string>> terms;
    std::size_t line;
  };
  std::vector<Pending> pending;
  LineReader reader(text);
  while (auto line = reader.next()) {
    auto tok = split_ws(line->text);
    if (tok[0] == "complex") {
      if (tok.size() != 2) throw syntax_error(*line, "expected `complex <name>`");
      name = tok[1];
    } else if (tok[0] == "basis") {
      if (tok.size() != 3) throw syntax_error(*line, "expected `basis <label> deg=<int>`");
      space.add(parse_int(key_value(*line, tok[2], "deg")), tok[1]);
    } else if (tok[0] == "d") {
      auto arrow = line->text.find("->");
      if (tok.size() < 3 || arrow == std::string::npos) throw syntax_error(*line, "expected `d <label> -> terms`");
      pending.push_back({tok[1], parse_linear_terms(*line, line->text.substr(arrow + 2)), line->number});
    } else {
      throw syntax_error(*line, "unknown directive '" + tok[0] + "'");
    }
  }
  CochainComplex c(space);
  c.name = name;
  std::map<int, SparseMatrix> mats;
  for (auto& p : pending) {
    auto [deg, col] = space.locate(p.source);
    auto& m = mats.try_emplace(deg, space.dim(deg + 1), space.dim(deg)).first->second;
    for (auto& [coeff, label] : p.terms) {
      auto [tdeg, row] = space.locate(label);
      if (tdeg != deg + 1)
        throw Error(ErrorKind::Validation, "DifferentialDegree",
                    "line " + std::to_string(p.line) + ": d must raise degree by one");
      m.add(row, col, coeff);
    }
  }
  for (auto& [deg, m] : mats) c.set_differential(deg, std::move(m));
  return c;
}

std::string format_complex(const CochainComplex& c) {
  std::ostringstream out;
  out << "complex " << (c.name.empty() ? "X" : c.name) << "\n";
  for (auto& [deg, labels] : c.space().components())
    for (auto& l : labels) out << "basis " << l << " deg=" << deg << "\n";
  for (auto& [deg, m] : c.differentials()) {
    auto cols = m.column_vectors();
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].empty()) continue;
      out << "d " << c.space().basis(deg)[j] << " ->";
      bool first = true;
      for (auto& [i, x] : cols[j].entries()) {
        out << (first ? " " : " + ") << to_string(x) << "*" << c.space().basis(deg + 1)[i];
        first = false;
      }
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace deforma
