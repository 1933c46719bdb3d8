#include "deforma/exactalg/text.hpp"

#include <cctype>
#include <sstream>

namespace deforma {

LineReader::LineReader(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t n = 0;
  while (std::getline(in, raw)) {
    ++n;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    auto t = trim(raw);
    if (!t.empty()) lines_.push_back({n, t});
  }
}

std::optional<Line> LineReader::next() {
  if (pos_ >= lines_.size()) return std::nullopt;
  return lines_[pos_++];
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

Error syntax_error(const Line& line, const std::string& msg, std::size_t column) {
  return Error(ErrorKind::Validation, "SyntaxError",
               "line " + std::to_string(line.number) + ", column " + std::to_string(column) + ": " + msg);
}

int parse_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw Error(ErrorKind::Validation, "SyntaxError", "not an integer: '" + s + "'");
  return v;
}

std::string key_value(const Line& line, const std::string& token, const std::string& key) {
  auto eq = token.find('=');
  if (eq == std::string::npos || token.substr(0, eq) != key)
    throw syntax_error(line, "expected `" + key + "=...`, got '" + token + "'");
  return token.substr(eq + 1);
}

std::vector<std::pair<Rational, std::string>> parse_linear_terms(const Line& line, const std::string& text) {
  std::vector<std::pair<Rational, std::string>> out;
  std::string body = trim(text);
  std::size_t i = 0;
  bool expect_term = true;
  int sign = 1;
  while (i < body.size()) {
    char c = body[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (expect_term && (c == '+' || c == '-') && (i + 1 >= body.size() || std::isspace(static_cast<unsigned char>(body[i + 1])))) {
      throw syntax_error(line, "dangling sign", i + 1);
    }
    if (!expect_term) {
      if (c != '+' && c != '-') throw syntax_error(line, "expected '+' or '-' between terms", i + 1);
      sign = c == '-' ? -1 : 1;
      ++i;
      expect_term = true;
      continue;
    }
    std::size_t j = i;
    while (j < body.size() && !std::isspace(static_cast<unsigned char>(body[j]))) ++j;
    std::string term = body.substr(i, j - i);
    auto star = term.find('*');
    if (star == std::string::npos) throw syntax_error(line, "term '" + term + "' lacks `<coeff>*`", i + 1);
    Rational coeff = parse_rational(term.substr(0, star));
    out.emplace_back(coeff * sign, term.substr(star + 1));
    sign = 1;
    expect_term = false;
    i = j;
  }
  if (expect_term && !out.empty()) throw syntax_error(line, "trailing operator");
  return out;
}

}  // namespace deforma
