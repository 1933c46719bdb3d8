#pragma once

#include "deforma/exactalg/rational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace deforma {

/// Shared helpers for the line-oriented text formats.
struct Line {
  std::size_t number;
  std::string text;  // comment stripped, trimmed, never empty
};

class LineReader {
public:
  explicit LineReader(const std::string& text);
  std::optional<Line> next();

private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

std::vector<std::string> split_ws(const std::string& s);
std::string trim(const std::string& s);
Error syntax_error(const Line& line, const std::string& msg, std::size_t column = 1);
int parse_int(const std::string& s);
/// Value of a `key=value` token; throws if the key differs.
std::string key_value(const Line& line, const std::string& token, const std::string& key);
/// `c1*l1 + c2*l2 - c3*l3`; coefficients are exact rationals, `*` required.
std::vector<std::pair<Rational, std::string>> parse_linear_terms(const Line& line, const std::string& text);

}  // namespace deforma
