#pragma once

// Command implementations behind the `deforma` executable. Each returns the
// JSON report; errors propagate as deforma::Error.

#include "deforma/exactalg/rational.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace deforma::cli {

using json = nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";

struct Options {
  std::optional<int> max_weight, max_biarity, max_genus;
  std::optional<std::pair<int, int>> degrees;
  std::optional<std::string> modulus;
  bool emit_golden = false;
  bool certificate = false;        // ce: include the MC/CE comparison
  std::optional<int> max_word;     // ce: word-length truncation
  std::optional<int> min_arity;    // oracle: lowest cochain arity
};

/// Error carrying structured details for the diagnostic report.
class ReportedError : public Error {
public:
  ReportedError(ErrorKind kind, std::string code, const std::string& what, json details)
      : Error(kind, std::move(code), what), details_(std::move(details)) {}
  const json& details() const { return details_; }

private:
  json details_;
};

/// Process exit code for an error kind: 2 validation, 3 mathematical, 4 truncation.
int exit_code(ErrorKind kind);
json error_report(const Error& e);

/// `a..b` with a <= b.
std::pair<int, int> parse_degree_range(const std::string& text);

/// key=value lines (`#` comments); relative paths resolve against the file's directory.
struct JobFile {
  std::string directory;
  std::map<std::string, std::string> values;
  std::string get(const std::string& key) const;  // throws MissingKey
  bool has(const std::string& key) const { return values.count(key) > 0; }
  std::string path(const std::string& key) const;
};
JobFile parse_job_file(const std::string& path);

/// Element text `c*label + c*label*t^p + ...` against a list of labels; power
/// defaults to 0 and is returned per term.
std::vector<std::tuple<Rational, std::string, int>> parse_element_terms(const std::string& text);

json cmd_check(const std::string& presentation, const Options& o);
json cmd_component(const std::string& presentation, int m, int n, int w, const Options& o);
json cmd_koszul(const std::string& presentation, const Options& o);
json cmd_defcomplex(const std::string& presentation, const std::string& complex, const std::string& structure,
                    const Options& o);
json cmd_cohomology(const std::string& presentation, const std::string& complex, const std::string& structure,
                    const Options& o);
json cmd_deform(const std::string& job, const Options& o);
json cmd_gauge(const std::string& job, const Options& o);
json cmd_ce(const std::string& linfty, const Options& o);
/// kind is `hochschild` or `ce`; with emit_golden the golden-file payload is returned.
json cmd_oracle(const std::string& kind, const std::string& complex, const std::string& structure, const Options& o);

}  // namespace deforma::cli
