#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "crossratio/enclosure.hpp"
#include "crossratio/matrix.hpp"
#include "crossratio/quadext.hpp"
#include "crossratio/real.hpp"

namespace crossratio::cli {

/// Exit statuses of run().
enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kValidation = 2,  // also domain errors and malformed input
  kHypothesis = 3,
  kPrecision = 4,
};

struct ExperimentConfig {
  int schema = 1;
  std::string model;  // torus | thurston-veech | chart; empty means implied by the command
  std::map<std::string, Matrix<Rational>> generators;
  std::optional<Matrix<Rational>> matrix;
  std::string word;
  std::string g = "R L";
  std::string h = "L R";
  std::string z = "2, 1 + sqrt(5)";  // a vector, or a word whose unstable foliation is used
  std::vector<std::string> gens;
  std::vector<std::string> samples{"1, 0"};
  unsigned n_max = 10;
  long n = 6;
  unsigned radius = 4;
  unsigned depth = 0;
  Rational tolerance = default_precision();
  std::string format = "csv";
  std::string out;
  std::uint64_t seed = 0x1ceb;
  unsigned fixtures = 0;
  bool nonconvex = false;
  bool arithmetic = false;

  void validate() const;
};

/// Parses a JSON config. Unknown fields and a schema other than 1 are
/// rejected; malformed JSON reports line and column. Throws ValidationError.
ExperimentConfig parse_config(const std::string& text, ExperimentConfig base = {});

/// "3/2 + 1/2*sqrt(5)", "-sqrt(2)", "7", "0.25".
QuadExt parse_quad(const std::string& text);
/// Comma-separated entries of parse_quad.
Vec<QuadExt> parse_vector(const std::string& text);
/// Rows separated by ';', entries by ','.
Matrix<Rational> parse_matrix(const std::string& text);

nlohmann::ordered_json to_json(const QuadExt& x);
nlohmann::ordered_json to_json(const Enclosure& e, const Rational& eps);
nlohmann::ordered_json to_json(const Real& x, const Rational& eps);
QuadExt quad_from_json(const nlohmann::json& j);
/// Point interval [lo, hi] as serialized; not refinable.
Enclosure enclosure_from_json(const nlohmann::json& j);
Real real_from_json(const nlohmann::json& j);

/// Runs one command. args excludes the program name. The report goes to
/// `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace crossratio::cli
