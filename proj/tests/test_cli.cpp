#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "crossratio/cli.hpp"
#include "crossratio/errors.hpp"
#include "doctest.h"

using namespace crossratio;
using namespace crossratio::cli;
using json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result lab(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(cell);
      cell.clear();
    } else if (c == '\r') {
    } else if (c == '\n') {
      row.push_back(cell);
      cell.clear();
      rows.push_back(row);
      row.clear();
    } else {
      cell += c;
    }
  }
  return rows;
}

std::string column(const std::vector<std::vector<std::string>>& rows, std::size_t r, const std::string& name) {
  for (std::size_t i = 0; i < rows[0].size(); ++i)
    if (rows[0][i] == name) return rows[r][i];
  FAIL("missing column " << name);
  return {};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p, std::ios::binary) << content;
  return p;
}

}  // namespace

TEST_CASE("prop24 CSV") {
  auto r = lab({"torus", "prop24", "--g", "R L", "--h", "L R", "--n-max", "3"});
  REQUIRE(r.code == 0);
  auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 4);
  const double expect[] = {0.8503560574, 0.808316425, 0.8012379264};
  for (std::size_t i = 1; i <= 3; ++i) {
    CHECK(column(rows, i, "cross_ratio") == "4/5");
    CHECK(std::fabs(std::stod(column(rows, i, "ratio")) - expect[i - 1]) < 1e-9);
  }
  CHECK(r.out.find("\r\n") != std::string::npos);
}

TEST_CASE("classify") {
  auto r = lab({"torus", "classify", "--word", "R R"});
  CHECK(r.code == 0);
  auto rows = csv_rows(r.out);
  CHECK(column(rows, 1, "classification") == "notPseudoAnosov");
  CHECK(column(rows, 1, "matrix") == "[[1, 2], [0, 1]]");
  auto m = lab({"torus", "classify", "--matrix", "2,1;1,1"});
  CHECK(column(csv_rows(m.out), 1, "classification") == "pseudoAnosov");
}

TEST_CASE("spectrum gap") {
  auto r = lab({"spectrum", "gap", "--gens", "RL", "--gens", "RLLR", "--n", "6", "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["summary"]["witness"] == json::array({11, -6}));
  Enclosure gap = enclosure_from_json(j["summary"]["gap"]);
  CHECK(gap.contains(parse_rational("0.0101771070767595")));
  CHECK(gap.width() <= default_precision());
  CHECK(j["summary"]["exhaustive"] == true);
}

TEST_CASE("byte determinism") {
  for (const auto& fmt : {"csv", "json"}) {
    std::vector<std::string> args{"torus", "forlarge", "--n-max", "6", "--format", fmt};
    auto a = lab(args), b = lab(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    std::vector<std::string> scan{"spectrum", "scan", "--radius", "5", "--format", fmt};
    CHECK(lab(scan).out == lab(scan).out);
  }
}

TEST_CASE("JSON round trip reproduces exact scalars") {
  auto r = lab({"torus", "forlarge", "--n-max", "3", "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  QuadExt c = quad_from_json(j["summary"]["c"]);
  CHECK(c == QuadExt(4, Rational(4, 5), 5));
  CHECK(quad_from_json(j["rows"][0]["ratio"]) == QuadExt(-48, 24, 5));
  CHECK(quad_from_json(j["rows"][1]["intersection"]) == QuadExt(84, 84, 5));
  CHECK(j["summary"]["c"]["a"] == json::array({4, 1}));
  CHECK(j["summary"]["c"]["b"] == json::array({4, 5}));
  CHECK(j["summary"]["c"]["d"] == 5);

  auto s = lab({"spectrum", "scan", "--radius", "3", "--format", "json"});
  auto js = json::parse(s.out);
  Real len = real_from_json(js["rows"][0]["length"]);
  CHECK_FALSE(len.is_exact());
  CHECK(len.enclosure().contains(parse_rational("0.9624236501192069")));
  CHECK(quad_from_json(js["rows"][0]["lambda"]) == QuadExt(Rational(3, 2), Rational(1, 2), 5));
}

TEST_CASE("exit codes") {
  CHECK(lab({"torus", "prop24", "--g", "R R"}).code == kHypothesis);
  CHECK(lab({"torus", "classify", "--word", "R X"}).code == kValidation);
  CHECK(lab({"torus", "nope"}).code == kValidation);
  CHECK(lab({"torus", "prop24", "--n-max", "0"}).code == kValidation);
  CHECK(lab({"torus", "iceberg", "--nonconvex"}).code == kHypothesis);
  CHECK(lab({"torus", "forlarge", "--z", "R L"}).code == kHypothesis);
  CHECK(lab({"torus", "classify", "--matrix", "2,0;0,1"}).code == kValidation);
  CHECK(lab({"tv", "stretch", "--matrix", "1,1;1,1", "--word", "A B"}).code == kHypothesis);
  CHECK(lab({"--help"}).code == kOk);
  // Certification below 2^-16384 is out of budget.
  auto p = lab({"spectrum", "gap", "--gens", "RL", "--gens", "RLLR", "--n", "2", "--tolerance", "1e-6000"});
  CHECK(p.code == kPrecision);
  CHECK(p.err.find("precision") != std::string::npos);
}

TEST_CASE("config files") {
  auto good = temp_file("crl_good.json", R"({"schema": 1, "model": "torus", "g": "R L", "h": "L R", "n_max": 2,
    "format": "json"})");
  auto r = lab({"torus", "prop24", "--config", good.string()});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["rows"].size() == 2);
  // Flags override file values.
  auto o = lab({"torus", "prop24", "--config", good.string(), "--n-max", "1", "--format", "csv"});
  CHECK(csv_rows(o.out).size() == 2);

  auto unknown = temp_file("crl_unknown.json", R"({"schema": 1, "colour": "red"})");
  auto u = lab({"torus", "prop24", "--config", unknown.string()});
  CHECK(u.code == kValidation);
  CHECK(u.err.find("colour") != std::string::npos);

  auto bad = temp_file("crl_bad.json", "{\"schema\": 1,\n  \"g\": \"R L\",,\n}");
  auto b = lab({"torus", "prop24", "--config", bad.string()});
  CHECK(b.code == kValidation);
  CHECK(b.err.find("line 2, column 14") != std::string::npos);

  auto schema = temp_file("crl_schema.json", R"({"schema": 2})");
  CHECK(lab({"torus", "prop24", "--config", schema.string()}).code == kValidation);
  auto missing = temp_file("crl_missing.json", R"({"g": "R L"})");
  CHECK(lab({"torus", "prop24", "--config", missing.string()}).code == kValidation);
  auto wrong = temp_file("crl_model.json", R"({"schema": 1, "model": "thurston-veech"})");
  CHECK(lab({"torus", "prop24", "--config", wrong.string()}).code == kValidation);

  auto tv = temp_file("crl_tv.json", R"({"schema": 1, "model": "thurston-veech", "matrix": [[1, 1], [1, 1]],
    "word": "A^2 B^-1"})");
  auto t = lab({"tv", "stretch", "--config", tv.string(), "--format", "json"});
  REQUIRE(t.code == 0);
  CHECK(quad_from_json(json::parse(t.out)["summary"]["stretch"]) == QuadExt(5, 2, 6));

  auto chart = temp_file("crl_chart.json", R"({"schema": 1, "model": "chart",
    "generators": {"R": [[1, 1], [0, 1]], "L": [[1, 0], [1, 1]]}, "g": "R L", "h": "L R", "format": "json"})");
  auto c = lab({"chart", "cross-ratio", "--config", chart.string()});
  REQUIRE(c.code == 0);
  CHECK(quad_from_json(json::parse(c.out)["summary"]["cross_ratio"]) == QuadExt(Rational(4, 5)));
}

TEST_CASE("out file") {
  auto path = std::filesystem::temp_directory_path() / "crl_out.csv";
  std::filesystem::remove(path);
  auto r = lab({"torus", "cross-ratio", "--out", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("g,h,cross_ratio", 0) == 0);
}

TEST_CASE("precision from the environment") {
  setenv("CROSSRATIO_PRECISION", "1e-3", 1);
  auto r = lab({"spectrum", "gap", "--gens", "RL", "--gens", "RLLR", "--n", "2", "--format", "json"});
  Enclosure coarse = enclosure_from_json(json::parse(r.out)["summary"]["gap"]);
  CHECK(coarse.width() <= Rational(1, 1000));
  setenv("CROSSRATIO_PRECISION", "-1", 1);
  CHECK(lab({"torus", "cross-ratio"}).code == kValidation);
  unsetenv("CROSSRATIO_PRECISION");
}

TEST_CASE("scalar parsing") {
  CHECK(parse_quad("3/2 + 1/2*sqrt(5)") == QuadExt(Rational(3, 2), Rational(1, 2), 5));
  CHECK(parse_quad("-sqrt(2)") == QuadExt(0, -1, 2));
  CHECK(parse_quad("1 + sqrt(5)") == QuadExt(1, 1, 5));
  CHECK(parse_quad("1e-3") == QuadExt(Rational(1, 1000)));
  CHECK(parse_quad("2*sqrt(8)") == QuadExt(0, 4, 2));
  CHECK(parse_quad("sqrt(4)") == QuadExt(2));
  CHECK_THROWS_AS(parse_quad("sqrt(2) + sqrt(3)"), FieldMismatchError);
  CHECK_THROWS_AS(parse_quad("2 sqrt(5)"), ValidationError);
  CHECK(parse_vector("(2, 1 + sqrt(5))").size() == 2);
  CHECK_THROWS_AS(parse_matrix("1,2;3"), ValidationError);
  // Output text parses back.
  QuadExt x(Rational(-7, 3), Rational(5, 11), 13);
  CHECK(parse_quad(x.to_string()) == x);
}
