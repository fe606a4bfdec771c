#include "crossratio/cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"

#include "crossratio/chartmodel.hpp"
#include "crossratio/errors.hpp"
#include "crossratio/pf.hpp"
#include "crossratio/spectrum.hpp"
#include "crossratio/thurstonveech.hpp"
#include "crossratio/torus.hpp"
#include "crossratio/verify.hpp"
#include "crossratio/word.hpp"

namespace crossratio::cli {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kDigits = 12;

std::string trim(std::string s) {
  auto sp = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && sp(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && sp(static_cast<unsigned char>(s[i]))) ++i;
  return s.substr(i);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

// Integers that do not fit in 64 bits are written as decimal strings.
ojson integer_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_number_unsigned()) return Integer(j.get<unsigned long>());
  if (j.is_string()) return Integer(j.get<std::string>());
  throw ValidationError("expected an integer, got " + j.dump());
}

ojson rational_json(const Rational& q) { return ojson::array({integer_json(q.get_num()), integer_json(q.get_den())}); }

Rational rational_from_json(const json& j) {
  if (j.is_array() && j.size() == 2) return make_rational(integer_from_json(j[0]), integer_from_json(j[1]));
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_float()) throw ValidationError("floating-point literals are not exact; write \"" + j.dump() + "\" as a string");
  throw ValidationError("expected a rational, got " + j.dump());
}

QuadExt scalar_from_json(const json& j) {
  if (j.is_object()) return quad_from_json(j);
  if (j.is_string()) return parse_quad(j.get<std::string>());
  return QuadExt(rational_from_json(j));
}

Matrix<Rational> matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw ValidationError("matrix must be an array of rows");
  Matrix<Rational> m(j.size(), j[0].size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != m.cols()) throw ValidationError("ragged matrix in config");
    for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = rational_from_json(j[i][k]);
  }
  return m;
}

std::string vector_text(const Vec<QuadExt>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_string();
  return s + ")";
}

template <class T>
std::string matrix_text(const Matrix<T>& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t k = 0; k < m.cols(); ++k) os << (k ? ", " : "") << m(i, k);
    os << "]";
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
// Reports: one table whose cells carry both a JSON value and CSV text.

struct Cell {
  ojson j;
  std::string text;
};

class Report {
 public:
  Report(std::string command, Rational eps) : command_(std::move(command)), eps_(std::move(eps)) {}

  const Rational& eps() const { return eps_; }

  Cell cell(const QuadExt& x) const { return {to_json(x), x.to_string()}; }
  Cell cell(const Enclosure& e) const {
    Enclosure r = refine(e, eps_);
    return {to_json(r, eps_), to_decimal(r, kDigits)};
  }
  Cell cell(const Real& x) const {
    if (const QuadExt* q = x.exact()) return cell(*q);
    return cell(x.enclosure());
  }
  Cell cell(const Rational& q) const { return cell(QuadExt(q)); }
  Cell cell(const Integer& z) const { return {integer_json(z), z.get_str()}; }
  Cell cell(long v) const { return {v, std::to_string(v)}; }
  Cell cell(bool b) const { return {b, b ? "true" : "false"}; }
  Cell cell(const std::string& s) const { return {s, s}; }
  Cell cell(const char* s) const { return cell(std::string(s)); }
  Cell cell(const Vec<QuadExt>& v) const {
    ojson a = ojson::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return {a, vector_text(v)};
  }
  Cell decimal(const Real& x) const { return cell(to_decimal(refine(x.enclosure(), eps_), kDigits)); }

  template <class T>
  void set(const std::string& key, const T& value) {
    summary_.emplace_back(key, cell(value));
  }
  void set_cell(const std::string& key, Cell c) { summary_.emplace_back(key, std::move(c)); }

  void begin_row() { rows_.emplace_back(); }
  template <class T>
  void col(const std::string& key, const T& value) {
    rows_.back().emplace_back(key, cell(value));
  }
  void col_cell(const std::string& key, Cell c) { rows_.back().emplace_back(key, std::move(c)); }

  std::string render(const std::string& format) const {
    if (format == "json") return render_json();
    return render_csv();
  }

 private:
  using Fields = std::vector<std::pair<std::string, Cell>>;

  std::string render_json() const {
    ojson doc;
    doc["schema"] = 1;
    doc["command"] = command_;
    ojson s = ojson::object();
    for (const auto& [k, c] : summary_) s[k] = c.j;
    doc["summary"] = s;
    ojson rows = ojson::array();
    for (const auto& r : rows_) {
      ojson o = ojson::object();
      for (const auto& [k, c] : r) o[k] = c.j;
      rows.push_back(o);
    }
    doc["rows"] = rows;
    return doc.dump(2) + "\n";
  }

  static std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  }

  // Summary fields repeat on every row so the table stays rectangular.
  std::string render_csv() const {
    std::vector<Fields> lines;
    if (rows_.empty()) {
      lines.push_back(summary_);
    } else {
      for (const auto& r : rows_) {
        Fields f = summary_;
        f.insert(f.end(), r.begin(), r.end());
        lines.push_back(std::move(f));
      }
    }
    std::string out;
    auto emit = [&](const Fields& f, bool header) {
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) out += ',';
        out += quote(header ? f[i].first : f[i].second.text);
      }
      out += "\r\n";
    };
    emit(lines.front(), true);
    for (const auto& l : lines) emit(l, false);
    return out;
  }

  std::string command_;
  Rational eps_;
  Fields summary_;
  std::vector<Fields> rows_;
};

// ---------------------------------------------------------------------------
// Commands

ChartPoint resolve_point(const std::string& text) {
  if (text.find(',') != std::string::npos) return ChartPoint(parse_vector(text));
  return fixed_foliations(PAClass::from_word(text)).plus;
}

ChartSystem chart_system(const ExperimentConfig& c) {
  if (c.generators.empty()) return ChartSystem::torus();
  return ChartSystem("custom", c.generators);
}

std::map<std::string, Matrix<Rational>> spectrum_generators(const ExperimentConfig& c) {
  if (c.generators.empty()) return torus_generators();
  return c.generators;
}

const std::string& require_word(const std::string& w, const char* what) {
  if (trim(w).empty()) throw ValidationError(std::string("missing ") + what);
  return w;
}

void torus_classify(const ExperimentConfig& c, Report& r) {
  Matrix<Rational> m;
  if (!c.word.empty()) {
    m = word_eval(parse_word(c.word), torus_generators());
    r.set("word", to_string(parse_word(c.word)));
  } else if (c.matrix) {
    m = *c.matrix;
  } else {
    throw ValidationError("classify needs --word or --matrix");
  }
  Classification k = classify(m);
  r.set("matrix", matrix_text(m));
  r.set("trace", m.trace());
  r.set("classification", std::string(to_string(k)));
}

void torus_foliations(const ExperimentConfig& c, Report& r) {
  PAClass g = PAClass::from_word(c.word.empty() ? c.g : c.word);
  auto f = fixed_foliations(g);
  r.set("word", to_string(g.word()));
  r.set("lambda", f.lambda);
  r.set_cell("lambda_decimal", r.decimal(f.lambda));
  r.set("translation_length", translation_length(g));
  r.set("plus", f.plus.weights);
  r.set("minus", f.minus.weights);
}

void torus_cross_ratio(const ExperimentConfig& c, Report& r) {
  PAClass g = PAClass::from_word(c.g), h = PAClass::from_word(c.h);
  auto fg = fixed_foliations(g), fh = fixed_foliations(h);
  Real points = cross_ratio(fg.plus, fh.plus, fg.minus, fh.minus).value;
  Real functional = cross_ratio_functional(g, h).value;
  r.set("g", to_string(g.word()));
  r.set("h", to_string(h.word()));
  r.set("cross_ratio", points);
  r.set("cross_ratio_functional", functional);
  bool agree = points.is_exact() && functional.is_exact() && *points.exact() == *functional.exact();
  r.set("exact_agreement", agree);
  r.set_cell("decimal", r.decimal(points));
}

void torus_prop24(const ExperimentConfig& c, Report& r) {
  PAClass g = PAClass::from_word(c.g), h = PAClass::from_word(c.h);
  auto t = prop24_table(g, h, c.n_max);
  r.set("cross_ratio", t.cross_ratio);
  for (const auto& row : t.rows) {
    r.begin_row();
    r.col("n", static_cast<long>(row.n));
    r.col("pseudo_anosov", row.pseudo_anosov);
    r.col("trace", row.trace);
    r.col_cell("lambda", row.lambda ? r.cell(*row.lambda) : Cell{nullptr, ""});
    r.col("ratio", row.ratio);
    r.col("deviation", row.deviation);
  }
}

void torus_lemma23(const ExperimentConfig& c, Report& r) {
  PAClass g = PAClass::from_word(c.g);
  ConvergenceSpec spec;
  spec.n_max = c.n_max;
  spec.tolerance = c.tolerance;
  for (const auto& s : c.samples) spec.samples.push_back(parse_vector(s));
  auto t = lemma23_table(g, spec);
  r.set("gplus", t.gplus.weights);
  r.set("gap", t.gap);
  for (const auto& row : t.rows) {
    r.begin_row();
    r.col("n", static_cast<long>(row.n));
    r.col("sample", static_cast<long>(row.sample));
    r.col("iterate", row.iterate);
    r.col("deviation", row.deviation);
    r.col_cell("deviation_decimal", r.decimal(row.deviation));
    r.col("bound", row.bound);
    r.col("within_bound", row.within_bound);
  }
}

void torus_forlarge(const ExperimentConfig& c, Report& r) {
  PAClass g = PAClass::from_word(c.g);
  auto t = forlarge_table(g, resolve_point(c.z), c.n_max);
  r.set("c", t.c);
  r.set_cell("c_decimal", r.decimal(t.c));
  r.set("alpha", t.alpha);
  r.set("strictly_increasing", t.strictly_increasing);
  r.set("any_equal", t.any_equal);
  for (const auto& row : t.rows) {
    r.begin_row();
    r.col("n", static_cast<long>(row.n));
    r.col("intersection", row.intersection);
    r.col("ratio", row.ratio);
    r.col_cell("ratio_decimal", r.decimal(row.ratio));
    r.col_cell("deviation", r.decimal(row.deviation));
    r.col("equals_c", row.equals_c);
  }
}

void torus_iceberg(const ExperimentConfig& c, Report& r) {
  std::vector<std::pair<long, IcebergFixture>> cases;
  if (c.nonconvex) {
    cases.emplace_back(0, nonconvex_iceberg_fixture());
  } else {
    Vec<QuadExt> z = resolve_point(c.z).weights;
    cases.emplace_back(0, IcebergFixture{torus_intersection_form(z), z});
    long i = 1;
    for (auto& f : convex_iceberg_fixtures(c.fixtures, c.seed)) cases.emplace_back(i++, std::move(f));
  }
  bool all = true;
  for (const auto& [index, fx] : cases) {
    for (const auto& row : iceberg_check(fx.form, fx.v, c.seed)) {
      r.begin_row();
      r.col("fixture", index);
      r.col("piece", static_cast<long>(row.piece));
      r.col("value", row.value);
      r.col("nonpositive", row.nonpositive);
      all = all && row.nonpositive;
    }
  }
  r.set("all_nonpositive", all);
}

void torus_pn(const ExperimentConfig& c, Report& r) {
  PnSequence s = c.arithmetic ? arithmetic_pn_fixture(c.n_max)
                              : pn_sequence(PAClass::from_word(c.g), resolve_point(c.z), c.n_max);
  r.set("degree", static_cast<long>(s.degree()));
  r.set("c", s.c);
  r.set("alpha", s.alpha);
  r.set("any_zero", s.any_zero);
  bool residuals_zero = true;
  for (const auto& x : s.residuals) residuals_zero = residuals_zero && x == QuadExt(0);
  r.set("residuals_zero", residuals_zero);
  for (unsigned n = 0; n <= s.n_max && n < s.values.size(); ++n) {
    r.begin_row();
    r.col("n", static_cast<long>(n));
    r.col("value", s.values[n]);
    r.col("normalized", s.normalized[n]);
    r.col_cell("normalized_decimal", r.decimal(s.normalized[n]));
    r.col("residual", s.residuals[n]);
  }
}

void tv_build(const ExperimentConfig& c, Report& r) {
  if (!c.matrix) throw ValidationError("tv build needs --matrix");
  CurveSystem cs = make_curve_system(*c.matrix);
  TVRep rep = build_rep(cs);
  r.set("intersections", matrix_text(cs.intersections));
  r.set("mu", cs.mu);
  r.set("sqrt_mu", rep.sqrt_mu);
  auto mat = [&](const std::optional<Matrix<QuadExt>>& m) {
    if (!m) return Cell{nullptr, ""};
    ojson a = ojson::array();
    for (std::size_t i = 0; i < m->rows(); ++i) {
      ojson row = ojson::array();
      for (std::size_t k = 0; k < m->cols(); ++k) row.push_back(to_json((*m)(i, k)));
      a.push_back(row);
    }
    return Cell{a, matrix_text(*m)};
  };
  r.set_cell("ta", mat(rep.ta));
  r.set_cell("tb", mat(rep.tb));
}

void tv_stretch_cmd(const ExperimentConfig& c, Report& r) {
  if (!c.matrix) throw ValidationError("tv stretch needs --matrix");
  CurveSystem cs = make_curve_system(*c.matrix);
  Word w = parse_word(require_word(c.word, "--word"));
  Real lambda = tv_stretch(cs, w);
  r.set("word", to_string(w));
  r.set("mu", cs.mu);
  r.set("stretch", lambda);
  r.set_cell("stretch_decimal", r.decimal(lambda));
}

void chart_functional(const ExperimentConfig& c, Report& r) {
  ChartSystem cs = chart_system(c);
  Word w = parse_word(c.word.empty() ? c.g : c.word);
  IntersectionFunctional f = intersection_functional(cs, w);
  r.set("chart", cs.name());
  r.set("word", to_string(w));
  ojson coeffs = ojson::array();
  std::string text;
  for (std::size_t i = 0; i < f.dim(); ++i) {
    Cell x = r.cell(f.coefficients()[i]);
    coeffs.push_back(x.j);
    text += (i ? ", " : "") + x.text;
  }
  r.set_cell("coefficients", Cell{coeffs, "(" + text + ")"});
  if (f.exact_form()) r.set("exact", f.exact_form()->coeffs());
}

/// Cross-ratio of (g⁺, h⁺, g⁻, h⁻) from intersection functionals only:
/// w_h(g⁺)/w_h(h⁺) · w_g(h⁺)/w_g(g⁺), each functional up to scale.
void chart_cross_ratio(const ExperimentConfig& c, Report& r) {
  ChartSystem cs = chart_system(c);
  Word g = parse_word(c.g), h = parse_word(c.h);
  PFData pg = pf_data(carried_action(cs, g).matrix), ph = pf_data(carried_action(cs, h).matrix);
  IntersectionFunctional wg = intersection_functional(cs, g), wh = intersection_functional(cs, h);
  Real value;
  if (pg.exact && ph.exact) {
    value = wh.ratio(pg.exact->right, ph.exact->right) * wg.ratio(ph.exact->right, pg.exact->right);
  } else {
    auto pair = [](const IntersectionFunctional& w, const Vec<Enclosure>& u) {
      Real s(0);
      for (std::size_t i = 0; i < u.size(); ++i) s = s + Real(w.coefficients()[i]) * Real(u[i]);
      return abs(s);
    };
    Real den = pair(wh, ph.right) * pair(wg, pg.right);
    if (sign(den) == 0) throw UndefinedCrossRatio("functional vanishes on a fixed foliation");
    value = pair(wh, pg.right) * pair(wg, ph.right) / den;
  }
  r.set("chart", cs.name());
  r.set("g", to_string(g));
  r.set("h", to_string(h));
  r.set("cross_ratio", value);
  r.set_cell("decimal", r.decimal(value));
}

void spectrum_scan(const ExperimentConfig& c, Report& r) {
  auto samples = enumerate_lengths(spectrum_generators(c), c.radius);
  r.set("radius", static_cast<long>(c.radius));
  r.set("count", static_cast<long>(samples.size()));
  for (const auto& s : samples) {
    r.begin_row();
    r.col("word", to_string(s.word));
    r.col("word_length", static_cast<long>(s.word_length));
    r.col("lambda", s.lambda);
    r.col("length", s.length);
  }
}

void spectrum_gap(const ExperimentConfig& c, Report& r) {
  if (c.gens.empty()) throw ValidationError("spectrum gap needs at least one --gens word");
  auto gens = spectrum_generators(c);
  std::vector<Length> lengths;
  std::vector<std::string> words;
  for (const auto& text : c.gens) {
    Word w = parse_word(text);
    Matrix<Rational> m = word_eval(w, gens);
    QuadExt lambda = stretch_factor(PAClass(w, m));
    lengths.push_back(Length::of_stretch(lambda));
    words.push_back(to_string(w));
  }
  GapReport g = gap_statistic(lengths, c.n, c.tolerance);
  r.set("n", c.n);
  r.set("gap", g.gap);
  ojson wj = ojson::array();
  std::string wt = "(";
  for (std::size_t i = 0; i < g.witness.size(); ++i) {
    wj.push_back(g.witness[i]);
    wt += (i ? ", " : "") + std::to_string(g.witness[i]);
  }
  r.set_cell("witness", Cell{wj, wt + ")"});
  r.set("exhaustive", g.exhaustive);
  r.set("certified", "gap(N) <= " + to_decimal(refine(g.gap, c.tolerance).hi(), kDigits) + " certified");
  if (c.depth > 0 && lengths.size() >= 2) {
    auto conv = ratio_convergents(lengths[0], lengths[1], c.depth);
    ojson cj = ojson::array();
    std::string ct;
    for (std::size_t i = 0; i < conv.size(); ++i) {
      cj.push_back(rational_json(conv[i]));
      ct += (i ? " " : "") + to_string(conv[i]);
    }
    r.set_cell("convergents", Cell{cj, ct});
  }
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    r.begin_row();
    r.col("index", static_cast<long>(i + 1));
    r.col("word", words[i]);
    r.col("lambda", *lengths[i].lambda);
    r.col("length", lengths[i].value);
  }
}

// ---------------------------------------------------------------------------
// Flags: each is applied over the config file only when given.

struct Flags {
  std::string config;
  std::map<std::string, std::function<void(ExperimentConfig&)>> setters;
};

template <class T>
void add(CLI::App* app, Flags& f, const std::string& name, const std::string& help,
         std::function<void(ExperimentConfig&, const T&)> apply) {
  auto value = std::make_shared<T>();
  auto* opt = app->add_option(name, *value, help);
  f.setters[name] = [value, opt, apply](ExperimentConfig& c) {
    if (opt->count() > 0) apply(c, *value);
  };
}

void add_flag(CLI::App* app, Flags& f, const std::string& name, const std::string& help,
              std::function<void(ExperimentConfig&)> apply) {
  auto* opt = app->add_flag(name, help);
  f.setters[name] = [opt, apply](ExperimentConfig& c) {
    if (opt->count() > 0) apply(c);
  };
}

using Handler = void (*)(const ExperimentConfig&, Report&);

struct Leaf {
  CLI::App* app;
  Flags flags;
  Handler handler;
  std::string group;
};

enum Opt : unsigned {
  kWord = 1u << 0,
  kG = 1u << 1,
  kH = 1u << 2,
  kZ = 1u << 3,
  kNMax = 1u << 4,
  kMatrix = 1u << 5,
  kSamples = 1u << 6,
  kIceberg = 1u << 7,
  kArith = 1u << 8,
  kGens = 1u << 9,
  kRadius = 1u << 10,
  kGenerator = 1u << 11,
};

void add_options(CLI::App* app, Flags& f, unsigned opts) {
  app->add_option("--config", f.config, "JSON config file (schema 1)");
  add<std::string>(app, f, "--format", "Output format: csv or json",
                   [](ExperimentConfig& c, const std::string& v) { c.format = v; });
  add<std::string>(app, f, "--out", "Output path (default: standard output)",
                   [](ExperimentConfig& c, const std::string& v) { c.out = v; });
  add<std::string>(app, f, "--tolerance", "Enclosure target width",
                   [](ExperimentConfig& c, const std::string& v) { c.tolerance = parse_rational(v); });
  if (opts & kWord)
    add<std::string>(app, f, "--word", "Word in the generators",
                     [](ExperimentConfig& c, const std::string& v) { c.word = v; });
  if (opts & kG)
    add<std::string>(app, f, "--g", "Word for g", [](ExperimentConfig& c, const std::string& v) { c.g = v; });
  if (opts & kH)
    add<std::string>(app, f, "--h", "Word for h", [](ExperimentConfig& c, const std::string& v) { c.h = v; });
  if (opts & kZ)
    add<std::string>(app, f, "--z", "Chart point \"a, b\" or a word whose unstable foliation is used",
                     [](ExperimentConfig& c, const std::string& v) { c.z = v; });
  if (opts & kNMax)
    add<unsigned>(app, f, "--n-max", "Largest n", [](ExperimentConfig& c, const unsigned& v) { c.n_max = v; });
  if (opts & kMatrix)
    add<std::string>(app, f, "--matrix", "Matrix \"a, b; c, d\"",
                     [](ExperimentConfig& c, const std::string& v) { c.matrix = parse_matrix(v); });
  if (opts & kSamples)
    add<std::vector<std::string>>(app, f, "--sample", "Sample vector \"a, b\" (repeatable)",
                                  [](ExperimentConfig& c, const std::vector<std::string>& v) { c.samples = v; });
  if (opts & kIceberg) {
    add<unsigned>(app, f, "--fixtures", "Synthetic convex fixtures to add",
                  [](ExperimentConfig& c, const unsigned& v) { c.fixtures = v; });
    add<std::uint64_t>(app, f, "--seed", "Seed for fixtures and the convexity scan",
                       [](ExperimentConfig& c, const std::uint64_t& v) { c.seed = v; });
    add_flag(app, f, "--nonconvex", "Run the non-convex guard fixture", [](ExperimentConfig& c) { c.nonconvex = true; });
  }
  if (opts & kArith)
    add_flag(app, f, "--arithmetic", "Use the synthetic arithmetic fixture",
             [](ExperimentConfig& c) { c.arithmetic = true; });
  if (opts & kGens) {
    add<std::vector<std::string>>(app, f, "--gens", "Word whose length enters the statistic (repeatable)",
                                  [](ExperimentConfig& c, const std::vector<std::string>& v) { c.gens = v; });
    add<long>(app, f, "--n", "Coefficient bound N", [](ExperimentConfig& c, const long& v) { c.n = v; });
    add<unsigned>(app, f, "--convergents", "Continued-fraction depth for the first two lengths",
                  [](ExperimentConfig& c, const unsigned& v) { c.depth = v; });
  }
  if (opts & kRadius)
    add<unsigned>(app, f, "--radius", "Word-ball radius", [](ExperimentConfig& c, const unsigned& v) { c.radius = v; });
  if (opts & kGenerator)
    add<std::vector<std::string>>(app, f, "--generator", "Generator \"NAME = a, b; c, d\" (repeatable)",
                                  [](ExperimentConfig& c, const std::vector<std::string>& v) {
                                    c.generators.clear();
                                    for (const auto& g : v) {
                                      auto eq = g.find('=');
                                      if (eq == std::string::npos) throw ValidationError("generator needs NAME = matrix");
                                      c.generators[trim(g.substr(0, eq))] = parse_matrix(g.substr(eq + 1));
                                    }
                                  });
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read config '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

const std::set<std::string> kModels{"torus", "thurston-veech", "chart"};

}  // namespace

// ---------------------------------------------------------------------------

QuadExt parse_quad(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw ValidationError("empty scalar");
  // Split into signed terms at + or − outside parentheses and exponents.
  std::vector<std::string> terms;
  std::string cur;
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char ch = s[i];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    bool exponent = i > 0 && (s[i - 1] == 'e' || s[i - 1] == 'E');
    if ((ch == '+' || ch == '-') && depth == 0 && !cur.empty() && !exponent) {
      terms.push_back(cur);
      cur.clear();
    }
    cur += ch;
  }
  terms.push_back(cur);
  QuadExt sum(0);
  for (std::string t : terms) {
    bool negative = false;
    while (!t.empty() && (t[0] == '+' || t[0] == '-')) {
      negative = negative != (t[0] == '-');
      t.erase(0, 1);
    }
    QuadExt term;
    auto root = t.find("sqrt(");
    if (root == std::string::npos) {
      term = QuadExt(parse_rational(t));
    } else {
      Rational coeff = 1;
      if (root > 0) {
        if (t[root - 1] != '*') throw ValidationError("malformed scalar '" + text + "'");
        coeff = parse_rational(t.substr(0, root - 1));
      }
      if (t.back() != ')') throw ValidationError("malformed scalar '" + text + "'");
      Rational radicand = parse_rational(t.substr(root + 5, t.size() - root - 6));
      term = QuadExt(coeff) * QuadExt::sqrt_of(radicand);
    }
    sum += negative ? -term : term;
  }
  return sum;
}

Vec<QuadExt> parse_vector(const std::string& text) {
  std::string body = trim(text);
  if (!body.empty() && body.front() == '(' && body.back() == ')') body = body.substr(1, body.size() - 2);
  Vec<QuadExt> v;
  for (const auto& e : split(body, ',')) v.push_back(parse_quad(e));
  return v;
}

Matrix<Rational> parse_matrix(const std::string& text) {
  auto rows = split(text, ';');
  std::vector<std::vector<std::string>> cells;
  for (const auto& r : rows) cells.push_back(split(r, ','));
  Matrix<Rational> m(cells.size(), cells[0].size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].size() != m.cols()) throw ValidationError("ragged matrix '" + text + "'");
    for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = parse_rational(cells[i][k]);
  }
  return m;
}

ojson to_json(const QuadExt& x) {
  ojson j;
  j["kind"] = "quad";
  j["a"] = rational_json(x.a());
  j["b"] = rational_json(x.b());
  j["d"] = integer_json(x.d());
  j["decimal"] = to_decimal(x.to_enclosure(), kDigits);
  return j;
}

ojson to_json(const Enclosure& e, const Rational& eps) {
  Enclosure r = e.is_point() ? e : refine(e, eps);
  ojson j;
  j["kind"] = "enclosure";
  j["lo"] = rational_json(r.lo());
  j["hi"] = rational_json(r.hi());
  j["decimal"] = to_decimal(r, kDigits);
  return j;
}

ojson to_json(const Real& x, const Rational& eps) {
  if (const QuadExt* q = x.exact()) return to_json(*q);
  return to_json(x.enclosure(), eps);
}

QuadExt quad_from_json(const json& j) {
  if (!j.is_object() || j.value("kind", "") != "quad") throw ValidationError("expected a quad scalar");
  return QuadExt(rational_from_json(j.at("a")), rational_from_json(j.at("b")), integer_from_json(j.at("d")));
}

Enclosure enclosure_from_json(const json& j) {
  if (!j.is_object() || j.value("kind", "") != "enclosure") throw ValidationError("expected an enclosure");
  return Enclosure(rational_from_json(j.at("lo")), rational_from_json(j.at("hi")));
}

Real real_from_json(const json& j) {
  if (j.is_object() && j.value("kind", "") == "enclosure") return Real(enclosure_from_json(j));
  return Real(scalar_from_json(j));
}

void ExperimentConfig::validate() const {
  if (schema != 1) throw ValidationError("unsupported config schema " + std::to_string(schema));
  if (!model.empty() && !kModels.count(model)) throw ValidationError("unknown model '" + model + "'");
  if (n_max < 1) throw ValidationError("n_max must be at least 1");
  if (tolerance <= 0) throw ValidationError("tolerance must be positive");
  if (format != "csv" && format != "json") throw ValidationError("format must be csv or json");
  for (const auto& [name, m] : generators)
    if (m.rows() != m.cols()) throw ValidationError("generator '" + name + "' is not square");
}

ExperimentConfig parse_config(const std::string& text, ExperimentConfig c) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ValidationError("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col));
  }
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  if (!j.contains("schema")) throw ValidationError("config is missing \"schema\"");
  auto str_list = [](const json& v) {
    std::vector<std::string> out;
    for (const auto& x : v) out.push_back(x.get<std::string>());
    return out;
  };
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "schema") c.schema = v.get<int>();
      else if (key == "model") c.model = v.get<std::string>();
      else if (key == "generators") {
        c.generators.clear();
        for (const auto& [name, m] : v.items()) c.generators[name] = matrix_from_json(m);
      } else if (key == "matrix") c.matrix = matrix_from_json(v);
      else if (key == "word") c.word = v.get<std::string>();
      else if (key == "g") c.g = v.get<std::string>();
      else if (key == "h") c.h = v.get<std::string>();
      else if (key == "z") {
        if (v.is_array()) {
          std::string s;
          for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + scalar_from_json(v[i]).to_string();
          c.z = s;
        } else {
          c.z = v.get<std::string>();
        }
      } else if (key == "gens") c.gens = str_list(v);
      else if (key == "samples") c.samples = str_list(v);
      else if (key == "n_max") c.n_max = v.get<unsigned>();
      else if (key == "n") c.n = v.get<long>();
      else if (key == "radius") c.radius = v.get<unsigned>();
      else if (key == "depth") c.depth = v.get<unsigned>();
      else if (key == "tolerance") c.tolerance = rational_from_json(v);
      else if (key == "format") c.format = v.get<std::string>();
      else if (key == "out") c.out = v.get<std::string>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "fixtures") c.fixtures = v.get<unsigned>();
      else if (key == "nonconvex") c.nonconvex = v.get<bool>();
      else if (key == "arithmetic") c.arithmetic = v.get<bool>();
      else throw ValidationError("unknown config field '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config type error: ") + e.what());
  }
  c.validate();
  return c;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Cross-ratios of measured foliations and length spectra", "crossratio-lab");
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print this help message and exit");  // -h would clash with --h
  std::vector<std::unique_ptr<Leaf>> leaves;
  auto group = [&](const std::string& name, const std::string& help) {
    auto* g = app.add_subcommand(name, help);
    g->require_subcommand(1);
    return g;
  };
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, unsigned opts, Handler h) {
    auto l = std::make_unique<Leaf>();
    l->app = parent->add_subcommand(name, help);
    l->handler = h;
    l->group = parent->get_name();
    add_options(l->app, l->flags, opts);
    leaves.push_back(std::move(l));
  };
  auto* torus = group("torus", "Torus model: SL(2,Z) acting on the weight plane");
  leaf(torus, "classify", "Classify a word or matrix", kWord | kMatrix, torus_classify);
  leaf(torus, "foliations", "Fixed foliations and stretch factor", kWord | kG, torus_foliations);
  leaf(torus, "cross-ratio", "Cross-ratio of fixed foliations, two ways", kG | kH, torus_cross_ratio);
  leaf(torus, "prop24", "Stretch-factor ratio table for g^n h^n", kG | kH | kNMax, torus_prop24);
  leaf(torus, "lemma23", "Normalized iterate convergence table", kG | kSamples | kNMax, torus_lemma23);
  leaf(torus, "forlarge", "lambda^-2n i(z, g^-2n z) against C", kG | kZ | kNMax, torus_forlarge);
  leaf(torus, "iceberg", "Piece values at a zero of a convex PL form", kZ | kIceberg, torus_iceberg);
  leaf(torus, "pn", "P_n products and the linear recurrence", kG | kZ | kNMax | kArith, torus_pn);
  auto* tv = group("tv", "Thurston-Veech construction");
  leaf(tv, "build", "Curve system representation", kMatrix, tv_build);
  leaf(tv, "stretch", "Stretch factor of a word in A, B", kMatrix | kWord, tv_stretch_cmd);
  auto* chart = group("chart", "Linear chart models");
  leaf(chart, "functional", "Intersection functional of a word", kWord | kG | kGenerator, chart_functional);
  leaf(chart, "cross-ratio", "Cross-ratio from functionals alone", kG | kH | kGenerator, chart_cross_ratio);
  auto* spectrum = group("spectrum", "Length spectra");
  leaf(spectrum, "scan", "Lengths over a word ball", kRadius | kGenerator, spectrum_scan);
  leaf(spectrum, "gap", "Gap statistic of integer combinations of lengths", kGens | kGenerator, spectrum_gap);

  try {
    try {
      std::vector<std::string> reversed(args.rbegin(), args.rend());
      app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kOk;
    } catch (const CLI::ParseError& e) {
      if (e.get_exit_code() == 0) {
        out << app.help();
        return kOk;
      }
      err << "error: " << e.what() << "\n";
      return kValidation;
    }
    for (const auto& l : leaves) {
      if (!l->app->parsed()) continue;
      ExperimentConfig config;
      if (!l->flags.config.empty()) config = parse_config(read_file(l->flags.config));
      for (const auto& [name, set] : l->flags.setters) set(config);
      config.validate();
      const std::string& g = l->group;
      const std::string& m = config.model;
      bool model_ok = m.empty() || (g == "torus" && m == "torus") || (g == "tv" && m == "thurston-veech") ||
                      ((g == "chart" || g == "spectrum") && m != "thurston-veech");
      if (!model_ok)
        throw ValidationError("config model '" + config.model + "' does not match command '" + g + "'");
      Report report(g + " " + l->app->get_name(), config.tolerance);
      l->handler(config, report);
      std::string bytes = report.render(config.format);
      if (config.out.empty()) {
        out << bytes;
      } else {
        std::ofstream file(config.out, std::ios::binary);
        if (!file) throw ValidationError("cannot write '" + config.out + "'");
        file << bytes;
      }
      return kOk;
    }
    err << "error: no command given\n";
    return kValidation;
  } catch (const PrecisionExhausted& e) {
    err << "precision exhausted: " << e.what() << "\n";
    return kPrecision;
  } catch (const HypothesisViolation& e) {
    err << "hypothesis violation: " << e.what() << "\n";
    return kHypothesis;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace crossratio::cli
