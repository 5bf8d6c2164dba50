// Command-line front end over the C interface. Exit status: 0 success,
// 1 verification failure or I/O error, 2 usage error.
#include <qfdiv/qfdiv.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#ifndef QFDIV_DATA_DIR
#define QFDIV_DATA_DIR "data"
#endif

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Library failure carrying the exit status it maps to.
struct CliError {
  int exitCode;
  std::string message;
};

void check(qfdiv_status s) {
  if (s == QFDIV_OK) return;
  const int code = s == QFDIV_ERR_DOMAIN ? kExitUsage : kExitFailure;
  throw CliError{code, qfdiv_last_error()};
}

struct FormDeleter {
  void operator()(qfdiv_form* f) const { qfdiv_form_destroy(f); }
};
struct ResultDeleter {
  void operator()(qfdiv_result* r) const { qfdiv_result_destroy(r); }
};
struct RhoDeleter {
  void operator()(qfdiv_rho_table* t) const { qfdiv_rho_table_destroy(t); }
};
using FormPtr = std::unique_ptr<qfdiv_form, FormDeleter>;
using ResultPtr = std::unique_ptr<qfdiv_result, ResultDeleter>;

FormPtr makeForm(int n) {
  qfdiv_form* f = nullptr;
  check(qfdiv_form_create(n, &f));
  return FormPtr(f);
}

size_t sizeOf(const qfdiv_result* r) {
  size_t n = 0;
  check(qfdiv_result_size(r, &n));
  return n;
}

// 15 significant digits. Rounding through text makes the JSON writer emit
// the same digits as the CSV writer.
std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}
double rounded(double v) { return std::strtod(num(v).c_str(), nullptr); }

std::string csvField(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// One table, written as CSV (header + rows) or as JSON {config, rows}.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> cells;  // CSV text
  std::vector<json> rows;                       // JSON objects
};

class Output {
 public:
  Output(std::string path, std::string format, json config)
      : path_(std::move(path)), format_(std::move(format)), config_(std::move(config)) {}

  const std::string& format() const { return format_; }

  void table(const Table& t) const {
    std::ostringstream os;
    if (format_ == "csv") {
      os << "# config: " << config_.dump() << "\r\n";
      for (size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << csvField(t.header[i]);
      os << "\r\n";
      for (const auto& row : t.cells) {
        for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csvField(row[i]);
        os << "\r\n";
      }
    } else {
      json doc;
      doc["config"] = config_;
      doc["rows"] = t.rows;
      os << doc.dump(2) << "\n";
    }
    write(os.str());
  }

  // A single record; CSV gets one header row and one data row.
  void record(json body) const {
    if (format_ == "csv") {
      Table t;
      std::vector<std::string> row;
      for (auto& [k, v] : body.items()) {
        t.header.push_back(k);
        row.push_back(v.is_string() ? v.get<std::string>() : v.dump());
      }
      t.cells.push_back(row);
      table(t);
      return;
    }
    json doc;
    doc["config"] = config_;
    for (auto& [k, v] : body.items()) doc[k] = v;
    write(doc.dump(2) + "\n");
  }

 private:
  void write(const std::string& text) const {
    if (path_.empty() || path_ == "-") {
      std::cout << text;
      std::cout.flush();
      return;
    }
    std::ofstream f(path_, std::ios::binary);
    if (!f) throw CliError{kExitFailure, "cannot open " + path_ + " for writing"};
    f << text;
    if (!f) throw CliError{kExitFailure, "write to " + path_ + " failed"};
  }

  std::string path_;
  std::string format_;
  json config_;
};

json interval(qfdiv_interval i) { return json{{"value", rounded(i.value)}, {"halfwidth", rounded(i.halfwidth)}}; }

struct Grid {
  uint64_t start = 0, stop = 0;
  double ratio = 0;
};

Grid parseGrid(const std::string& text) {
  Grid g;
  char tail = 0;
  unsigned long long a = 0, b = 0;
  if (std::sscanf(text.c_str(), "%llu:%llu:%lf%c", &a, &b, &g.ratio, &tail) != 3) {
    throw CliError{kExitUsage, "--grid expects start:stop:ratio, got '" + text + "'"};
  }
  g.start = a;
  g.stop = b;
  return g;
}

std::string readFile(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw CliError{kExitUsage, "cannot read " + path};
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct Options {
  std::vector<int> forms;
  uint64_t x = 0;
  uint64_t modulus = 0;
  uint64_t dmin = 64;
  uint64_t dmax = 0;
  uint64_t h = 16;
  std::string mRule = "equal";
  uint64_t limit = 0;
  uint64_t cutoff = 400000;
  std::string grid = "512:4096:2";
  std::string engine = "both";
  std::string suite = "all";
  int criterion = 0;
  std::string thresholds;
  std::string out = "-";
  std::string format;
  unsigned threads = 0;
  uint64_t seed = 1;
};

int singleForm(const Options& o) {
  if (o.forms.size() != 1) throw CliError{kExitUsage, "--form takes exactly one N for this subcommand"};
  return o.forms.front();
}

json baseConfig(const std::string& sub, const Options& o) {
  json c;
  c["subcommand"] = sub;
  if (o.forms.size() == 1) {
    c["form"] = o.forms.front();
  } else {
    c["form"] = o.forms;
  }
  c["threads"] = o.threads;
  c["seed"] = o.seed;
  return c;
}

int runSum(const Options& o, json config) {
  const auto form = makeForm(singleForm(o));
  config["x"] = o.x;
  config["engine"] = o.engine;
  Output out(o.out, o.format.empty() ? "json" : o.format, config);
  json body;
  std::optional<uint64_t> brute;
  if (o.engine == "brute" || o.engine == "both") {
    uint64_t s = 0;
    check(qfdiv_sum_brute(form.get(), o.x, o.threads, &s));
    brute = s;
  }
  bool agree = true;
  if (o.engine == "hyperbola" || o.engine == "both") {
    qfdiv_sum d{};
    check(qfdiv_sum_hyperbola(form.get(), o.x, o.threads, 0, &d));
    body["R"] = d.r;
    body["Q"] = d.q;
    body["T"] = d.t;
    body["S"] = d.s;
    body["bound"] = d.bound;
    body["threshold"] = d.threshold;
    if (brute) {
      body["bruteS"] = *brute;
      agree = *brute == d.s;
      body["enginesAgree"] = agree;
    }
  } else {
    body["S"] = *brute;
  }
  out.record(body);
  if (!agree) {
    std::cerr << "engines disagree\n";
    return kExitFailure;
  }
  return kExitOk;
}

int runRoots(const Options& o, json config) {
  const auto form = makeForm(singleForm(o));
  config["modulus"] = o.modulus;
  Output out(o.out, o.format.empty() ? "json" : o.format, config);
  qfdiv_result* raw = nullptr;
  check(qfdiv_roots(form.get(), o.modulus, &raw));
  ResultPtr res(raw);
  qfdiv_roots_summary sum{};
  check(qfdiv_roots_summary_get(res.get(), &sum));
  Table t;
  t.header = {"root", "in_lifting", "in_representations", "r", "s"};
  json lifting = json::array(), fromReps = json::array(), reps = json::array();
  for (size_t i = 0; i < sizeOf(res.get()); ++i) {
    qfdiv_root_row r{};
    check(qfdiv_roots_row(res.get(), i, &r));
    if (r.in_lifting) lifting.push_back(r.root);
    if (r.in_representations) fromReps.push_back(r.root);
    json row{{"root", r.root}, {"in_lifting", r.in_lifting != 0}, {"in_representations", r.in_representations != 0}};
    if (r.has_representation) {
      reps.push_back(json{{"root", r.root}, {"r", r.r}, {"s", r.s}});
      row["r"] = r.r;
      row["s"] = r.s;
    }
    t.rows.push_back(row);
    t.cells.push_back({std::to_string(r.root), std::to_string(r.in_lifting), std::to_string(r.in_representations),
                       r.has_representation ? std::to_string(r.r) : "", r.has_representation ? std::to_string(r.s) : ""});
  }
  if (out.format() == "csv") {
    out.table(t);
  } else {
    out.record(json{{"modulus", sum.modulus},
                    {"branch", sum.branch},
                    {"rootsByLifting", lifting},
                    {"rootsFromRepresentations", fromReps},
                    {"representations", reps},
                    {"setsEqual", sum.sets_equal != 0}});
  }
  return kExitOk;
}

int runApprox(const Options& o, json config) {
  const auto form = makeForm(singleForm(o));
  config["dmax"] = o.dmax;
  Output out(o.out, o.format.empty() ? "csv" : o.format, config);
  qfdiv_result* raw = nullptr;
  check(qfdiv_approx_scan(form.get(), o.dmax, &raw));
  ResultPtr res(raw);
  Table t;
  t.header = {"d", "v", "a", "q", "q_over_sqrt_d", "branch"};
  for (size_t i = 0; i < sizeOf(res.get()); ++i) {
    qfdiv_approx_row r{};
    check(qfdiv_approx_row_get(res.get(), i, &r));
    t.cells.push_back({std::to_string(r.d), std::to_string(r.v), std::to_string(r.a), std::to_string(r.q),
                       num(r.q_over_sqrt_d), r.branch});
    t.rows.push_back(json{{"d", r.d}, {"v", r.v}, {"a", r.a}, {"q", r.q},
                          {"q_over_sqrt_d", rounded(r.q_over_sqrt_d)}, {"branch", r.branch}});
  }
  out.table(t);
  return kExitOk;
}

int runSieve(const Options& o, json config) {
  const auto form = makeForm(singleForm(o));
  qfdiv_m_rule rule;
  if (o.mRule == "equal") {
    rule = QFDIV_M_EQUAL_D;
  } else if (o.mRule == "sqrt") {
    rule = QFDIV_M_SQRT_D;
  } else if (o.mRule == "square") {
    rule = QFDIV_M_SQUARE_D;
  } else {
    throw CliError{kExitUsage, "--m-rule must be equal, sqrt or square"};
  }
  config["dmin"] = o.dmin;
  config["dmax"] = o.dmax;
  config["h"] = o.h;
  config["m_rule"] = o.mRule;
  Output out(o.out, o.format.empty() ? "csv" : o.format, config);
  qfdiv_result* raw = nullptr;
  check(qfdiv_sieve_study(form.get(), o.dmin, o.dmax, o.h, rule, o.threads, &raw));
  ResultPtr res(raw);
  Table t;
  t.header = {"D", "H", "M", "value", "boundRatio"};
  for (size_t i = 0; i < sizeOf(res.get()); ++i) {
    qfdiv_sieve_row r{};
    check(qfdiv_sieve_row_get(res.get(), i, &r));
    t.cells.push_back({std::to_string(r.D), std::to_string(r.H), std::to_string(r.M), num(r.value), num(r.bound_ratio)});
    t.rows.push_back(json{{"D", r.D}, {"H", r.H}, {"M", r.M}, {"value", rounded(r.value)},
                          {"boundRatio", rounded(r.bound_ratio)}});
  }
  out.table(t);
  return kExitOk;
}

int runRho(const Options& o, json config) {
  const auto form = makeForm(singleForm(o));
  config["limit"] = o.limit;
  Output out(o.out, o.format.empty() ? "csv" : o.format, config);
  qfdiv_rho_table* raw = nullptr;
  check(qfdiv_rho_table_create(form.get(), o.limit, &raw));
  std::unique_ptr<qfdiv_rho_table, RhoDeleter> table(raw);
  Table t;
  t.header = {"d", "rho0", "rho", "E_N"};
  for (uint64_t d = 1; d <= o.limit; ++d) {
    qfdiv_rho_row r{};
    check(qfdiv_rho_row_get(table.get(), d, &r));
    t.cells.push_back({std::to_string(r.d), std::to_string(r.rho0), std::to_string(r.rho), num(r.error)});
    t.rows.push_back(json{{"d", r.d}, {"rho0", r.rho0}, {"rho", r.rho}, {"E_N", rounded(r.error)}});
  }
  out.table(t);
  return kExitOk;
}

int runConstants(const Options& o, json config) {
  const auto form = makeForm(singleForm(o));
  config["cutoff"] = o.cutoff;
  Output out(o.out, o.format.empty() ? "json" : o.format, config);
  qfdiv_constants k{};
  check(qfdiv_constants_compute(form.get(), o.cutoff, &k));
  json body{{"N", k.n},
            {"cutoff", k.cutoff},
            {"L1", rounded(k.l1)},
            {"L2", rounded(k.l2)},
            {"G1", rounded(k.g1)},
            {"G2", interval(k.g2)},
            {"A", rounded(k.a)},
            {"APrinted", rounded(k.a_printed)},
            {"eIntegral", interval(k.e_integral)},
            {"errorConstant", rounded(k.error_constant)},
            {"RMain", rounded(k.r_main)},
            {"QMain", rounded(k.q_main)},
            {"TMain", rounded(k.t_main)},
            {"QWideMain", rounded(k.q_wide_main)},
            {"TWideMain", rounded(k.t_wide_main)},
            {"QConstant", rounded(k.q_constant)},
            {"TBracket", rounded(k.t_bracket)},
            {"C1", rounded(k.c1)},
            {"C2", interval(k.c2)},
            {"C2Printed", interval(k.c2_printed)},
            {"flagged", k.flagged != 0}};
  out.record(body);
  return kExitOk;
}

int runExperiment(const Options& o, json config) {
  const auto form = makeForm(singleForm(o));
  const Grid g = parseGrid(o.grid);
  config["grid"] = o.grid;
  config["cutoff"] = o.cutoff;
  Output out(o.out, o.format.empty() ? "csv" : o.format, config);
  size_t count = 0;
  check(qfdiv_geometric_grid(g.start, g.stop, g.ratio, nullptr, 0, &count));
  std::vector<uint64_t> xs(count);
  check(qfdiv_geometric_grid(g.start, g.stop, g.ratio, xs.data(), xs.size(), &count));
  qfdiv_result* raw = nullptr;
  check(qfdiv_residual_study(form.get(), xs.data(), xs.size(), o.cutoff, o.threads, &raw));
  ResultPtr res(raw);
  Table t;
  t.header = {"x", "S", "mainTerm", "residual", "residualOverX32", "residualOverX2", "rOverX2LogX",
              "qOverX2", "tOverX2", "qWideOverX2", "tWideOverX2"};
  for (size_t i = 0; i < sizeOf(res.get()); ++i) {
    qfdiv_residual_row r{};
    check(qfdiv_residual_row_get(res.get(), i, &r));
    const double vals[] = {r.main_term, r.residual, r.residual_over_x32, r.residual_over_x2, r.r_over_x2_log_x,
                           r.q_over_x2, r.t_over_x2, r.q_wide_over_x2, r.t_wide_over_x2};
    std::vector<std::string> cells = {std::to_string(r.x), std::to_string(r.s)};
    json row{{"x", r.x}, {"S", r.s}};
    for (size_t j = 0; j < std::size(vals); ++j) {
      cells.push_back(num(vals[j]));
      row[t.header[j + 2]] = rounded(vals[j]);
    }
    t.cells.push_back(cells);
    t.rows.push_back(row);
  }
  out.table(t);
  return kExitOk;
}

int runVerify(const Options& o, json config) {
  std::string thresholds;
  std::string source = "built-in";
  if (!o.thresholds.empty()) {
    thresholds = readFile(o.thresholds);
    source = o.thresholds;
  } else if (std::ifstream(QFDIV_DATA_DIR "/thresholds.json")) {
    thresholds = readFile(QFDIV_DATA_DIR "/thresholds.json");
    source = QFDIV_DATA_DIR "/thresholds.json";
  }
  config["suite"] = o.criterion ? "criterion " + std::to_string(o.criterion) : o.suite;
  config["dmax"] = o.dmax;
  config["thresholds"] = source;
  qfdiv_result* raw = nullptr;
  const char* tj = thresholds.empty() ? nullptr : thresholds.c_str();
  if (o.criterion) {
    check(qfdiv_verify_criterion(o.criterion, tj, o.threads, o.seed, &raw));
  } else {
    check(qfdiv_verify_suite(o.suite.c_str(), o.forms.data(), o.forms.size(), o.dmax, tj, o.threads, o.seed, &raw));
  }
  ResultPtr res(raw);
  bool ok = true;
  Table t;
  t.header = {"id", "name", "passed", "detail"};
  for (size_t i = 0; i < sizeOf(res.get()); ++i) {
    qfdiv_check_row r{};
    check(qfdiv_check_row_get(res.get(), i, &r));
    ok = ok && r.passed;
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.1f", r.seconds);
    std::cerr << (r.passed ? "PASS " : "FAIL ") << r.id << " " << r.name << ": " << r.detail << " (" << secs
              << " s)\n";
    t.cells.push_back({r.id, r.name, r.passed ? "true" : "false", r.detail});
    t.rows.push_back(json{{"id", r.id}, {"name", r.name}, {"passed", r.passed != 0}, {"detail", r.detail}});
  }
  if (o.out != "-") Output(o.out, o.format.empty() ? "json" : o.format, config).table(t);
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Divisor sums over n^2 + N m^2 for class-number-one N"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--threads", o.threads, "Worker threads (0: QFDIV_THREADS or hardware)");
  app.add_option("--seed", o.seed, "Seed of the randomized factor splitter and sampled checks");
  app.add_option("--out", o.out, "Output file ('-' for stdout)");
  app.add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto addForm = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--form", o.forms, "N in {1, 2, 3, 7, 11, 19, 43, 67, 163}");
    if (required) opt->required();
  };
  auto* sum = app.add_subcommand("sum", "S_N(x) and its decomposition 2R - Q - T");
  addForm(sum, true);
  sum->add_option("--x", o.x, "Box side x")->required();
  sum->add_option("--engine", o.engine)->check(CLI::IsMember({"brute", "hyperbola", "both"}));

  auto* roots = app.add_subcommand("roots", "Roots of v^2 + N = 0 mod d and their representations");
  addForm(roots, true);
  roots->add_option("--modulus", o.modulus, "Modulus d")->required();

  auto* approx = app.add_subcommand("approx", "Rational approximations a/q to v/d for all roots, d <= dmax");
  addForm(approx, true);
  approx->add_option("--dmax", o.dmax)->required();

  auto* sieve = app.add_subcommand("sieve-bound", "Large sieve sums over a dyadic grid of D");
  sieve->set_help_flag("--help", "Print this help message and exit");
  addForm(sieve, true);
  sieve->add_option("--dmin", o.dmin);
  sieve->add_option("--dmax", o.dmax)->required();
  sieve->add_option("--h", o.h);
  sieve->add_option("--m-rule", o.mRule, "equal, sqrt or square");

  auto* rho = app.add_subcommand("rho", "rho_0, rho and E_N for d <= limit");
  addForm(rho, true);
  rho->add_option("--limit", o.limit)->required();

  auto* cons = app.add_subcommand("constants", "Asymptotic constants with uncertainties");
  addForm(cons, true);
  cons->add_option("--cutoff", o.cutoff);

  auto* exp = app.add_subcommand("experiment", "Residuals against C1 x^2 log x + C2 x^2 on a geometric grid");
  addForm(exp, true);
  exp->add_option("--grid", o.grid, "start:stop:ratio");
  exp->add_option("--cutoff", o.cutoff);

  auto* ver = app.add_subcommand("verify", "Run invariant suites; exit 1 on any counterexample");
  addForm(ver, false);
  ver->add_option("--suite", o.suite, "bijection, approx, sieve, rho, envelope, constants, sums, theorem, "
                                      "identities, lattice or all");
  ver->add_option("--criterion", o.criterion, "Acceptance criterion 1..10")->check(CLI::Range(1, 10));
  ver->add_option("--dmax", o.dmax);
  ver->add_option("--thresholds", o.thresholds, "Thresholds JSON (default " QFDIV_DATA_DIR "/thresholds.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    check(qfdiv_set_seed(o.seed));
    check(qfdiv_set_threads(o.threads));
    for (int n : o.forms) makeForm(n);
    CLI::App* chosen = app.get_subcommands().front();
    const std::string name = chosen->get_name();
    json config = baseConfig(name, o);
    if (!o.format.empty()) config["format"] = o.format;
    if (name == "sum") return runSum(o, config);
    if (name == "roots") return runRoots(o, config);
    if (name == "approx") return runApprox(o, config);
    if (name == "sieve-bound") return runSieve(o, config);
    if (name == "rho") return runRho(o, config);
    if (name == "constants") return runConstants(o, config);
    if (name == "experiment") return runExperiment(o, config);
    return runVerify(o, config);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.exitCode;
  }
}
