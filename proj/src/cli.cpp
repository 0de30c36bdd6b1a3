#include "cohloop/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cohloop/asymptotics.hpp"
#include "cohloop/coherent.hpp"
#include "cohloop/hopf.hpp"
#include "cohloop/numeric.hpp"
#include "cohloop/stationary_phase.hpp"
#include "cohloop/su2.hpp"
#include "cohloop/verify.hpp"

namespace cohloop {
namespace {

/// Usage or input error: maps to exit code 2.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// All floating-point output uses 17 significant digits so files are
/// reproducible bit-for-bit and diffs are meaningful.
std::string g17(double x) {
  if (std::isnan(x)) return "nan";
  if (x == 0.0) return "0";  // merge the two signed zeros
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

/// JSON has no nan/inf literals; those become null.
std::string j17(double x) {
  if (std::isnan(x) || std::isinf(x)) return "null";
  return g17(x);
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out.push_back('\\');
      out.push_back(c);
    } else if (static_cast<unsigned char>(c) < 0x20) {
      char buf[8];
      std::snprintf(buf, sizeof(buf), "\\u%04x", c);
      out += buf;
    } else {
      out.push_back(c);
    }
  }
  return out;
}

/// Numeric table with a fixed column schema, emitted as CSV or as an array
/// of JSON objects keyed by the column names.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

void write_csv(std::ostream& os, const Table& t) {
  for (size_t c = 0; c < t.header.size(); ++c) os << (c ? "," : "") << t.header[c];
  os << "\n";
  for (const auto& row : t.rows) {
    for (size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << g17(row[c]);
    os << "\n";
  }
}

void write_json(std::ostream& os, const Table& t) {
  os << "[\n";
  for (size_t r = 0; r < t.rows.size(); ++r) {
    os << "{";
    for (size_t c = 0; c < t.rows[r].size(); ++c)
      os << (c ? "," : "") << "\"" << t.header[c] << "\":" << j17(t.rows[r][c]);
    os << "}" << (r + 1 < t.rows.size() ? "," : "") << "\n";
  }
  os << "]\n";
}

struct RunConfig {
  double j = 0.0;
  int k = 0;
  double m1 = 0.0, m2 = 0.0;
  double beta = 0.0;
  std::string beta_range;
  std::string grid;
  std::string out_path;
  std::string format = "csv";
  std::string config_path;
  double tol = 1.0;
  int nodes = 0;
  unsigned long long seed = 20260814ull;
  bool inject_lift_sign_flip = false;

  bool has_j = false, has_k = false, has_m1 = false, has_m2 = false, has_beta = false,
       has_beta_range = false, has_grid = false;
};

/// Option handles of one subcommand, used to tell flag-supplied values from
/// defaults when merging an optional JSON config file (flags win).
struct OptionRefs {
  CLI::Option* j = nullptr;
  CLI::Option* k = nullptr;
  CLI::Option* m1 = nullptr;
  CLI::Option* m2 = nullptr;
  CLI::Option* beta = nullptr;
  CLI::Option* beta_range = nullptr;
  CLI::Option* grid = nullptr;
  CLI::Option* out = nullptr;
  CLI::Option* format = nullptr;
  CLI::Option* tol = nullptr;
  CLI::Option* nodes = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* inject = nullptr;
  CLI::Option* config = nullptr;
};

bool counted(const CLI::Option* o) { return o != nullptr && o->count() > 0; }

void merge_config_file(RunConfig& cfg, const OptionRefs& refs) {
  std::ifstream f(cfg.config_path);
  if (!f) throw ConfigError("cannot open config file: " + cfg.config_path);
  nlohmann::json jc;
  try {
    f >> jc;
  } catch (const std::exception& e) {
    throw ConfigError("config file is not valid JSON: " + std::string(e.what()));
  }
  if (!jc.is_object()) throw ConfigError("config file must hold a JSON object");

  struct Key {
    const char* name;
    const CLI::Option* opt;  // null when the active subcommand lacks the flag
  };
  const Key keys[] = {{"j", refs.j},           {"k", refs.k},
                      {"m1", refs.m1},         {"m2", refs.m2},
                      {"beta", refs.beta},     {"beta-range", refs.beta_range},
                      {"grid", refs.grid},     {"out", refs.out},
                      {"format", refs.format}, {"tol", refs.tol},
                      {"nodes", refs.nodes},   {"seed", refs.seed},
                      {"inject-lift-sign-flip", refs.inject}};
  for (const auto& item : jc.items()) {
    const Key* match = nullptr;
    for (const Key& key : keys)
      if (item.key() == key.name) match = &key;
    if (match == nullptr || match->opt == nullptr)
      throw ConfigError("unknown config key for this command: " + item.key());
    if (match->opt->count() > 0) continue;  // flags win over the config file

    const nlohmann::json& v = item.value();
    auto need_number = [&] {
      if (!v.is_number()) throw ConfigError("config key must be a number: " + item.key());
      return v.get<double>();
    };
    auto need_string = [&] {
      if (!v.is_string()) throw ConfigError("config key must be a string: " + item.key());
      return v.get<std::string>();
    };
    const std::string name = item.key();
    if (name == "j") {
      cfg.j = need_number();
      cfg.has_j = true;
    } else if (name == "k") {
      const double raw = need_number();
      cfg.k = static_cast<int>(std::lround(raw));
      if (std::abs(raw - cfg.k) > 1e-9) throw ConfigError("config key k must be an integer");
      cfg.has_k = true;
    } else if (name == "m1") {
      cfg.m1 = need_number();
      cfg.has_m1 = true;
    } else if (name == "m2") {
      cfg.m2 = need_number();
      cfg.has_m2 = true;
    } else if (name == "beta") {
      cfg.beta = need_number();
      cfg.has_beta = true;
    } else if (name == "beta-range") {
      cfg.beta_range = need_string();
      cfg.has_beta_range = true;
    } else if (name == "grid") {
      cfg.grid = need_string();
      cfg.has_grid = true;
    } else if (name == "out") {
      cfg.out_path = need_string();
    } else if (name == "format") {
      cfg.format = need_string();
      if (cfg.format != "csv" && cfg.format != "json")
        throw ConfigError("config key format must be csv or json");
    } else if (name == "tol") {
      cfg.tol = need_number();
    } else if (name == "nodes") {
      const double raw = need_number();
      cfg.nodes = static_cast<int>(std::lround(raw));
      if (std::abs(raw - cfg.nodes) > 1e-9) throw ConfigError("config key nodes must be an integer");
    } else if (name == "seed") {
      const double raw = need_number();
      if (raw < 0) throw ConfigError("config key seed must be nonnegative");
      cfg.seed = static_cast<unsigned long long>(raw);
    } else if (name == "inject-lift-sign-flip") {
      if (!v.is_boolean()) throw ConfigError("config key must be a boolean: " + name);
      cfg.inject_lift_sign_flip = v.get<bool>();
    }
  }
}

/// Representation level from --j / --k (j = k/2); either alone suffices.
int resolve_level(const RunConfig& cfg) {
  int k = 0;
  if (cfg.has_k) {
    k = cfg.k;
    if (cfg.has_j && std::abs(2.0 * cfg.j - k) > 1e-9)
      throw ConfigError("--j and --k disagree: k must equal 2j");
  } else if (cfg.has_j) {
    const long twice = std::lround(2.0 * cfg.j);
    if (std::abs(2.0 * cfg.j - twice) > 1e-9)
      throw ConfigError("--j must be an integer or half-integer");
    k = static_cast<int>(twice);
  } else {
    throw ConfigError("one of --j or --k is required");
  }
  if (k < 1) throw ConfigError("representation level must be positive");
  return k;
}

HalfInt magnetic_value(double v, int k, const char* flag) {
  HalfInt m;
  try {
    m = HalfInt::of(v);
    (void)weight_index(RepLevel{k}, m);  // range and parity
  } catch (const std::exception&) {
    throw ConfigError(std::string(flag) +
                      " must be a (half-)integer in [-j, j] with 2m matching the parity of 2j");
  }
  return m;
}

std::vector<double> parse_beta_range(const std::string& spec) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string field;
  while (std::getline(ss, field, ':')) {
    try {
      size_t used = 0;
      parts.push_back(std::stod(field, &used));
      if (used != field.size()) throw std::invalid_argument(field);
    } catch (const std::exception&) {
      throw ConfigError("--beta-range expects a:b:step with numeric fields");
    }
  }
  if (parts.size() != 3) throw ConfigError("--beta-range expects exactly a:b:step");
  const double a = parts[0], b = parts[1], step = parts[2];
  if (step <= 0.0) throw ConfigError("--beta-range step must be positive");
  if (b < a - 1e-12) throw ConfigError("--beta-range is empty: b < a");
  std::vector<double> betas;
  for (int i = 0;; ++i) {
    const double beta = a + i * step;
    if (beta > b + 1e-9 * step) break;
    betas.push_back(beta);
  }
  return betas;
}

std::pair<int, int> parse_grid(const std::string& spec, int def_rows, int def_cols) {
  if (spec.empty()) return {def_rows, def_cols};
  const size_t x = spec.find('x');
  if (x == std::string::npos) throw ConfigError("--grid expects NxM");
  int rows = 0, cols = 0;
  try {
    size_t ur = 0, uc = 0;
    rows = std::stoi(spec.substr(0, x), &ur);
    cols = std::stoi(spec.substr(x + 1), &uc);
    if (ur != x || uc != spec.size() - x - 1) throw std::invalid_argument(spec);
  } catch (const std::exception&) {
    throw ConfigError("--grid expects NxM with integer fields");
  }
  if (rows < 2 || cols < 2) throw ConfigError("--grid dimensions must be at least 2");
  return {rows, cols};
}

/// Writes the assembled body to --out or to the primary stream.
int emit(const std::string& body, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.out_path.empty()) {
    out << body;
    return 0;
  }
  std::ofstream f(cfg.out_path, std::ios::binary);
  if (!f) {
    err << "cannot open output file: " << cfg.out_path << "\n";
    return 2;
  }
  f << body;
  f.flush();
  if (!f.good()) {
    err << "failed writing output file: " << cfg.out_path << "\n";
    return 2;
  }
  return 0;
}

std::string render(const Table& t, const RunConfig& cfg) {
  std::ostringstream body;
  if (cfg.format == "json")
    write_json(body, t);
  else
    write_csv(body, t);
  return body.str();
}

// ---------------------------------------------------------------- wigner --

int run_wigner(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const int k = resolve_level(cfg);
  if (!cfg.has_m1) throw ConfigError("wigner requires --m1");
  const HalfInt m1 = magnetic_value(cfg.m1, k, "--m1");
  if (cfg.has_beta && cfg.has_beta_range)
    throw ConfigError("give either --beta or --beta-range, not both");

  std::vector<std::pair<double, HalfInt>> sweep;  // (beta, m2)
  if (cfg.has_beta_range) {
    if (!cfg.has_m2) throw ConfigError("--beta-range sweeps beta and requires a fixed --m2");
    const HalfInt m2 = magnetic_value(cfg.m2, k, "--m2");
    for (double beta : parse_beta_range(cfg.beta_range)) sweep.emplace_back(beta, m2);
  } else if (cfg.has_beta) {
    if (cfg.has_m2) {
      sweep.emplace_back(cfg.beta, magnetic_value(cfg.m2, k, "--m2"));
    } else {
      // fixed beta, m2 sweeping over the whole weight ladder in ascending
      // order (one row per m2 = -j..j; the schema keeps the pinned columns)
      for (int twice = -k; twice <= k; twice += 2) sweep.emplace_back(cfg.beta, HalfInt(twice));
    }
  } else {
    throw ConfigError("wigner requires --beta or --beta-range");
  }

  const RepLevel level{k};
  Table t;
  t.header = {"beta", "d_exact", "d_asym", "abs_err", "allowed_flag", "A", "nu", "V"};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& [beta, m2] : sweep) {
    const double exact = wigner_d_exact(level, m2, m1, beta);
    double asym = nan, abs_err = nan, area = nan, nu = nan, volume = nan;
    double flag = 0.0;
    if (classically_allowed(HalfInt(k), m1, m2, beta).allowed) {
      try {
        const AsymptoticResult r = wigner_d_asym(HalfInt(k), m1, m2, beta);
        asym = r.value;
        abs_err = std::abs(asym - exact);
        area = r.ingredients.lune_area;
        nu = r.ingredients.angle;
        volume = r.ingredients.volume;
        flag = 1.0;
      } catch (const std::exception&) {
        flag = 0.0;  // e.g. grazing contact the crossing finder cannot certify
      }
    }
    t.rows.push_back({beta, exact, asym, abs_err, flag, area, nu, volume});
  }
  return emit(render(t, cfg), cfg, out, err);
}

// ----------------------------------------------------------------- field --

int run_field(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const int k = resolve_level(cfg);
  const auto [n_theta, n_phi] = parse_grid(cfg.grid, 121, 64);
  const RepLevel level{k};
  // --m1 selects the loop state of that magnetic number; without it the
  // command fields the coherent state at the north pole
  const RepVector state = cfg.has_m1
                              ? constant_height_state(level, magnetic_value(cfg.m1, k, "--m1"))
                              : coherent_state(level, fiber_point_of(Vec3{0.0, 0.0, 1.0}));
  const std::vector<double> field = fibrewise_norm_field(state, n_theta, n_phi);

  Table t;
  t.header = {"theta", "phi", "norm"};
  for (int i = 0; i < n_theta; ++i)
    for (int l = 0; l < n_phi; ++l)
      t.rows.push_back(
          {PI * i / (n_theta - 1), TWO_PI * l / n_phi, field[i * n_phi + l]});
  return emit(render(t, cfg), cfg, out, err);
}

// ----------------------------------------------------------------- torus --

double figure_coordinate(double param, double period) {
  const double y = std::remainder(PI - TWO_PI * param / period, TWO_PI);
  return y <= -PI ? y + TWO_PI : y;
}

int run_torus(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const int k = resolve_level(cfg);
  if (!cfg.has_m1 || !cfg.has_m2) throw ConfigError("torus requires --m1 and --m2");
  if (!cfg.has_beta) throw ConfigError("torus requires --beta");
  if (cfg.nodes < 0) throw ConfigError("--nodes must be nonnegative");
  const HalfInt m1 = magnetic_value(cfg.m1, k, "--m1");
  const HalfInt m2 = magnetic_value(cfg.m2, k, "--m2");
  const auto [ns, nt] = parse_grid(cfg.grid, 64, 64);

  const Loop gamma = constant_height_loop(k, m2);
  const Loop sigma = Loop::rotated(SU2Element::u_y(cfg.beta), constant_height_loop(k, m1));
  if (gamma.is_point() || sigma.is_point())
    throw ConfigError("torus requires non-polar heights: |m| < j for both loops");
  const LiftedLoop lifted_gamma(gamma), lifted_sigma(sigma);
  const TorusIntegrand ig = loop_pair_integrand(k, lifted_gamma, lifted_sigma);
  const RepLevel level{k};

  Table t;
  t.header = {"s", "t", "magnitude", "phase"};
  for (int i = 0; i < ns; ++i)
    for (int l = 0; l < nt; ++l) {
      const double s = ig.period_s * i / ns;
      const double tt = ig.period_t * l / nt;
      const complexd v = coherent_inner(level, lifted_gamma.at(s), lifted_sigma.at(tt));
      t.rows.push_back({s, tt, std::abs(v), std::arg(v)});
    }
  const int rc = emit(render(t, cfg), cfg, out, err);
  if (rc != 0) return rc;

  // Saddle report: stationary points of the overlap phase, both in raw loop
  // parameters and in the centered coordinates wrap(pi - 2 pi s / T).
  // Written beside the data (to stdout when the table went to a file,
  // otherwise to the diagnostic stream) so the table stays parseable.
  std::ostream& summary = cfg.out_path.empty() ? err : out;
  try {
    auto points = find_stationary_points(ig);
    std::sort(points.begin(), points.end(), [&](const CriticalPoint& a, const CriticalPoint& b) {
      const double ua = figure_coordinate(a.s, ig.period_s);
      const double ub = figure_coordinate(b.s, ig.period_s);
      return ua != ub ? ua < ub : a.t < b.t;
    });
    summary << "saddles_found " << points.size() << "\n";
    for (const CriticalPoint& p : points)
      summary << "saddle u=" << g17(figure_coordinate(p.s, ig.period_s))
              << " v=" << g17(figure_coordinate(p.t, ig.period_t)) << " s=" << g17(p.s)
              << " t=" << g17(p.t) << "\n";
    const complexd oracle = quadrature_oracle(ig, k, cfg.nodes);
    summary << "integral_oracle " << g17(oracle.real()) << " " << g17(oracle.imag()) << "\n";
    const complexd sum = loop_overlap_asym(k, find_intersections(lifted_gamma, lifted_sigma));
    summary << "crossing_sum " << g17(sum.real()) << " " << g17(sum.imag()) << "\n";
  } catch (const std::exception& e) {
    summary << "saddle_report degenerate: " << e.what() << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- verify --

int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.tol <= 0.0) throw ConfigError("--tol must be positive");
  if (cfg.format != "json") throw ConfigError("verify reports are JSON; use --format json");
  VerifyOptions options;
  options.tol_scale = cfg.tol;
  options.seed = cfg.seed;
  options.inject_lift_sign_flip = cfg.inject_lift_sign_flip;
  const std::vector<InvariantReport> reports = run_invariant_suite(options);

  bool all_passed = true;
  std::ostringstream body;
  body << "{\n";
  body << "\"tol_scale\":" << j17(options.tol_scale) << ",\n";
  body << "\"seed\":" << options.seed << ",\n";
  body << "\"invariants\":[\n";
  for (size_t i = 0; i < reports.size(); ++i) {
    const InvariantReport& r = reports[i];
    all_passed = all_passed && r.passed;
    body << "{\"name\":\"" << json_escape(r.name) << "\",\"passed\":"
         << (r.passed ? "true" : "false") << ",\"defect\":" << j17(r.defect)
         << ",\"tolerance\":" << j17(r.tolerance) << ",\"runtime_ms\":" << j17(r.runtime_ms)
         << ",\"error\":\"" << json_escape(r.error) << "\"}" << (i + 1 < reports.size() ? "," : "")
         << "\n";
  }
  body << "],\n";
  body << "\"all_passed\":" << (all_passed ? "true" : "false") << "\n";
  body << "}\n";

  const int rc = emit(body.str(), cfg, out, err);
  if (rc != 0) return rc;
  return all_passed ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Coherent loop states on the sphere: exact SU(2) matrix elements,"
               " loop-state overlaps, and their semiclassical asymptotics"};
  app.require_subcommand(1);

  std::map<std::string, OptionRefs> refs;

  auto add_level = [&](CLI::App* sub, OptionRefs& r) {
    r.j = sub->add_option("--j", cfg.j, "total spin j (integer or half-integer; k = 2j)");
    r.k = sub->add_option("--k", cfg.k, "representation level k = 2j");
  };
  auto add_output = [&](CLI::App* sub, OptionRefs& r, bool allow_csv = true) {
    r.out = sub->add_option("--out", cfg.out_path, "write the result to this file");
    r.format = sub->add_option("--format", cfg.format, "output format")
                   ->check(allow_csv ? CLI::IsMember({"csv", "json"}) : CLI::IsMember({"json"}));
    r.config = sub->add_option("--config", cfg.config_path,
                               "JSON file mirroring the flags; explicit flags win");
  };

  {
    CLI::App* sub = app.add_subcommand(
        "wigner", "Exact vs asymptotic rotation matrix elements d^j_{m2,m1}(beta)");
    OptionRefs& r = refs["wigner"];
    add_level(sub, r);
    r.m1 = sub->add_option("--m1", cfg.m1, "magnetic number m1");
    r.m2 = sub->add_option("--m2", cfg.m2,
                           "magnetic number m2 (omit with --beta to sweep m2 = -j..j)");
    r.beta = sub->add_option("--beta", cfg.beta, "rotation angle");
    r.beta_range = sub->add_option("--beta-range", cfg.beta_range, "sweep a:b:step");
    add_output(sub, r);
  }
  {
    CLI::App* sub = app.add_subcommand(
        "field", "Fibrewise norm of a loop state (--m1) or of the north-pole coherent state");
    OptionRefs& r = refs["field"];
    add_level(sub, r);
    r.m1 = sub->add_option("--m1", cfg.m1, "magnetic number of the loop state");
    r.grid = sub->add_option("--grid", cfg.grid, "theta x phi resolution NxM (default 121x64)");
    add_output(sub, r);
  }
  {
    CLI::App* sub = app.add_subcommand(
        "torus", "Coherent-state overlap kernel over the loop-parameter torus, with saddles");
    OptionRefs& r = refs["torus"];
    add_level(sub, r);
    r.m1 = sub->add_option("--m1", cfg.m1, "magnetic number of the rotated loop");
    r.m2 = sub->add_option("--m2", cfg.m2, "magnetic number of the fixed loop");
    r.beta = sub->add_option("--beta", cfg.beta, "rotation angle between the loops");
    r.grid = sub->add_option("--grid", cfg.grid, "s x t resolution NxM (default 64x64)");
    r.nodes = sub->add_option("--nodes", cfg.nodes,
                              "trapezoid nodes per axis for the integral oracle (0 = automatic)");
    add_output(sub, r);
  }
  {
    CLI::App* sub =
        app.add_subcommand("verify", "Run every library invariant and report JSON");
    OptionRefs& r = refs["verify"];
    r.tol = sub->add_option("--tol", cfg.tol, "scale all tolerances by this factor");
    r.seed = sub->add_option("--seed", cfg.seed, "seed for the randomized trials");
    r.inject = sub->add_flag("--inject-lift-sign-flip", cfg.inject_lift_sign_flip,
                             "self-test hook: corrupt the lift sign to prove checks fire");
    add_output(sub, r, /*allow_csv=*/false);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const OptionRefs& r = refs[command];
  if (command == "verify" && !counted(r.format)) cfg.format = "json";
  cfg.has_j = counted(r.j);
  cfg.has_k = counted(r.k);
  cfg.has_m1 = counted(r.m1);
  cfg.has_m2 = counted(r.m2);
  cfg.has_beta = counted(r.beta);
  cfg.has_beta_range = counted(r.beta_range);
  cfg.has_grid = counted(r.grid);

  try {
    if (counted(r.config)) merge_config_file(cfg, r);
    if (command == "wigner") return run_wigner(cfg, out, err);
    if (command == "field") return run_field(cfg, out, err);
    if (command == "torus") return run_torus(cfg, out, err);
    return run_verify(cfg, out, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "computation failed: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace cohloop
