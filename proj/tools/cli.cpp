#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <iterator>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hankel/certificates.hpp"
#include "hankel/conditions.hpp"
#include "hankel/core.hpp"
#include "hankel/errors.hpp"
#include "hankel/json_io.hpp"
#include "hankel/psd_bound.hpp"
#include "hankel/scan.hpp"
#include "hankel/sos_bound.hpp"

namespace hankel::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(x)) {
    throw std::invalid_argument(what + ": not a finite number: \"" + s + "\"");
  }
  return x;
}

long long to_integer(const std::string& s, const std::string& what) {
  const double x = to_double(s, what);
  if (x != std::floor(x) || std::abs(x) > 9.0e15) throw std::invalid_argument(what + ": not an integer: \"" + s + "\"");
  return static_cast<long long>(x);
}

std::vector<double> parse_list(const std::string& text, std::size_t expected, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(trim(item), what));
  if (out.size() != expected) {
    throw std::invalid_argument(what + ": expected " + std::to_string(expected) + " comma-separated values, got " +
                                std::to_string(out.size()));
  }
  return out;
}

SlicePoint parse_point(const std::string& text) {
  const auto v = parse_list(text, 5, "--point");
  return {v[0], v[1], v[2], v[3], v[4]};
}

std::pair<std::string, std::string> split_assignment(const std::string& text, const std::string& what) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw std::invalid_argument(what + ": expected key=value, got \"" + text + "\"");
  return {trim(text.substr(0, eq)), trim(text.substr(eq + 1))};
}

std::string num(double x) { return format_number(x); }

/// Solver defaults, optionally loaded from a key=value file; explicit flags win.
struct SolverConfig {
  SearchOptions search;
  M0Options sos;
  int jobs = 0;

  void set(const std::string& key, const std::string& value) {
    if (key == "n_starts") {
      search.n_starts = static_cast<int>(to_integer(value, key));
    } else if (key == "seed") {
      const long long s = to_integer(value, key);
      if (s < 0) throw std::invalid_argument("seed must be non-negative");
      search.seed = static_cast<std::uint64_t>(s);
    } else if (key == "grad_tol") {
      search.grad_tol = to_double(value, key);
    } else if (key == "max_iters_per_start") {
      search.max_iters_per_start = static_cast<int>(to_integer(value, key));
    } else if (key == "grid_resolution") {
      search.grid_resolution = static_cast<int>(to_integer(value, key));
    } else if (key == "rel_tol") {
      sos.rel_tol = to_double(value, key);
    } else if (key == "feas_tol") {
      sos.feas_tol = to_double(value, key);
    } else if (key == "max_iter") {
      sos.max_iter = static_cast<int>(to_integer(value, key));
    } else if (key == "scheme") {
      if (value == "douglas_rachford") {
        sos.scheme = ProjectionScheme::DouglasRachford;
      } else if (value == "alternating") {
        sos.scheme = ProjectionScheme::AlternatingProjections;
      } else {
        throw std::invalid_argument("scheme must be douglas_rachford or alternating");
      }
    } else if (key == "admit_boundary") {
      if (value != "true" && value != "false") throw std::invalid_argument("admit_boundary must be true or false");
      search.admit_boundary = value == "true";
    } else if (key == "jobs") {
      jobs = static_cast<int>(to_integer(value, key));
    } else {
      throw std::invalid_argument("unknown config key \"" + key + "\"");
    }
  }

  void load(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw std::invalid_argument("cannot open config file " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(file, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      line = trim(line);
      if (line.empty()) continue;
      try {
        const auto [k, v] = split_assignment(line, "config");
        set(k, v);
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": " + e.what());
      }
    }
  }

  void finalize() {
    sos.search = search;
    search.validate();
    sos.validate();
    if (jobs < 0) throw std::invalid_argument("jobs must be >= 0");
  }
};

struct Inputs {
  std::string config_path;
  std::string point;
  std::string vector;
  std::optional<double> v0;
  std::string x;
  std::optional<long long> seed;
  std::optional<double> tol;
  std::optional<int> jobs;
  std::optional<int> starts;
  bool json = false;
  bool admit_boundary = false;
};

GeneratingVector vector_input(const Inputs& in) {
  if (!in.vector.empty()) {
    if (!in.point.empty() || in.v0) throw std::invalid_argument("give either --vector or --point/--v0, not both");
    const auto v = parse_list(in.vector, 13, "--vector");
    return GeneratingVector::from_span(v);
  }
  if (in.point.empty() || !in.v0) throw std::invalid_argument("need --vector, or --point together with --v0");
  return assemble(parse_point(in.point), *in.v0);
}

std::string read_all(std::istream& s) { return {std::istreambuf_iterator<char>(s), std::istreambuf_iterator<char>()}; }

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hankel tensor PSD/SOS boundary tool"};
  app.require_subcommand(1);
  Inputs inputs;
  app.add_option("--config", inputs.config_path, "key=value file with solver defaults");

  auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", inputs.seed, "random seed for the multistart search"); };
  auto add_starts = [&](CLI::App* sub) { sub->add_option("--starts", inputs.starts, "number of random starts"); };
  auto add_boundary = [&](CLI::App* sub) {
    sub->add_flag("--admit-boundary", inputs.admit_boundary, "also accept points with eta(v5, v6) = 1 exactly");
  };
  auto add_point = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--point", inputs.point, "slice point v2,v6,v1,v3,v5 (use --point=... for negatives)");
    if (required) o->required();
  };
  auto add_vector_inputs = [&](CLI::App* sub) {
    add_point(sub, false);
    sub->add_option("--v0", inputs.v0, "corner entry v0 = v12");
    sub->add_option("--vector", inputs.vector, "13 comma-separated entries v0..v12");
  };

  auto* eval = app.add_subcommand("eval", "evaluate f(x) for a generating vector");
  add_vector_inputs(eval);
  eval->add_option("--x", inputs.x, "point x1,x2,x3,x4")->required();

  double beta = 0.0, gamma = 0.0;
  auto* eta_cmd = app.add_subcommand("eta", "print eta(beta, gamma)");
  eta_cmd->add_option("--beta", beta)->required();
  eta_cmd->add_option("--gamma", gamma)->required();

  auto* check = app.add_subcommand("check", "report every necessary PSD inequality as JSON");
  add_vector_inputs(check);

  auto* n0_cmd = app.add_subcommand("n0", "PSD boundary N0 at a slice point");
  add_point(n0_cmd, true);
  add_seed(n0_cmd);
  add_starts(n0_cmd);
  add_boundary(n0_cmd);
  n0_cmd->add_flag("--json", inputs.json, "print the full result as JSON");

  auto* m0_cmd = app.add_subcommand("m0", "SOS boundary M0 at a slice point");
  add_point(m0_cmd, true);
  add_seed(m0_cmd);
  add_starts(m0_cmd);
  add_boundary(m0_cmd);
  m0_cmd->add_option("--tol", inputs.tol, "relative bisection tolerance");
  m0_cmd->add_flag("--json", inputs.json, "print value, N0 and gap as JSON");

  std::vector<std::string> grids, fixes;
  std::string out_path;
  bool table1 = false;
  auto* scan_cmd = app.add_subcommand("scan", "grid scan of N0, M0 and the gap, as CSV");
  scan_cmd->add_option("--grid", grids, "<coord>=<min>:<max>:<steps>, repeatable");
  scan_cmd->add_option("--fix", fixes, "<coord>=<value>, repeatable");
  scan_cmd->add_flag("--table1", table1, "the 11x8 reference grid with deviation columns");
  scan_cmd->add_option("--out", out_path, "output CSV path (default: standard output)");
  scan_cmd->add_option("--jobs", inputs.jobs, "worker threads (default: all cores)");
  scan_cmd->add_option("--tol", inputs.tol, "relative bisection tolerance for M0");
  add_seed(scan_cmd);
  add_starts(scan_cmd);

  std::string cert_path;
  auto* verify = app.add_subcommand("verify-cert", "check a certificate JSON file ('-' for standard input)");
  verify->add_option("file", cert_path, "certificate path or -")->required();
  verify->add_option("--tol", inputs.tol, "verification tolerance (default 1e-8)");

  auto* cert = app.add_subcommand("cert", "build a closed-form certificate");
  cert->require_subcommand(1);
  double t = 0.0, b = 1.0, rho = 0.0;
  std::optional<double> theta;
  auto* seg = cert->add_subcommand("segment", "segment certificate at t in [-1, 1]");
  seg->add_option("--t", t, "segment parameter")->required();
  auto* cone = cert->add_subcommand("cone", "cone certificate at (b, theta)");
  cone->add_option("--b", b, "b >= 1")->required();
  cone->add_option("--theta", theta, "theta (default: its smallest admissible value)");
  auto* ray = cert->add_subcommand("ray", "closed-form critical value on the ray (-rho, 0, 0, 0, 0)");
  ray->add_option("--rho", rho, "rho >= 0")->required();
  auto* point_a = cert->add_subcommand("point-a", "closed-form critical value at (1, 0, 0, 0, 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    SolverConfig config;
    if (!inputs.config_path.empty()) config.load(inputs.config_path);
    if (inputs.seed) config.set("seed", std::to_string(*inputs.seed));
    if (inputs.starts) config.search.n_starts = *inputs.starts;
    if (inputs.jobs) config.jobs = *inputs.jobs;
    if (inputs.admit_boundary) config.search.admit_boundary = true;
    if (inputs.tol && !verify->parsed()) config.sos.rel_tol = *inputs.tol;
    config.finalize();

    if (eval->parsed()) {
      const GeneratingVector v = vector_input(inputs);
      const auto x = parse_list(inputs.x, 4, "--x");
      out << num(evaluate(v, Vec4{{x[0], x[1], x[2], x[3]}})) << '\n';
    } else if (eta_cmd->parsed()) {
      out << num(eta(beta, gamma)) << '\n';
    } else if (check->parsed()) {
      const GeneratingVector v = vector_input(inputs);
      Json j = to_json(check_necessary(v));
      j["degenerate"] = to_json(classify_degenerate(v));
      out << j.dump(2) << '\n';
    } else if (n0_cmd->parsed()) {
      const BoundResult r = n0(parse_point(inputs.point), config.search);
      if (inputs.json) {
        out << to_json(r).dump(2) << '\n';
      } else {
        out << num(r.value) << '\n';
      }
    } else if (m0_cmd->parsed()) {
      const SlicePoint p = parse_point(inputs.point);
      const BoundResult lower = n0(p, config.search);
      const BoundResult upper = m0(p, config.sos, lower);
      if (inputs.json) {
        Json j;
        j["point"] = to_json(p);
        j["m0"] = upper.value;
        j["n0"] = lower.value;
        j["gap"] = upper.value - lower.value;
        j["pns_free"] = upper.value - lower.value <= gap_tolerance(lower.value);
        out << j.dump(2) << '\n';
      } else {
        out << num(upper.value) << '\n';
      }
    } else if (scan_cmd->parsed()) {
      std::vector<ScanRow> rows;
      if (table1) {
        if (!grids.empty() || !fixes.empty()) throw std::invalid_argument("--table1 takes no --grid or --fix");
        rows = run_points(table1_points(), config.search, config.sos, config.jobs);
      } else {
        GridSpec spec;
        std::array<bool, 5> seen{};
        auto claim = [&](const std::string& name) {
          const std::size_t i = coordinate_index(name);
          if (seen[i]) throw std::invalid_argument("coordinate " + name + " given more than once");
          seen[i] = true;
          return i;
        };
        for (const auto& g : grids) {
          const auto [name, range] = split_assignment(g, "--grid");
          spec.axes[claim(name)] = parse_axis(range);
        }
        for (const auto& f : fixes) {
          const auto [name, value] = split_assignment(f, "--fix");
          spec.axes[claim(name)] = Axis::fixed(to_double(value, "--fix " + name));
        }
        spec.search = config.search;
        spec.sos = config.sos;
        spec.jobs = config.jobs;
        rows = run_scan(spec);
      }
      std::ofstream file;
      if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw std::invalid_argument("cannot open output file " + out_path);
      }
      std::ostream& csv = out_path.empty() ? out : file;
      if (table1) {
        write_table1_csv(csv, rows);
      } else {
        write_csv(csv, rows);
      }
      csv.flush();
      if (!csv) throw std::invalid_argument("failed writing CSV output");
      const ScanSummary s = summarize(rows);
      err << "rows: " << rows.size() << "  ok: " << s.ok << "  skipped_domain: " << s.skipped
          << "  error: " << s.errors << "  max_gap: " << num(s.max_gap)
          << "  all_pns_free: " << (s.all_pns_free ? "yes" : "no") << '\n';
      if (s.errors > 0) return kExitNonConvergence;
    } else if (verify->parsed()) {
      std::string text;
      if (cert_path == "-") {
        text = read_all(in);
      } else {
        std::ifstream file(cert_path);
        if (!file) throw std::invalid_argument("cannot open certificate " + cert_path);
        text = read_all(file);
      }
      Json j;
      try {
        j = Json::parse(text);
      } catch (const Json::parse_error& e) {
        throw std::invalid_argument(std::string("certificate is not valid JSON: ") + e.what());
      }
      const VerificationReport report = verify_certificate(certificate_from_json(j), inputs.tol.value_or(1e-8));
      for (const auto& c : report.checks) {
        out << c.name << ": " << (c.passed ? "ok" : "FAILED") << " (measured " << num(c.measured) << ", bound "
            << num(c.bound) << ")\n";
      }
      out << (report.passed ? "pass" : "fail") << '\n';
      if (!report.passed) return kExitInvalid;
    } else if (cert->parsed()) {
      if (seg->parsed()) {
        out << to_json(segment_certificate(t)).dump(2) << '\n';
      } else if (cone->parsed()) {
        out << to_json(cone_certificate(b, theta.value_or(cone_theta_min(b)))).dump(2) << '\n';
      } else if (ray->parsed()) {
        if (!(rho >= 0.0)) throw DomainError("rho must be non-negative");
        Json j;
        j["P"] = to_json(SlicePoint{-rho, 0.0, 0.0, 0.0, 0.0});
        j["M"] = ray_critical_value(rho);
        out << j.dump(2) << '\n';
      } else if (point_a->parsed()) {
        Json j;
        j["P"] = to_json(SlicePoint{1.0, 0.0, 0.0, 0.0, 0.0});
        j["M"] = point_a_critical_value();
        out << j.dump(2) << '\n';
      }
    }
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitOk;
}

}  // namespace hankel::cli
