// Command-line front-end: condition checks, power scans, geometry probes,
// spectral verification, parameter sweeps and the example corpus.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "powerpos/conditions.hpp"
#include "powerpos/errors.hpp"
#include "powerpos/eventual.hpp"
#include "powerpos/geometry.hpp"
#include "powerpos/parse.hpp"
#include "powerpos/pipeline.hpp"
#include "powerpos/spectral.hpp"

namespace pp = powerpos;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";

struct GlobalOptions {
  std::string json_path;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string profile = "default";
  std::optional<unsigned> pos2_polya_budget;
  std::optional<unsigned> pos2_sample_grid;
  std::optional<unsigned> pos3_grid;
  std::optional<unsigned> pos3_max_depth;
  std::optional<double> pos3_delta;
  std::optional<double> pos3_tolerance;
  std::optional<std::uint64_t> pos3_max_boxes;
  std::optional<unsigned> pos3_refine_starts;
  std::optional<unsigned> pos3_jf_samples;
  std::optional<unsigned> pos3_polya_budget;
  std::optional<std::size_t> scan_max_dense;
  bool no_certify = false;
};

pp::PipelineOptions pipeline_options(const GlobalOptions& g) {
  pp::PipelineOptions o = pp::profile_options(pp::budget_profile_from_string(g.profile));
  if (g.pos2_polya_budget) o.pos2.polya_budget = *g.pos2_polya_budget;
  if (g.pos2_sample_grid) o.pos2.sample_grid = *g.pos2_sample_grid;
  if (g.pos3_grid) o.pos3.grid = *g.pos3_grid;
  if (g.pos3_max_depth) o.pos3.max_depth = *g.pos3_max_depth;
  if (g.pos3_delta) o.pos3.delta = *g.pos3_delta;
  if (g.pos3_tolerance) o.pos3.tolerance = *g.pos3_tolerance;
  if (g.pos3_max_boxes) o.pos3.max_boxes = *g.pos3_max_boxes;
  if (g.pos3_refine_starts) o.pos3.refine_starts = *g.pos3_refine_starts;
  if (g.pos3_jf_samples) o.pos3.jf_samples = *g.pos3_jf_samples;
  if (g.pos3_polya_budget) o.pos3.polya_budget = *g.pos3_polya_budget;
  if (g.scan_max_dense) o.scan.max_dense_coefficients = *g.scan_max_dense;
  o.pos3.seed = g.seed;
  o.pos3.threads = g.threads;
  o.pos3_certify = !g.no_certify;
  return o;
}

// An argument naming an existing file is replaced by the file's contents.
std::string read_expr(const std::string& arg) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(arg, ec)) return arg;
  std::ifstream in(arg);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "a", "a/b", or an exact decimal such as "6.25".
pp::Rational parse_number(std::string text) {
  text.erase(std::remove_if(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); }),
             text.end());
  const auto dot = text.find('.');
  if (dot == std::string::npos) return pp::parse_rational(text);
  const std::string frac = text.substr(dot + 1);
  if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos) {
    throw pp::ParseError("malformed decimal '" + text + "'", dot);
  }
  std::string digits = text.substr(0, dot) + frac;
  if (digits.empty() || digits == "-" || digits == "+") throw pp::ParseError("malformed decimal '" + text + "'", 0);
  pp::Rational q = pp::parse_rational(digits);
  q /= pp::Rational(pp::BigInt(std::string("1") + std::string(frac.size(), '0')));
  return q;
}

std::vector<pp::Rational> parse_point(const std::string& text) {
  std::vector<pp::Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item));
  return out;
}

// "a,b,c" or "lo:hi:step" with rational or decimal endpoints.
std::vector<pp::Rational> parse_grid(const std::string& text) {
  if (text.find(':') == std::string::npos) return parse_point(text);
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw pp::DomainError("range must have the form lo:hi:step");
  const pp::Rational lo = parse_number(parts[0]), hi = parse_number(parts[1]), step = parse_number(parts[2]);
  if (sgn(step) <= 0) throw pp::DomainError("range step must be positive");
  std::vector<pp::Rational> out;
  for (pp::Rational v = lo; v <= hi; v += step) out.push_back(v);
  return out;
}

json metadata(const std::string& command, const GlobalOptions& g) {
  return {{"tool", "powerpos"},
          {"version", kVersion},
          {"command", command},
          {"seed", g.seed},
          {"threads", g.threads},
          {"budget_profile", g.profile}};
}

void emit_json(const GlobalOptions& g, const std::string& command, json result) {
  if (g.json_path.empty()) return;
  const json doc = {{"metadata", metadata(command, g)}, {"result", std::move(result)}};
  if (g.json_path == "-") {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  std::ofstream out(g.json_path);
  if (!out) throw pp::Error("cannot write " + g.json_path);
  out << doc.dump(2) << '\n';
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw pp::Error("cannot write " + path);
  out << text;
}

std::string describe(const pp::ConditionReport& r) {
  std::string s = pp::to_string(r.condition) + ": " + pp::to_string(r.verdict);
  if (r.witness) {
    s += "  witness (";
    for (std::size_t i = 0; i < r.witness->point.size(); ++i) {
      const auto& c = r.witness->point[i];
      if (i) s += ", ";
      s += pp::to_string(c.re);
      if (sgn(c.im) != 0) s += (sgn(c.im) > 0 ? "+" : "-") + pp::to_string(abs(c.im)) + "i";
    }
    s += ")  value " + pp::to_string(r.witness->value);
  }
  if (!r.note.empty()) s += "  [" + r.note + "]";
  return s;
}

json matrix_json(const pp::RationalMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(pp::to_string(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json matrix_json(const pp::RealMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide and explore eventual positivity of powers of homogeneous polynomials"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file of option defaults; command-line flags take precedence");

  GlobalOptions g;
  app.add_option("--json", g.json_path, "Write the JSON report to PATH ('-' for stdout)");
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--budget-profile", g.profile, "Budget preset")
      ->check(CLI::IsMember({"fast", "default", "thorough"}));
  app.add_option("--pos2-polya-budget", g.pos2_polya_budget, "Largest Polya exponent tried on facets");
  app.add_option("--pos2-sample-grid", g.pos2_sample_grid, "Facet sampling subdivisions");
  app.add_option("--pos3-grid", g.pos3_grid, "Pos3 search grid subdivisions");
  app.add_option("--pos3-max-depth", g.pos3_max_depth, "Pos3 bisection depth limit");
  app.add_option("--pos3-delta", g.pos3_delta, "Alignment-defect radius handed to the J_f probe");
  app.add_option("--pos3-tolerance", g.pos3_tolerance, "Normalized gap below which grid points are checked exactly");
  app.add_option("--pos3-max-boxes", g.pos3_max_boxes, "Pos3 branch-and-bound box budget");
  app.add_option("--pos3-refine-starts", g.pos3_refine_starts, "Pos3 local refinement starts");
  app.add_option("--pos3-jf-samples", g.pos3_jf_samples, "J_f sample points per chart");
  app.add_option("--pos3-polya-budget", g.pos3_polya_budget, "Polya budget for orthant positivity");
  app.add_option("--scan-max-dense", g.scan_max_dense, "Dense coefficient cap for power scans");
  app.add_flag("--no-certify", g.no_certify, "Skip the certifying Pos3 pass");

  // check
  auto* check = app.add_subcommand("check", "Run the Pos1, Pos2 and Pos3 checks");
  check->fallthrough();
  std::string check_expr;
  std::optional<std::size_t> check_nvars;
  check->add_option("expr", check_expr, "Polynomial expression or file")->required();
  check->add_option("--nvars", check_nvars, "Number of variables (default: largest index used)");

  // power-scan
  auto* scan = app.add_subcommand("power-scan", "Scan which p^m * q have all positive coefficients");
  scan->fallthrough();
  std::string scan_p, scan_q = "1", scan_csv;
  unsigned scan_max_m = 60;
  std::optional<std::size_t> scan_nvars;
  scan->add_option("--p", scan_p, "Polynomial p (expression or file)")->required();
  scan->add_option("--q", scan_q, "Multiplier q (expression or file)");
  scan->add_option("--max-m", scan_max_m, "Largest power scanned");
  scan->add_option("--csv", scan_csv, "Write the per-m table as CSV");
  scan->add_option("--nvars", scan_nvars, "Number of variables");

  // polya
  auto* polya = app.add_subcommand("polya", "Least N with (x1+...+xn)^N * g all positive");
  polya->fallthrough();
  std::string polya_g;
  unsigned polya_max = 64;
  std::optional<std::size_t> polya_nvars;
  polya->add_option("g", polya_g, "Homogeneous polynomial (expression or file)")->required();
  polya->add_option("--max-n", polya_max, "Largest exponent tried");
  polya->add_option("--nvars", polya_nvars, "Number of variables");

  // geometry
  auto* geometry = app.add_subcommand("geometry", "Newton polytope, difference lattice and J_f probes");
  geometry->fallthrough();
  std::string geo_f, geo_point, geo_check = "all";
  double geo_h = 1e-4;
  std::optional<std::size_t> geo_nvars;
  geometry->add_option("--f", geo_f, "Polynomial f (expression or file)")->required();
  geometry->add_option("--point", geo_point, "Comma-separated positive point for jf/hess");
  geometry->add_option("--check", geo_check, "Which probe to run")
      ->check(CLI::IsMember({"dim", "lattice", "jf", "hess", "all"}));
  geometry->add_option("--step", geo_h, "Finite-difference step for hess");
  geometry->add_option("--nvars", geo_nvars, "Number of variables");

  // beta verify
  auto* beta = app.add_subcommand("beta", "Spectral-radius functions of polynomial matrices");
  beta->require_subcommand(1);
  auto* beta_verify = beta->add_subcommand("verify", "Check p = beta_A");
  beta_verify->fallthrough();
  beta->fallthrough();
  std::string beta_matrix, beta_p;
  unsigned beta_samples = 20;
  double beta_tol = 1e-9;
  beta_verify->add_option("--matrix", beta_matrix, "Matrix JSON file")->required()->check(CLI::ExistingFile);
  beta_verify->add_option("--p", beta_p, "Candidate polynomial (expression or file)")->required();
  beta_verify->add_option("--samples", beta_samples, "Random sample points");
  beta_verify->add_option("--tol", beta_tol, "Relative tolerance");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Parameter sweep over (x1+x2)^{2k} - lambda x1^k x2^k");
  sweep->fallthrough();
  std::string sweep_family = "dv", sweep_lambda, sweep_csv_path;
  unsigned sweep_k = 2, sweep_max_m = 60;
  sweep->add_option("--family", sweep_family, "Polynomial family")->check(CLI::IsMember({"dv"}));
  sweep->add_option("--k", sweep_k, "Half degree k >= 2");
  sweep->add_option("--lambda", sweep_lambda, "Comma list or lo:hi:step of rationals")->required();
  sweep->add_option("--max-m", sweep_max_m, "Largest power scanned");
  sweep->add_option("--csv", sweep_csv_path, "CSV output path (default: stdout)");

  // examples
  auto* examples = app.add_subcommand("examples", "Run the example corpus and compare with expected verdicts");
  examples->fallthrough();
  std::string examples_name = "all", corpus_dir;
  examples->add_option("name", examples_name, "Entry name or 'all'");
  examples->add_option("--corpus", corpus_dir, "Corpus directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : pp::kExitError;
  }

  try {
    const pp::PipelineOptions opts = pipeline_options(g);
    // Keep stdout clean when it carries the JSON report.
    std::ostream& human = g.json_path == "-" ? std::cerr : std::cout;

    if (check->parsed()) {
      const std::string text = read_expr(check_expr);
      const pp::Polynomial p = pp::parse(text, check_nvars.value_or(pp::infer_nvars(text)));
      const auto outcome = pp::run_check(p, opts);
      human << pp::serialize(p) << '\n';
      for (const auto& r : outcome.reports) human << "  " << describe(r) << '\n';
      emit_json(g, "check", pp::to_json(outcome, p));
      return outcome.exit_code;
    }

    if (scan->parsed()) {
      const std::string ptext = read_expr(scan_p), qtext = read_expr(scan_q);
      const std::size_t n = scan_nvars.value_or(std::max(pp::infer_nvars(ptext), pp::infer_nvars(qtext)));
      const pp::Polynomial p = pp::parse(ptext, n), q = pp::parse(qtext, n);
      auto pattern = pp::power_scan(p, q, scan_max_m, opts.scan);
      pattern.p_id = pp::serialize(p);
      pattern.q_id = pp::serialize(q);
      human << "window onset: " << (pattern.window_onset ? std::to_string(*pattern.window_onset) : "none")
                << " (m <= " << scan_max_m << ")\n";
      if (!scan_csv.empty()) write_text(scan_csv, pp::to_csv(pattern));
      emit_json(g, "power-scan", pp::to_json(pattern));
      return pp::kExitOk;
    }

    if (polya->parsed()) {
      const std::string text = read_expr(polya_g);
      const pp::Polynomial p = pp::parse(text, polya_nvars.value_or(pp::infer_nvars(text)));
      const auto n = pp::polya_exponent(p, polya_max);
      human << "polya exponent: " << (n ? std::to_string(*n) : "none") << " (N <= " << polya_max << ")\n";
      emit_json(g, "polya", {{"polynomial", pp::serialize(p)}, {"max_n", polya_max},
                             {"exponent", n ? json(*n) : json()}});
      return n ? pp::kExitOk : pp::kExitInconclusive;
    }

    if (geometry->parsed()) {
      const std::string text = read_expr(geo_f);
      const pp::Polynomial f = pp::parse(text, geo_nvars.value_or(pp::infer_nvars(text)));
      const bool all = geo_check == "all";
      json result = {{"polynomial", pp::serialize(f)}, {"nvars", f.nvars()}};
      int code = pp::kExitOk;
      if (all || geo_check == "dim") {
        json support = json::array();
        for (const auto& e : pp::log_support(f)) {
          support.push_back(std::vector<unsigned>(e.exponents().begin(), e.exponents().end()));
        }
        const auto dim = pp::newton_affine_dim(f);
        result["log_support"] = support;
        result["newton_affine_dim"] = dim;
        result["full_dimensional"] = dim == f.nvars();
        human << "Newton polytope affine dimension: " << dim << " of " << f.nvars() << '\n';
      }
      if (all || geo_check == "lattice") {
        json factors = json::array();
        for (const auto& d : pp::difference_lattice_invariants(f)) factors.push_back(d.get_str());
        const bool full = pp::difference_lattice_is_full(f);
        result["snf_invariant_factors"] = factors;
        result["difference_lattice_full"] = full;
        human << "difference lattice " << (full ? "generates" : "does not generate") << " Z^" << f.nvars()
                  << "; invariant factors " << factors.dump() << '\n';
      }
      if (all || geo_check == "jf" || geo_check == "hess") {
        std::vector<pp::Rational> point =
            geo_point.empty() ? std::vector<pp::Rational>(f.nvars(), pp::Rational(1)) : parse_point(geo_point);
        if (point.size() != f.nvars()) throw pp::DimensionError("--point length does not match nvars");
        json pt = json::array();
        for (const auto& v : point) pt.push_back(pp::to_string(v));
        result["point"] = pt;
        if (all || geo_check == "jf") {
          const auto jf = pp::jf_matrix(f, point);
          const bool pd = pp::is_positive_definite(jf);
          result["jf"] = matrix_json(jf);
          result["jf_positive_definite"] = pd;
          human << "J_f at point is " << (pd ? "" : "not ") << "positive definite\n";
          if (!pd) code = pp::kExitFails;
        }
        if (all || geo_check == "hess") {
          std::vector<double> t;
          for (const auto& v : point) t.push_back(std::log(pp::to_double(v)));
          const auto h = pp::hessian_logf_fd(f, t, geo_h);
          result["hessian_fd"] = matrix_json(h);
          result["hessian_step"] = geo_h;
          human << "finite-difference Hessian of log f(e^t) computed with h = " << geo_h << '\n';
        }
      }
      emit_json(g, "geometry", result);
      return code;
    }

    if (beta_verify->parsed()) {
      std::ifstream in(beta_matrix);
      json mj;
      try {
        in >> mj;
      } catch (const json::exception& ex) {
        throw pp::ParseError(std::string("matrix file: ") + ex.what(), 0);
      }
      const pp::PolyMatrix a = pp::polymatrix_from_json(mj);
      const pp::Polynomial p = pp::parse(read_expr(beta_p), a.nvars());
      const auto report = pp::verify_beta(a, p, beta_samples, beta_tol, g.seed);
      human << "beta verify: " << pp::to_string(report.verdict);
      if (!report.note.empty()) human << "  [" << report.note << "]";
      human << '\n';
      emit_json(g, "beta verify", pp::to_json(report));
      switch (report.verdict) {
        case pp::BetaVerdict::Verified: return pp::kExitOk;
        case pp::BetaVerdict::Refuted: return pp::kExitFails;
        case pp::BetaVerdict::Inconclusive: return pp::kExitInconclusive;
      }
    }

    if (sweep->parsed()) {
      std::vector<std::string> warnings;
      const auto rows = pp::run_sweep_dv(sweep_k, parse_grid(sweep_lambda), sweep_max_m, opts, warnings);
      for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
      const std::string csv = pp::sweep_csv(rows);
      if (sweep_csv_path.empty()) {
        human << csv;
      } else {
        write_text(sweep_csv_path, csv);
      }
      json out = json::array();
      for (const auto& r : rows) {
        out.push_back({{"lambda", pp::to_string(r.lambda)},
                       {"pos1", pp::to_string(r.pos1)},
                       {"pos2", pp::to_string(r.pos2)},
                       {"pos3", pp::to_string(r.pos3)},
                       {"window_onset", r.window_onset ? json(*r.window_onset) : json()}});
      }
      emit_json(g, "sweep", {{"family", sweep_family}, {"k", sweep_k}, {"max_m", sweep_max_m},
                             {"rows", out}, {"warnings", warnings}});
      return pp::kExitOk;
    }

    if (examples->parsed()) {
      const auto corpus = pp::load_corpus(corpus_dir.empty() ? pp::default_corpus_dir() : std::filesystem::path(corpus_dir));
      const auto outcome = pp::run_examples(corpus, examples_name, opts);
      for (const auto& r : outcome.results) {
        const char* status = !r.mismatches.empty() ? "MISMATCH" : !r.unresolved.empty() ? "UNRESOLVED" : "ok";
        human << r.name << ": " << status << '\n';
        for (const auto& c : r.reports) human << "  " << describe(c) << '\n';
        if (r.scan) {
          human << "  window onset: "
                    << (r.scan->window_onset ? std::to_string(*r.scan->window_onset) : "none") << " (m <= "
                    << r.scan->max_m() << ")\n";
        }
        for (const auto& m : r.mismatches) human << "  mismatch: " << m << '\n';
        for (const auto& m : r.unresolved) human << "  unresolved: " << m << '\n';
      }
      emit_json(g, "examples", pp::to_json(outcome));
      return outcome.exit_code;
    }
  } catch (const pp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return pp::kExitError;
  }
  return pp::kExitError;
}
