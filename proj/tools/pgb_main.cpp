#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pgb/bounds.hpp"
#include "pgb/divergences.hpp"
#include "pgb/errors.hpp"
#include "pgb/optimal.hpp"
#include "pgb/report_io.hpp"
#include "pgb/state_io.hpp"
#include "pgb/sweeps.hpp"

namespace {

// Two-sided tolerance for the equality tables emitted by `reproduce`.
constexpr double kEqualityTol = 1e-6;

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    pgb::write_atomic(out_path, text);
  }
}

int run_verify(const pgb::RunConfig& cfg, const std::string& suite,
               const std::string& format, const std::string& out_path) {
  const std::vector<pgb::BoundReport> reports = pgb::run_suite(suite, cfg);
  emit(pgb::render_reports(reports, format), out_path);
  for (const pgb::BoundReport& r : reports) {
    if (!r.satisfied) return 1;
  }
  return 0;
}

int run_reproduce(const std::string& kase, const pgb::ReproParams& params,
                  const std::string& format, const std::string& out_path) {
  const std::vector<pgb::BoundReport> reports =
      pgb::reproduce_case(kase, params);
  emit(pgb::render_reports(reports, format), out_path);
  for (const pgb::BoundReport& r : reports) {
    if (!(std::abs(r.slack) <= kEqualityTol)) return 1;
  }
  return 0;
}

int run_ellipse(int m, int points, const std::string& out_path) {
  const auto rows = pgb::ellipse_points(m, points);
  std::string text = "x,z_upper\n";
  for (const auto& [x, z] : rows) {
    text += num(x);
    text += ',';
    text += num(z);
    text += '\n';
  }
  emit(text, out_path);
  return 0;
}

int run_calc(const std::string& kind, const std::vector<std::string>& files,
             double alpha, double tol) {
  if (kind == "divergence" || kind == "fidelity") {
    if (files.size() != 2) {
      throw pgb::BadParams(kind + " needs two density JSON files");
    }
    const pgb::DensityOperator rho = pgb::load_density(files[0]);
    const pgb::DensityOperator sigma = pgb::load_density(files[1]);
    const double value = (kind == "fidelity")
                             ? pgb::fidelity(rho, sigma)
                             : pgb::sandwiched(rho, sigma, alpha);
    std::cout << num(value) << "\n";
    return 0;
  }
  if (files.size() != 1) {
    throw pgb::BadParams(kind + " needs one input JSON file");
  }
  const pgb::CertifiedValue c =
      (kind == "popt") ? pgb::p_opt(pgb::load_ensemble(files[0]), tol)
                       : pgb::r_opt(pgb::load_density(files[0]), tol);
  std::cout << "lower=" << num(c.lower) << "\n"
            << "upper=" << num(c.upper) << "\n"
            << "gap=" << num(c.gap) << "\n"
            << "converged=" << (c.converged ? "true" : "false") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Randomized verification of guessing/recovery bounds, equality-family "
      "tables, boundary-curve sampling, and a calculator over JSON states."};
  app.require_subcommand(1);

  // verify
  pgb::RunConfig cfg;
  cfg.trials = 20;
  std::string suite = "all";
  std::string format = "json";
  std::string out_path;
  CLI::App* verify =
      app.add_subcommand("verify", "Run randomized verification suites");
  verify->add_option("--suite", suite, "Suite to run")
      ->check(CLI::Validator(
          [](std::string& s) -> std::string {
            return pgb::is_suite_name(s) ? std::string{}
                                         : "unknown suite: " + s;
          },
          "SUITE"));
  verify->add_option("--trials", cfg.trials, "Trials per suite")
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", cfg.seed, "Base RNG seed");
  verify->add_option("--max-dim", cfg.max_dim, "Largest subsystem dimension")
      ->check(CLI::Range(2, 16));
  verify->add_option("--tol", cfg.tol, "Base report tolerance")
      ->check(CLI::PositiveNumber);
  verify->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--out", out_path, "Write the report here (else stdout)");

  // reproduce
  std::string kase;
  int rep_m = 0;
  double rep_p0 = 0.0;
  int rep_d = 0;
  double rep_theta = 0.0;
  std::string rep_format = "json";
  std::string rep_out;
  CLI::App* reproduce =
      app.add_subcommand("reproduce", "Evaluate the equality families");
  reproduce->add_option("--case", kase, "Equality family")
      ->required()
      ->check(CLI::IsMember(pgb::repro_case_names()));
  CLI::Option* om = reproduce->add_option("--m", rep_m, "Number of symbols");
  CLI::Option* op0 = reproduce->add_option("--p0", rep_p0, "Peak probability");
  CLI::Option* od = reproduce->add_option("--d", rep_d, "Local dimension");
  CLI::Option* oth = reproduce->add_option("--theta", rep_theta,
                                           "Superposition angle (radians)");
  reproduce->add_option("--format", rep_format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));
  reproduce->add_option("--out", rep_out, "Write the table here (else stdout)");

  // ellipse
  int ell_m = 2;
  int ell_points = 101;
  std::string ell_out;
  CLI::App* ellipse =
      app.add_subcommand("ellipse", "Sample the boundary curve as CSV");
  ellipse->add_option("--m", ell_m, "Curve parameter (>= 2)")
      ->required()
      ->check(CLI::Range(2, 1 << 20));
  ellipse->add_option("--points", ell_points, "Number of samples")
      ->check(CLI::Range(2, 1 << 20));
  ellipse->add_option("--out", ell_out, "Write the CSV here (else stdout)");

  // calc
  std::string kind;
  std::vector<std::string> files;
  double alpha = 1.0;
  double calc_tol = 1e-6;
  CLI::App* calc =
      app.add_subcommand("calc", "Evaluate one quantity from JSON files");
  calc->add_option("kind", kind, "divergence | fidelity | popt | ropt")
      ->required()
      ->check(CLI::IsMember({"divergence", "fidelity", "popt", "ropt"}));
  calc->add_option("files", files, "Input JSON files")
      ->expected(1, 2)
      ->check(CLI::ExistingFile);
  calc->add_option("--alpha", alpha, "Divergence order (0.5 to inf)");
  calc->add_option("--tol", calc_tol, "Certified-gap target")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the parse error
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return run_verify(cfg, suite, format, out_path);
    if (reproduce->parsed()) {
      pgb::ReproParams params;
      if (om->count() > 0) params.m = rep_m;
      if (op0->count() > 0) params.p0 = rep_p0;
      if (od->count() > 0) params.d = rep_d;
      if (oth->count() > 0) params.theta = rep_theta;
      return run_reproduce(kase, params, rep_format, rep_out);
    }
    if (ellipse->parsed()) return run_ellipse(ell_m, ell_points, ell_out);
    if (calc->parsed()) return run_calc(kind, files, alpha, calc_tol);
  } catch (const pgb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
