#include "pgb/sweeps.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "pgb/divergences.hpp"
#include "pgb/errors.hpp"
#include "pgb/optimal.hpp"
#include "pgb/rng.hpp"
#include "pgb/states.hpp"
#include "pgb/strategies.hpp"

namespace pgb {

namespace {

constexpr std::array<double, 5> kAlphas = {0.5, 1.0, 2.0, 3.0, kAlphaInf};

// Reproduction tables pin the optimizer gap to 1e-10 so equality slacks are
// limited by the families themselves, not the solver.
constexpr double kReproTol = 1e-8;

DensityOperator marginal_b(const DensityOperator& rho) {
  return DensityOperator::make(partial_trace(rho.cm(), {1}));
}

void tag(BoundReport& r, int trial) {
  r.context["trial"] = static_cast<std::int64_t>(trial);
}

void prop_trial(std::vector<BoundReport>& out, const RunConfig& cfg,
                int trial) {
  Rng rng = Rng::stream(cfg.seed, "prop", trial);
  const int m = rng.next_int(2, cfg.max_dim);
  const int db_c = rng.next_int(2, cfg.max_dim);
  const Ensemble e = random_ensemble(m, db_c, false, rng);
  const DensityOperator sigma_c = random_density(db_c, rng);
  const int da = rng.next_int(2, cfg.max_dim);
  const int db_q = rng.next_int(2, cfg.max_dim);
  const DensityOperator rho_ab = random_state({da, db_q}, false, rng);
  const DensityOperator sigma_q = random_density(db_q, rng);

  const DensityOperator rho_xb = cq_state(e);
  const DensityOperator rho_b_c = marginal_b(rho_xb);
  const DensityOperator rho_b_q = marginal_b(rho_ab);

  const CertifiedValue pc = p_opt(e, cfg.tol / 100.0);
  const CertifiedValue rc = r_opt(rho_ab, cfg.tol / 100.0);

  const std::array<std::pair<const char*, const Povm*>, 2> povms = {
      {{"pgm", nullptr}, {"optimal", &std::get<Povm>(pc.primal_witness)}}};
  const Povm pg = pgm(e);
  const std::array<std::pair<const char*, const Channel*>, 2> channels = {
      {{"pretty_good", nullptr},
       {"optimal", &std::get<Channel>(rc.primal_witness)}}};
  const Channel pgr = pretty_good_recovery(rho_ab);
  const std::array<std::pair<const char*, const DensityOperator*>, 2>
      sigmas_c = {{{"marginal", &rho_b_c}, {"random", &sigma_c}}};
  const std::array<std::pair<const char*, const DensityOperator*>, 2>
      sigmas_q = {{{"marginal", &rho_b_q}, {"random", &sigma_q}}};

  for (const auto& [sname, povm] : povms) {
    for (const auto& [gname, sigma] : sigmas_c) {
      for (double alpha : kAlphas) {
        BoundReport r =
            check_prop_c(rho_xb, povm ? *povm : pg, *sigma, alpha, cfg.tol);
        tag(r, trial);
        r.context["strategy"] = std::string(sname);
        r.context["sigma"] = std::string(gname);
        out.push_back(std::move(r));
      }
    }
  }
  for (const auto& [sname, ch] : channels) {
    for (const auto& [gname, sigma] : sigmas_q) {
      for (double alpha : kAlphas) {
        BoundReport r =
            check_prop_q(rho_ab, ch ? *ch : pgr, *sigma, alpha, cfg.tol);
        tag(r, trial);
        r.context["strategy"] = std::string(sname);
        r.context["sigma"] = std::string(gname);
        out.push_back(std::move(r));
      }
    }
  }
}

void fano_trial(std::vector<BoundReport>& out, const RunConfig& cfg,
                int trial) {
  Rng rng = Rng::stream(cfg.seed, "fano", trial);
  const int m = rng.next_int(2, cfg.max_dim);
  const int db_c = rng.next_int(2, cfg.max_dim);
  const Ensemble e = random_ensemble(m, db_c, false, rng);
  const int da = rng.next_int(2, cfg.max_dim);
  const int db_q = rng.next_int(2, cfg.max_dim);
  const DensityOperator rho_ab = random_state({da, db_q}, false, rng);

  BoundReport a = fano_classical(cq_state(e), cfg.tol);
  tag(a, trial);
  out.push_back(std::move(a));
  BoundReport b = fano_quantum(rho_ab, cfg.tol);
  tag(b, trial);
  out.push_back(std::move(b));
}

void pgm_trial(std::vector<BoundReport>& out, const RunConfig& cfg,
               int trial) {
  Rng rng = Rng::stream(cfg.seed, "pgm", trial);
  const int m = rng.next_int(2, cfg.max_dim);
  const int d = rng.next_int(2, cfg.max_dim);
  const Ensemble e = random_ensemble(m, d, false, rng);
  BoundReport r = pgm_bound(e, cfg.tol);
  tag(r, trial);
  out.push_back(std::move(r));
}

void recovery_trial(std::vector<BoundReport>& out, const RunConfig& cfg,
                    int trial) {
  Rng rng = Rng::stream(cfg.seed, "recovery", trial);
  const int da = rng.next_int(2, cfg.max_dim);
  const int db = rng.next_int(2, cfg.max_dim);
  const DensityOperator rho_ab = random_state({da, db}, false, rng);
  BoundReport r = recovery_bound(rho_ab, cfg.tol);
  tag(r, trial);
  out.push_back(std::move(r));
}

void fidelity_trial(std::vector<BoundReport>& out, const RunConfig& cfg,
                    int trial) {
  Rng rng = Rng::stream(cfg.seed, "fidelity", trial);
  const int m = rng.next_int(2, cfg.max_dim);
  const int db_c = rng.next_int(2, cfg.max_dim);
  const Ensemble e = random_ensemble(m, db_c, false, rng);
  const DensityOperator sigma_c = random_density(db_c, rng);
  const int da = rng.next_int(2, cfg.max_dim);
  const int db_q = rng.next_int(2, cfg.max_dim);
  const DensityOperator rho_ab = random_state({da, db_q}, false, rng);
  const DensityOperator sigma_q = random_density(db_q, rng);

  const DensityOperator rho_xb = cq_state(e);
  const std::array<std::pair<const char*, const DensityOperator*>, 2>
      sigmas_c = {{{"marginal", nullptr}, {"random", &sigma_c}}};
  const DensityOperator rho_b_c = marginal_b(rho_xb);
  const DensityOperator rho_b_q = marginal_b(rho_ab);

  for (const auto& [gname, sigma] : sigmas_c) {
    BoundReport r =
        fidelity_bound_c(rho_xb, sigma ? *sigma : rho_b_c, cfg.tol);
    tag(r, trial);
    r.context["sigma"] = std::string(gname);
    out.push_back(std::move(r));
  }
  const std::array<std::pair<const char*, const DensityOperator*>, 2>
      sigmas_q = {{{"marginal", &rho_b_q}, {"random", &sigma_q}}};
  for (const auto& [gname, sigma] : sigmas_q) {
    BoundReport r = fidelity_bound_q(rho_ab, *sigma, cfg.tol);
    tag(r, trial);
    r.context["sigma"] = std::string(gname);
    out.push_back(std::move(r));
  }
}

void uncertainty_trial(std::vector<BoundReport>& out, const RunConfig& cfg,
                       int trial) {
  Rng rng = Rng::stream(cfg.seed, "uncertainty", trial);
  const int da = rng.next_int(2, cfg.max_dim);
  const int db = rng.next_int(2, cfg.max_dim);
  const int dc = rng.next_int(2, cfg.max_dim);
  const DensityOperator rho = random_tripartite(da, db, dc, true, rng);
  BoundReport r = uncertainty_check(rho, cfg.tol * 10.0);
  tag(r, trial);
  out.push_back(std::move(r));
}

void monogamy_trial(std::vector<BoundReport>& out, const RunConfig& cfg,
                    int trial) {
  Rng rng = Rng::stream(cfg.seed, "monogamy", trial);
  const int da = rng.next_int(2, cfg.max_dim);
  const int db = rng.next_int(2, cfg.max_dim);
  const int dc = rng.next_int(2, cfg.max_dim);
  const DensityOperator rho = random_tripartite(da, db, dc, true, rng);
  BoundReport r = monogamy_check(rho, cfg.tol * 10.0);
  tag(r, trial);
  out.push_back(std::move(r));
}

void quad_trial(std::vector<BoundReport>& out, const RunConfig& cfg,
                int trial) {
  Rng rng = Rng::stream(cfg.seed, "quad", trial);
  const int m = rng.next_int(2, cfg.max_dim);
  const int d = rng.next_int(2, cfg.max_dim);
  const Ensemble e = random_ensemble(m, d, true, rng);
  BoundReport a = quad_bound(e, cfg.tol * 0.01);
  tag(a, trial);
  out.push_back(std::move(a));
  BoundReport b = d3_quad_relation(e, cfg.tol * 0.01);
  tag(b, trial);
  out.push_back(std::move(b));
}

void beigi_trial(std::vector<BoundReport>& out, const RunConfig& cfg,
                 int trial) {
  Rng rng = Rng::stream(cfg.seed, "beigi", trial);
  const int m = rng.next_int(2, cfg.max_dim);
  const int db = rng.next_int(2, cfg.max_dim);
  const Ensemble e = random_ensemble(m, db, false, rng);
  BoundReport r = beigi_check(cq_state(e), cfg.tol);
  tag(r, trial);
  out.push_back(std::move(r));
}

using TrialFn = void (*)(std::vector<BoundReport>&, const RunConfig&, int);

const std::vector<std::pair<std::string, TrialFn>>& suite_table() {
  static const std::vector<std::pair<std::string, TrialFn>> table = {
      {"prop", prop_trial},           {"fano", fano_trial},
      {"pgm", pgm_trial},             {"recovery", recovery_trial},
      {"fidelity", fidelity_trial},   {"uncertainty", uncertainty_trial},
      {"monogamy", monogamy_trial},   {"quad", quad_trial},
      {"beigi", beigi_trial},
  };
  return table;
}

void validate_config(const RunConfig& cfg) {
  if (cfg.trials < 1) throw BadParams("trials must be >= 1");
  if (cfg.max_dim < 2) throw BadParams("max_dim must be >= 2");
  if (!(cfg.tol > 0.0)) throw BadParams("tol must be positive");
}

// ---- reproduction tables ----

const std::vector<double>& p0_grid() {
  static const std::vector<double> grid = {0.1, 0.2, 0.3, 0.4, 0.5,
                                           0.6, 0.7, 0.8, 0.9};
  return grid;
}

constexpr double kPi = 3.14159265358979323846;

const std::vector<double>& theta_grid() {
  static const std::vector<double> grid = {0.0, kPi / 8, kPi / 4, 3 * kPi / 8,
                                           kPi / 2};
  return grid;
}

Ensemble l_ensemble(int m, double p0) {
  const ProbVector pv = l_distribution(m, p0);
  const DensityOperator unit =
      DensityOperator::make(ComplexMatrix(Mat::Ones(1, 1), {1}));
  std::vector<DensityOperator> states(static_cast<std::size_t>(m), unit);
  return Ensemble::make(pv.p, std::move(states));
}

void check_p0(double p0) {
  if (!(p0 >= 0.0 && p0 <= 1.0)) throw BadParams("p0 must lie in [0, 1]");
}

void repro_l_distribution(std::vector<BoundReport>& out,
                          const ReproParams& params) {
  const std::vector<int> ms = params.m ? std::vector<int>{*params.m}
                                       : std::vector<int>{2, 3, 4, 8};
  const std::vector<double> p0s =
      params.p0 ? std::vector<double>{*params.p0} : p0_grid();
  const bool pinned = params.m.has_value() && params.p0.has_value();
  for (int m : ms) {
    if (m < 2) throw BadParams("m must be >= 2");
    for (double p0 : p0s) {
      check_p0(p0);
      // Equality premise: the distinguished symbol carries the largest
      // probability (any m == 2 split is a relabeling of such a case).
      if (!pinned && m != 2 && p0 < 1.0 / m - 1e-12) continue;
      const Ensemble e = l_ensemble(m, p0);
      BoundReport a = pgm_bound(e, kReproTol);
      a.context["case"] = std::string("l-distribution");
      a.context["m"] = static_cast<std::int64_t>(m);
      a.context["p0"] = p0;
      out.push_back(std::move(a));
      const DensityOperator sigma =
          DensityOperator::make(ComplexMatrix(e.average(), {1}));
      BoundReport b = fidelity_bound_c(cq_state(e), sigma, kReproTol);
      b.context["case"] = std::string("l-distribution");
      b.context["m"] = static_cast<std::int64_t>(m);
      b.context["p0"] = p0;
      out.push_back(std::move(b));
    }
  }
}

void repro_bell_diagonal(std::vector<BoundReport>& out,
                         const ReproParams& params) {
  const std::vector<int> ds =
      params.d ? std::vector<int>{*params.d} : std::vector<int>{2, 3};
  const std::vector<double> p0s =
      params.p0 ? std::vector<double>{*params.p0} : p0_grid();
  const bool pinned = params.d.has_value() && params.p0.has_value();
  for (int d : ds) {
    if (d < 2) throw BadParams("d must be >= 2");
    for (double p0 : p0s) {
      check_p0(p0);
      if (!pinned && p0 < 1.0 / (d * d) - 1e-12) continue;
      const DensityOperator rho =
          bell_diagonal(d, l_distribution(d * d, p0));
      BoundReport r = recovery_bound(rho, kReproTol);
      r.context["case"] = std::string("bell-diagonal");
      r.context["d"] = static_cast<std::int64_t>(d);
      r.context["p0"] = p0;
      out.push_back(std::move(r));
    }
  }
}

void repro_theta(std::vector<BoundReport>& out, const ReproParams& params) {
  const std::vector<int> ds =
      params.d ? std::vector<int>{*params.d} : std::vector<int>{2, 3, 4};
  const std::vector<double> p0s =
      params.p0 ? std::vector<double>{*params.p0} : p0_grid();
  const bool pinned = params.d.has_value() && params.p0.has_value();
  for (int d : ds) {
    if (d < 2) throw BadParams("d must be >= 2");
    for (double p0 : p0s) {
      check_p0(p0);
      if (!pinned && p0 < 1.0 / d - 1e-12) continue;
      const DensityOperator theta = theta_state(d, p0);
      const DensityOperator rho3 =
          DensityOperator::make(ComplexMatrix(theta.mat(), {d, 1, 1}));
      BoundReport r = uncertainty_check(rho3, kReproTol);
      r.context["case"] = std::string("theta");
      r.context["d"] = static_cast<std::int64_t>(d);
      r.context["p0"] = p0;
      out.push_back(std::move(r));
    }
  }
}

void repro_monogamy(std::vector<BoundReport>& out, const ReproParams& params) {
  const std::vector<int> ds =
      params.d ? std::vector<int>{*params.d} : std::vector<int>{2, 3};
  const std::vector<double> thetas =
      params.theta ? std::vector<double>{*params.theta} : theta_grid();
  for (int d : ds) {
    if (d < 2) throw BadParams("d must be >= 2");
    for (double theta : thetas) {
      if (!std::isfinite(theta)) throw BadParams("theta must be finite");
      BoundReport r = monogamy_check(monogamy_state(d, theta), kReproTol);
      r.context["case"] = std::string("monogamy");
      r.context["d"] = static_cast<std::int64_t>(d);
      r.context["theta"] = theta;
      out.push_back(std::move(r));
    }
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : suite_table()) out.push_back(name);
    return out;
  }();
  return names;
}

bool is_suite_name(const std::string& name) {
  if (name == "all") return true;
  for (const std::string& s : suite_names()) {
    if (s == name) return true;
  }
  return false;
}

std::vector<BoundReport> run_suite(const std::string& suite,
                                   const RunConfig& config) {
  validate_config(config);
  if (!is_suite_name(suite)) throw BadParams("unknown suite: " + suite);
  std::vector<BoundReport> out;
  for (const auto& [name, fn] : suite_table()) {
    if (suite != "all" && suite != name) continue;
    for (int trial = 0; trial < config.trials; ++trial) {
      fn(out, config, trial);
    }
  }
  return out;
}

const std::vector<std::string>& repro_case_names() {
  static const std::vector<std::string> names = {
      "l-distribution", "bell-diagonal", "theta", "monogamy"};
  return names;
}

std::vector<BoundReport> reproduce_case(const std::string& name,
                                        const ReproParams& params) {
  std::vector<BoundReport> out;
  if (name == "l-distribution") {
    repro_l_distribution(out, params);
  } else if (name == "bell-diagonal") {
    repro_bell_diagonal(out, params);
  } else if (name == "theta") {
    repro_theta(out, params);
  } else if (name == "monogamy") {
    repro_monogamy(out, params);
  } else {
    throw BadParams("unknown case: " + name);
  }
  if (out.empty()) {
    throw BadParams("no grid points satisfy the equality premise");
  }
  return out;
}

std::vector<std::pair<double, double>> ellipse_points(int m, int points) {
  if (m < 2) throw BadParams("m must be >= 2");
  if (points < 2) throw BadParams("points must be >= 2");
  std::vector<std::pair<double, double>> out;
  const double lo = 1.0 / m;
  for (int i = 0; i < points; ++i) {
    const double x =
        (i == points - 1)
            ? 1.0
            : lo + (1.0 - lo) * (static_cast<double>(i) / (points - 1));
    double z = envelope_g(x, m) / m;
    z = std::min(1.0, std::max(lo, z));
    out.emplace_back(x, z);
  }
  return out;
}

}  // namespace pgb
