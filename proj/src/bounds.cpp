#include "pgb/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "pgb/errors.hpp"
#include "pgb/linalg.hpp"

namespace pgb {

namespace {

constexpr double kDiagTol = 1e-10;

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

void require_bipartite(const DensityOperator& rho, const char* what) {
  if (rho.dims().size() != 2) {
    throw BadParams(std::string(what) + " requires a bipartite state");
  }
}

void require_matching_sigma(const DensityOperator& rho,
                            const DensityOperator& sigma_b) {
  if (sigma_b.dim() != rho.dims()[1]) {
    throw DimensionMismatch("reference state dimension " +
                            std::to_string(sigma_b.dim()) +
                            " does not match subsystem B dimension " +
                            std::to_string(rho.dims()[1]));
  }
}

// Joint distribution P(x, y) = p_x <y|phi_x|y> of a diagonal ensemble.
// Non-diagonal or non-commuting families are rejected: the squared-weight
// quantities below are defined through this classical table.
Eigen::MatrixXd classical_joint(const Ensemble& e) {
  const int m = e.size();
  const int d = e.dim();
  for (int x = 0; x < m; ++x) {
    const Mat& a = e.states[x].mat();
    Mat off = a;
    off.diagonal().setZero();
    if (max_abs(off) > kDiagTol) {
      throw NonCommuting("ensemble state " + std::to_string(x) +
                         " is not diagonal in the computational basis");
    }
    for (int y = x + 1; y < m; ++y) {
      const Mat& b = e.states[y].mat();
      if (max_abs(a * b - b * a) > kDiagTol) {
        throw NonCommuting("ensemble states " + std::to_string(x) + " and " +
                           std::to_string(y) + " do not commute");
      }
    }
  }
  Eigen::MatrixXd joint(m, d);
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < d; ++y) {
      joint(x, y) = e.priors[x] * std::max(0.0, e.states[x].mat()(y, y).real());
    }
  }
  return joint;
}

Mat uniform_reference(int m, const DensityOperator& sigma_b) {
  return kron_mat(Mat::Identity(m, m) / static_cast<double>(m), sigma_b.mat());
}

}  // namespace

BoundReport make_report(std::string name, double lhs, double rhs,
                        bool lhs_ge_rhs, double tolerance, Context context) {
  BoundReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.lhs_ge_rhs = lhs_ge_rhs;
  r.tolerance = tolerance;
  if (std::isinf(lhs) && std::isinf(rhs) && (lhs > 0) == (rhs > 0)) {
    r.slack = 0.0;  // matching infinities count as equality
  } else {
    r.slack = lhs_ge_rhs ? lhs - rhs : rhs - lhs;
  }
  r.satisfied = r.slack >= -tolerance;
  r.context = std::move(context);
  r.context["orientation"] =
      std::string(lhs_ge_rhs ? "lhs>=rhs" : "rhs>=lhs");
  return r;
}

double ellipse_residual(double x, double z, int m) {
  if (m < 2) throw BadParams("ellipse_residual requires m >= 2");
  const double u = x + z - 1.0;
  const double v = x - z;
  return m * u * u + (static_cast<double>(m) / (m - 1)) * v * v - 1.0;
}

double envelope_g(double x, int m) {
  if (m < 2) throw BadParams("envelope_g requires m >= 2");
  x = clamp01(x);
  const double s = std::sqrt(x) + std::sqrt((m - 1) * (1.0 - x));
  return s * s;
}

BoundReport check_prop_c(const DensityOperator& rho_xb, const Povm& povm,
                         const DensityOperator& sigma_b, double alpha,
                         double tol) {
  require_bipartite(rho_xb, "check_prop_c");
  require_matching_sigma(rho_xb, sigma_b);
  const int m = rho_xb.dims()[0];
  const Ensemble e = ensemble_from_cq(rho_xb);
  const double guess = guessing_prob(e, povm);
  const double lhs =
      sandwiched(rho_xb.mat(), uniform_reference(m, sigma_b), alpha);
  const double rhs = binary_d(guess, 1.0 / m, alpha);
  Context ctx{{"alpha", alpha},
              {"m", static_cast<std::int64_t>(m)},
              {"dim_b", static_cast<std::int64_t>(rho_xb.dims()[1])},
              {"p_guess", guess}};
  return make_report("prop_c", lhs, rhs, true, tol, std::move(ctx));
}

BoundReport check_prop_q(const DensityOperator& rho_ab, const Channel& ch,
                         const DensityOperator& sigma_b, double alpha,
                         double tol) {
  require_bipartite(rho_ab, "check_prop_q");
  require_matching_sigma(rho_ab, sigma_b);
  const int da = rho_ab.dims()[0];
  const double rec = recovery_fidelity(rho_ab, ch);
  const double lhs =
      sandwiched(rho_ab.mat(), uniform_reference(da, sigma_b), alpha);
  const double rhs =
      binary_d(rec, 1.0 / (static_cast<double>(da) * da), alpha);
  Context ctx{{"alpha", alpha},
              {"dim_a", static_cast<std::int64_t>(da)},
              {"dim_b", static_cast<std::int64_t>(rho_ab.dims()[1])},
              {"rec_fidelity", rec}};
  return make_report("prop_q", lhs, rhs, true, tol, std::move(ctx));
}

BoundReport fano_classical(const DensityOperator& rho_xb, double tol) {
  require_bipartite(rho_xb, "fano_classical");
  const int m = rho_xb.dims()[0];
  if (m < 2) throw BadParams("fano_classical requires at least two labels");
  const Ensemble e = ensemble_from_cq(rho_xb);
  const CertifiedValue c = p_opt(e, tol / 100.0);
  // Conservative direction: the certified lower endpoint maximizes the rhs
  // (which decreases in the optimum on [1/m, 1]).
  const double p = clamp01(c.lower);
  const double lhs = cond_entropy_down(rho_xb, 1.0);
  const double rhs = (1.0 - p) * std::log2(static_cast<double>(m - 1)) +
                     binary_entropy(p);
  Context ctx{{"m", static_cast<std::int64_t>(m)},
              {"dim_b", static_cast<std::int64_t>(rho_xb.dims()[1])},
              {"p_opt_lower", c.lower},
              {"p_opt_upper", c.upper},
              {"sdp_converged", static_cast<std::int64_t>(c.converged)}};
  return make_report("fano_c", lhs, rhs, false, tol, std::move(ctx));
}

BoundReport fano_quantum(const DensityOperator& rho_ab, double tol) {
  require_bipartite(rho_ab, "fano_quantum");
  const int da = rho_ab.dims()[0];
  if (da < 2) throw BadParams("fano_quantum requires dim A >= 2");
  const CertifiedValue c = r_opt(rho_ab, tol / 100.0);
  const double r = clamp01(c.lower);
  const double mm = static_cast<double>(da) * da;
  const double lhs = cond_entropy_down(rho_ab, 1.0);
  const double rhs = -std::log2(static_cast<double>(da)) +
                     (1.0 - r) * std::log2(mm - 1.0) + binary_entropy(r);
  Context ctx{{"dim_a", static_cast<std::int64_t>(da)},
              {"dim_b", static_cast<std::int64_t>(rho_ab.dims()[1])},
              {"r_opt_lower", c.lower},
              {"r_opt_upper", c.upper},
              {"sdp_converged", static_cast<std::int64_t>(c.converged)}};
  return make_report("fano_q", lhs, rhs, false, tol, std::move(ctx));
}

BoundReport pgm_bound(const Ensemble& e, double tol) {
  const int m = e.size();
  if (m < 2) throw BadParams("pgm_bound requires at least two states");
  const double lhs = p_pg(e);
  const CertifiedValue c = p_opt(e, tol / 100.0);
  // Upper endpoint: the rhs increases in the optimum on [1/m, 1], so this is
  // the hardest certified evaluation.
  const double p = clamp01(c.upper);
  const double rhs = p * p + (1.0 - p) * (1.0 - p) / (m - 1);
  Context ctx{{"m", static_cast<std::int64_t>(m)},
              {"dim", static_cast<std::int64_t>(e.dim())},
              {"p_opt_lower", c.lower},
              {"p_opt_upper", c.upper},
              {"sdp_converged", static_cast<std::int64_t>(c.converged)},
              {"rhs_weaker", p * p},
              {"slack_weaker", lhs - p * p},
              {"rhs_minus_uniform", rhs - 1.0 / m}};
  return make_report("pgm_bound", lhs, rhs, true, tol, std::move(ctx));
}

BoundReport recovery_bound(const DensityOperator& rho_ab, double tol) {
  require_bipartite(rho_ab, "recovery_bound");
  const int da = rho_ab.dims()[0];
  if (da < 2) throw BadParams("recovery_bound requires dim A >= 2");
  const int mm = da * da;
  const double lhs = r_pg(rho_ab);
  const CertifiedValue c = r_opt(rho_ab, tol / 100.0);
  const double r = clamp01(c.upper);
  const double rhs = r * r + (1.0 - r) * (1.0 - r) / (mm - 1);
  Context ctx{{"dim_a", static_cast<std::int64_t>(da)},
              {"dim_b", static_cast<std::int64_t>(rho_ab.dims()[1])},
              {"r_opt_lower", c.lower},
              {"r_opt_upper", c.upper},
              {"sdp_converged", static_cast<std::int64_t>(c.converged)},
              {"rhs_weaker", r * r},
              {"slack_weaker", lhs - r * r},
              {"rhs_minus_uniform", rhs - 1.0 / mm}};
  return make_report("recovery_bound", lhs, rhs, true, tol, std::move(ctx));
}

BoundReport fidelity_bound_c(const DensityOperator& rho_xb,
                             const DensityOperator& sigma_b, double tol) {
  require_bipartite(rho_xb, "fidelity_bound_c");
  require_matching_sigma(rho_xb, sigma_b);
  const int m = rho_xb.dims()[0];
  if (m < 2) throw BadParams("fidelity_bound_c requires at least two labels");
  const double f = fidelity(rho_xb.mat(), uniform_reference(m, sigma_b));
  const double lhs = m * f * f;
  const Ensemble e = ensemble_from_cq(rho_xb);
  const CertifiedValue c = p_opt(e, tol / 100.0);
  // Upper endpoint: the envelope decreases in its argument on [1/m, 1].
  const double x = clamp01(c.upper);
  const double rhs = envelope_g(x, m);
  Context ctx{{"m", static_cast<std::int64_t>(m)},
              {"dim_b", static_cast<std::int64_t>(rho_xb.dims()[1])},
              {"fidelity", f},
              {"p_opt_lower", c.lower},
              {"p_opt_upper", c.upper},
              {"sdp_converged", static_cast<std::int64_t>(c.converged)}};
  return make_report("fidelity_c", lhs, rhs, false, tol, std::move(ctx));
}

BoundReport fidelity_bound_q(const DensityOperator& rho_ab,
                             const DensityOperator& sigma_b, double tol) {
  require_bipartite(rho_ab, "fidelity_bound_q");
  require_matching_sigma(rho_ab, sigma_b);
  const int da = rho_ab.dims()[0];
  if (da < 2) throw BadParams("fidelity_bound_q requires dim A >= 2");
  const int mm = da * da;
  const double f = fidelity(rho_ab.mat(), uniform_reference(da, sigma_b));
  const double lhs = mm * f * f;
  const CertifiedValue c = r_opt(rho_ab, tol / 100.0);
  const double x = clamp01(c.upper);
  const double rhs = envelope_g(x, mm);
  Context ctx{{"dim_a", static_cast<std::int64_t>(da)},
              {"dim_b", static_cast<std::int64_t>(rho_ab.dims()[1])},
              {"fidelity", f},
              {"r_opt_lower", c.lower},
              {"r_opt_upper", c.upper},
              {"sdp_converged", static_cast<std::int64_t>(c.converged)}};
  return make_report("fidelity_q", lhs, rhs, false, tol, std::move(ctx));
}

BoundReport uncertainty_check(const DensityOperator& rho_abc, double tol) {
  if (rho_abc.dims().size() != 3) {
    throw BadParams("uncertainty_check requires a tripartite state");
  }
  const int da = rho_abc.dims()[0];
  if (da < 2) throw BadParams("uncertainty_check requires dim A >= 2");
  const DensityOperator psi_xb = measure_conjugate(rho_abc, Conjugate::X);
  const DensityOperator xi_zc = measure_conjugate(rho_abc, Conjugate::Z);
  const CertifiedValue cx = p_opt(ensemble_from_cq(psi_xb), tol / 100.0);
  const CertifiedValue cz = p_opt(ensemble_from_cq(xi_zc), tol / 100.0);
  // Both optima at their upper endpoints: largest lhs against smallest rhs.
  const double x = clamp01(cx.upper);
  const double z = clamp01(cz.upper);
  const double lhs = da * z;
  const double rhs = envelope_g(x, da);
  Context ctx{{"dim_a", static_cast<std::int64_t>(da)},
              {"dim_b", static_cast<std::int64_t>(rho_abc.dims()[1])},
              {"dim_c", static_cast<std::int64_t>(rho_abc.dims()[2])},
              {"x_lower", cx.lower},
              {"x_upper", cx.upper},
              {"z_lower", cz.lower},
              {"z_upper", cz.upper},
              {"x_converged", static_cast<std::int64_t>(cx.converged)},
              {"z_converged", static_cast<std::int64_t>(cz.converged)},
              {"residual", ellipse_residual(x, z, da)}};
  return make_report("uncertainty", lhs, rhs, false, tol, std::move(ctx));
}

BoundReport monogamy_check(const DensityOperator& rho_abc, double tol) {
  if (rho_abc.dims().size() != 3) {
    throw BadParams("monogamy_check requires a tripartite state");
  }
  const int da = rho_abc.dims()[0];
  if (da < 2) throw BadParams("monogamy_check requires dim A >= 2");
  const int mm = da * da;
  const DensityOperator rho_ab =
      DensityOperator::make(partial_trace(rho_abc.cm(), {0, 1}));
  const DensityOperator rho_ac =
      DensityOperator::make(partial_trace(rho_abc.cm(), {0, 2}));
  const CertifiedValue cx = r_opt(rho_ab, tol / 100.0);
  const CertifiedValue cz = r_opt(rho_ac, tol / 100.0);
  const double x = clamp01(cx.upper);
  const double z = clamp01(cz.upper);
  const double lhs = mm * z;
  const double rhs = envelope_g(x, mm);
  Context ctx{{"dim_a", static_cast<std::int64_t>(da)},
              {"dim_b", static_cast<std::int64_t>(rho_abc.dims()[1])},
              {"dim_c", static_cast<std::int64_t>(rho_abc.dims()[2])},
              {"x_lower", cx.lower},
              {"x_upper", cx.upper},
              {"z_lower", cz.lower},
              {"z_upper", cz.upper},
              {"x_converged", static_cast<std::int64_t>(cx.converged)},
              {"z_converged", static_cast<std::int64_t>(cz.converged)},
              {"residual", ellipse_residual(x, z, mm)}};
  return make_report("monogamy", lhs, rhs, false, tol, std::move(ctx));
}

BoundReport quad_bound(const Ensemble& e, double tol) {
  const int m = e.size();
  if (m < 2) throw BadParams("quad_bound requires at least two states");
  const Eigen::MatrixXd joint = classical_joint(e);
  const double lhs = p_quad_classical(joint);
  const CertifiedValue c = p_opt(e, tol / 100.0);
  const double p = clamp01(c.upper);
  const double rhs =
      p * p * p + std::pow(1.0 - p, 3) / (static_cast<double>(m - 1) * (m - 1));
  Context ctx{{"m", static_cast<std::int64_t>(m)},
              {"dim", static_cast<std::int64_t>(e.dim())},
              {"p_opt_lower", c.lower},
              {"p_opt_upper", c.upper},
              {"sdp_converged", static_cast<std::int64_t>(c.converged)},
              {"rhs_tyson", p * p},
              {"slack_tyson", lhs - p * p}};
  return make_report("quad_bound", lhs, rhs, true, tol, std::move(ctx));
}

BoundReport d3_quad_relation(const Ensemble& e, double tol) {
  const int m = e.size();
  if (m < 2) throw BadParams("d3_quad_relation requires at least two states");
  const Eigen::MatrixXd joint = classical_joint(e);
  const double p_quad = p_quad_classical(joint);
  const DensityOperator rho_xb = cq_state(e);
  const Mat rho_b = e.average();
  const Mat ref = kron_mat(Mat::Identity(m, m) / static_cast<double>(m), rho_b);
  const double lhs = sandwiched(rho_xb.mat(), ref, 3.0);
  const double rhs =
      std::log2(static_cast<double>(m)) + 0.5 * std::log2(p_quad);
  Context ctx{{"m", static_cast<std::int64_t>(m)},
              {"dim", static_cast<std::int64_t>(e.dim())},
              {"p_quad", p_quad}};
  return make_report("d3_quad", lhs, rhs, false, tol, std::move(ctx));
}

BoundReport beigi_check(const DensityOperator& rho_xb, double tol) {
  require_bipartite(rho_xb, "beigi_check");
  const int m = rho_xb.dims()[0];
  const Ensemble e = ensemble_from_cq(rho_xb);
  const double ppg = p_pg(e);
  const double lhs = std::log2(m * ppg);
  const Mat rho_x = partial_trace(rho_xb.cm(), {0}).mat;
  const Mat rho_b = partial_trace(rho_xb.cm(), {1}).mat;
  const double w = 1.0 / m;
  const Mat mix = w * rho_xb.mat() + (1.0 - w) * kron_mat(rho_x, rho_b);
  const double rhs = sandwiched(rho_xb.mat(), mix, 2.0);
  Context ctx{{"m", static_cast<std::int64_t>(m)},
              {"dim_b", static_cast<std::int64_t>(rho_xb.dims()[1])},
              {"p_pg", ppg}};
  return make_report("beigi", lhs, rhs, true, tol, std::move(ctx));
}

}  // namespace pgb
