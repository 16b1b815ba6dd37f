#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>

#include "pgb/divergences.hpp"
#include "pgb/optimal.hpp"
#include "pgb/states.hpp"
#include "pgb/strategies.hpp"

namespace pgb {

using ContextValue =
    std::variant<std::int64_t, std::uint64_t, double, std::string>;
using Context = std::map<std::string, ContextValue>;

// One checked inequality. slack is oriented so that slack >= 0 means the
// relation holds; the orientation is recorded in context (not as a separate
// top-level field). satisfied <=> slack >= -tolerance, and slack is always
// recomputable bit-for-bit from the stored lhs/rhs.
struct BoundReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool lhs_ge_rhs = true;
  double slack = 0.0;
  double tolerance = 0.0;
  bool satisfied = false;
  Context context;
};

// Assembles a report; matching infinities on both sides count as equality
// (slack 0) instead of NaN.
BoundReport make_report(std::string name, double lhs, double rhs,
                        bool lhs_ge_rhs, double tolerance, Context context);

// m (x+z-1)^2 + (m/(m-1)) (x-z)^2 - 1: zero on the trade-off boundary
// curve, negative inside. Symmetric under swapping x and z.
double ellipse_residual(double x, double z, int m);

// (sqrt(x) + sqrt((m-1)(1-x)))^2: the trade-off envelope, decreasing in x on
// [1/m, 1]; x is clamped into [0, 1]. envelope_g(x, m) / m is the upper
// branch of the boundary curve.
double envelope_g(double x, int m);

// Divergence-vs-guessing inequality for a cq state and an explicit
// measurement: D_alpha(rho_XB || pi_X ten sigma_B) >= d_alpha(P_guess, 1/m).
BoundReport check_prop_c(const DensityOperator& rho_xb, const Povm& povm,
                         const DensityOperator& sigma_b, double alpha,
                         double tol);

// Quantum analogue with a recovery channel: rhs = d_alpha(R, 1/dA^2).
BoundReport check_prop_q(const DensityOperator& rho_ab, const Channel& ch,
                         const DensityOperator& sigma_b, double alpha,
                         double tol);

// H(X|B) <= (1-P_opt) log2(m-1) + h2(P_opt), with P_opt taken at the
// certified lower endpoint (recorded in context).
BoundReport fano_classical(const DensityOperator& rho_xb, double tol);

// H(A|B) <= -log2 dA + (1-R_opt) log2(dA^2-1) + h2(R_opt), R_opt at the
// certified lower endpoint.
BoundReport fano_quantum(const DensityOperator& rho_ab, double tol);

// P_pg >= P_opt^2 + (1-P_opt)^2/(m-1), P_opt at the upper endpoint (the
// hardest evaluation); context also carries the weaker P_opt^2 comparison
// and the gap of the rhs above 1/m.
BoundReport pgm_bound(const Ensemble& e, double tol);

// R_pg >= R_opt^2 + (1-R_opt)^2/(dA^2-1), R_opt at the upper endpoint.
BoundReport recovery_bound(const DensityOperator& rho_ab, double tol);

// m F(rho_XB, pi_X ten sigma_B)^2 <= (sqrt(x) + sqrt((m-1)(1-x)))^2 at
// x = P_opt, upper endpoint (the rhs decreases in x).
BoundReport fidelity_bound_c(const DensityOperator& rho_xb,
                             const DensityOperator& sigma_b, double tol);

// dA^2 F(rho_AB, pi_A ten sigma_B)^2 <= the same expression at x = R_opt
// with m = dA^2.
BoundReport fidelity_bound_q(const DensityOperator& rho_ab,
                             const DensityOperator& sigma_b, double tol);

// Conjugate-measurement trade-off for a tripartite state:
// dA P_opt(Z|C) <= (sqrt(x) + sqrt((dA-1)(1-x)))^2 at x = P_opt(X|B).
// Both optima enter at their hardest certified endpoints.
BoundReport uncertainty_check(const DensityOperator& rho_abc, double tol);

// Recovery monogamy: dA^2 R_opt(A|C) <= the same expression at
// x = R_opt(A|B) with m = dA^2.
BoundReport monogamy_check(const DensityOperator& rho_abc, double tol);

// Squared-weight measurement bound for commuting (diagonal) ensembles:
// P_quad >= P_opt^3 + (1-P_opt)^3/(m-1)^2; context carries the weaker
// quadratic comparison P_quad >= P_opt^2.
BoundReport quad_bound(const Ensemble& e, double tol);

// D_3(rho_XB || pi_X ten rho_B) <= (1/2) log2(m^2 P_quad) for commuting
// ensembles.
BoundReport d3_quad_relation(const Ensemble& e, double tol);

// log2(m P_pg) >= D_2(rho_XB || (1/m) rho_XB + (1-1/m) rho_X ten rho_B).
BoundReport beigi_check(const DensityOperator& rho_xb, double tol);

}  // namespace pgb
