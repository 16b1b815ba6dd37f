#pragma once

#include <limits>

#include "pgb/linalg.hpp"
#include "pgb/states.hpp"

namespace pgb {

// Order parameter value standing for the alpha -> infinity limit.
inline constexpr double kAlphaInf = std::numeric_limits<double>::infinity();

// All entropic quantities use base-2 logarithms.

double binary_entropy(double p);

// Renyi divergence of order alpha in [0, inf] between finite distributions.
// Mass of P outside the support of Q gives +inf for alpha >= 1; for
// alpha < 1 those terms simply vanish.
double renyi_classical(const ProbVector& p, const ProbVector& q, double alpha);

// Renyi divergence between the Bernoulli(p) and Bernoulli(q) distributions.
double binary_d(double p, double q, double alpha);

// Uhlmann fidelity F(rho, sigma) = || sqrt(rho) sqrt(sigma) ||_1, in [0, 1].
double fidelity(const Mat& rho, const Mat& sigma);
double fidelity(const DensityOperator& rho, const DensityOperator& sigma);

// Minimal (sandwiched) quantum Renyi divergence of order alpha in [1/2, inf]:
//   D_alpha(rho || sigma)
//     = log2 Tr[ (sigma^{(1-alpha)/(2 alpha)} rho
//                 sigma^{(1-alpha)/(2 alpha)})^alpha ] / (alpha - 1),
// with the alpha -> 1 (relative entropy) and alpha -> inf (max-divergence)
// limits. sigma may be any positive semidefinite operator. If rho has more
// than 1e-9 of its mass outside the support of sigma, the value is +inf for
// alpha >= 1.
double sandwiched(const Mat& rho, const Mat& sigma, double alpha);
double sandwiched(const DensityOperator& rho, const DensityOperator& sigma,
                  double alpha);

// Downward conditional Renyi entropy of the first subsystem given the second:
//   H_alpha(A|B) = -D_alpha(rho_AB || I_A tensor rho_B)
// computed as log2 dA - D_alpha(rho_AB || pi_A tensor rho_B).
double cond_entropy_down(const DensityOperator& rho_ab, double alpha);

}  // namespace pgb
