#pragma once

#include <variant>

#include "pgb/linalg.hpp"
#include "pgb/states.hpp"
#include "pgb/strategies.hpp"

namespace pgb {

// Two-sided certificate for an optimal-performance value. Both bounds are
// backed by explicit witnesses that can be re-evaluated independently of the
// solver: the primal witness is a strategy (measurement or recovery channel)
// achieving `lower`, and the dual witness is a feasible certifying operator
// whose (scaled) trace equals `upper`. `converged` reports whether the
// requested gap was certified before the iteration cap; the bounds stay
// valid either way.
struct CertifiedValue {
  double lower = 0.0;
  double upper = 1.0;
  double gap = 1.0;
  std::variant<Povm, Channel> primal_witness;
  ComplexMatrix dual_witness;
  double upper_trace = 0.0;  // raw trace of dual_witness
  int iterations = 0;
  bool converged = false;
};

// Optimal guessing probability of an ensemble:
//   min { Tr w : w >= p_x phi_x for every x },
// solved by a barrier method; lower bounds additionally consider the
// pretty-good, best-single-guess, and uniform measurements.
CertifiedValue p_opt(const Ensemble& e, double tol = 1e-6);

// Optimal entanglement-recovery fidelity of a bipartite state (acting on B):
//   (1/dA) min { Tr w_B : rho_AB <= I_A tensor w_B },
// with lower bounds from the repaired dual channel, the pretty-good
// recovery, and (when square) the identity channel.
CertifiedValue r_opt(const DensityOperator& rho_ab, double tol = 1e-6);

// Largest fidelity-squared between rho_AC and pi_A tensor sigma_C over
// states sigma_C, computed by purifying rho_AC and running the recovery
// program on the A : reference marginal.
CertifiedValue max_fid_uniform(const DensityOperator& rho_ac,
                               double tol = 1e-6);

}  // namespace pgb
