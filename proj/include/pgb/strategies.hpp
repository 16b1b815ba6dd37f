#pragma once

#include <vector>

#include "pgb/linalg.hpp"
#include "pgb/states.hpp"

namespace pgb {

// Positive operator-valued measure: elements are PSD and sum to the identity
// (validated by make within small tolerances).
struct Povm {
  std::vector<ComplexMatrix> elements;
  static Povm make(std::vector<ComplexMatrix> elements);
  int size() const { return static_cast<int>(elements.size()); }
  int dim() const { return elements.empty() ? 0 : elements[0].dim(); }
};

// Quantum channel in Choi form. The Choi operator lives on input tensor
// output (dims {d_in, d_out}), is PSD, and satisfies Tr_out J = I_in.
struct Channel {
  ComplexMatrix choi;
  static Channel make(ComplexMatrix choi);
  int dim_in() const { return choi.dims[0]; }
  int dim_out() const { return choi.dims[1]; }
};

// Pretty-good measurement: Lambda_x = phi^{-1/2} p_x phi_x phi^{-1/2} with
// phi the ensemble average; any deficit off the support of phi is folded
// into element 0 so the elements resolve the identity exactly.
Povm pgm(const Ensemble& e);

// Squared-weight variant: Lambda_x proportional to (p_x phi_x)^2 under the
// inverse square root of M = sum_x (p_x phi_x)^2.
Povm quad_pgm(const Ensemble& e);

// Deterministic strategy that always answers with the most likely label.
Povm best_single_guess(const Ensemble& e);

// Trivial strategy Lambda_x = I/m.
Povm uniform_povm(int m, int d);

// Success probability sum_x p_x Tr[Lambda_x phi_x] of measuring e with the
// given POVM, clamped to [0, 1] after a sanity window check.
double guessing_prob(const Ensemble& e, const Povm& povm);

// Guessing probability of the pretty-good measurement.
double p_pg(const Ensemble& e);

// Pretty-good recovery map for a bipartite state (dims {dA, dB}): acts on B,
// outputs a dA-dimensional system. Off the support of rho_B it replaces the
// input with the maximally mixed state so the map is exactly trace
// preserving.
Channel pretty_good_recovery(const DensityOperator& rho_ab);

Channel identity_channel(int d);

// Apply the channel to the second subsystem of a bipartite state; the result
// carries dims {dA, d_out}.
DensityOperator apply_channel(const Channel& ch, const DensityOperator& rho_ab);

// Overlap with the maximally entangled state after acting on B:
// Tr[Phi (id tensor ch)(rho_ab)]; requires d_out == dA.
double recovery_fidelity(const DensityOperator& rho_ab, const Channel& ch);

// Recovery fidelity achieved by the pretty-good recovery map.
double r_pg(const DensityOperator& rho_ab);

// Classical analogue of the squared-weight guessing probability for a joint
// distribution P(x, y) (rows x, columns y):
// sum_y (sum_x P^3) / (sum_x P^2), empty columns contributing zero.
double p_quad_classical(const Eigen::MatrixXd& joint);

}  // namespace pgb
