#pragma once

#include <cstdint>
#include <vector>

#include "pgb/linalg.hpp"
#include "pgb/rng.hpp"

namespace pgb {

// Validated density operator: Hermitian within hermiticity_tol, eigenvalues
// >= -psd_tol (relative), trace within 1e-10 of 1. Always built through
// make() so invariants hold by construction.
class DensityOperator {
 public:
  static DensityOperator make(ComplexMatrix m);

  const Mat& mat() const { return cm_.mat; }
  const ComplexMatrix& cm() const { return cm_; }
  const std::vector<int>& dims() const { return cm_.dims; }
  int dim() const { return cm_.dim(); }

 private:
  explicit DensityOperator(ComplexMatrix m) : cm_(std::move(m)) {}
  ComplexMatrix cm_;
};

struct ProbVector {
  std::vector<double> p;
  static ProbVector make(std::vector<double> p);
  int size() const { return static_cast<int>(p.size()); }
};

struct Ensemble {
  std::vector<double> priors;
  std::vector<DensityOperator> states;  // common dimension
  static Ensemble make(std::vector<double> priors,
                       std::vector<DensityOperator> states);
  int size() const { return static_cast<int>(priors.size()); }
  int dim() const { return states.empty() ? 0 : states[0].dim(); }
  Mat average() const;  // sum_x p_x phi_x
};

DensityOperator maximally_mixed(int d);
DensityOperator max_entangled(int d);  // dims {d, d}

// Block-diagonal encoding sum_x p_x |x><x| (X) tensor phi_x; dims {m, dim B}.
DensityOperator cq_state(const Ensemble& e);

// Inverse of cq_state for block-diagonal bipartite states. Zero-probability
// blocks decode to the maximally mixed state.
Ensemble ensemble_from_cq(const DensityOperator& rho_xb);

// Rank-1 purification on system (original dims) tensor reference of
// dimension rank(rho); tracing out the reference recovers rho.
DensityOperator purify(const DensityOperator& rho);

// Mass p0 on entry 0, the rest spread evenly over the remaining m-1 entries.
ProbVector l_distribution(int m, double p0);

// Mixture of the d^2 generalized maximally entangled basis states, built by
// shift/phase operators on the second half of Phi; weight index 0 is Phi.
DensityOperator bell_diagonal(int d, const ProbVector& weights);

// Pure state on one d-level system with amplitude sqrt(p0) on Fourier-basis
// vector 0 and sqrt((1-p0)/(d-1)) on each of the others.
DensityOperator theta_state(int d, double p0);

// Normalized superposition cos(theta)|Phi>_AB|0>_C + sin(theta)|Phi>_AC|0>_B
// on three d-level systems; dims {d, d, d}.
DensityOperator monogamy_state(int d, double theta);

// Unitary discrete Fourier matrix F(z,x) = exp(2*pi*i*x*z/d)/sqrt(d).
Mat fourier(int d);

enum class Conjugate { Z, X };

// Measure the first subsystem of a tripartite state in the computational (Z)
// or Fourier (X) basis. Z keeps subsystem C (result on X tensor C); X keeps
// subsystem B (result on X tensor B). Output is a valid cq state.
DensityOperator measure_conjugate(const DensityOperator& rho_abc,
                                  Conjugate which);

// Hilbert-Schmidt random density: G G^dag normalized, G i.i.d. standard
// complex Gaussian. pure = true draws a Haar-like random unit vector instead.
DensityOperator random_state(const std::vector<int>& dims, bool pure, Rng& rng);

DensityOperator random_density(int d, std::uint64_t seed);
DensityOperator random_density(int d, Rng& rng);

Ensemble random_ensemble(int m, int d, std::uint64_t seed, bool classical);
Ensemble random_ensemble(int m, int d, bool classical, Rng& rng);

DensityOperator random_tripartite(int da, int db, int dc, std::uint64_t seed,
                                  bool pure);
DensityOperator random_tripartite(int da, int db, int dc, bool pure, Rng& rng);

}  // namespace pgb
