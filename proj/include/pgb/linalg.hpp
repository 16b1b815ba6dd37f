#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "pgb/errors.hpp"

namespace pgb {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr double kHermTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kRankTol = 1e-12;
inline constexpr double kEigTol = 1e-10;

// Square complex matrix with optional tensor-factor bookkeeping. dims lists
// subsystem dimensions in row-major order: the first factor owns the most
// significant digit of a composite index.
struct ComplexMatrix {
  Mat mat;
  std::vector<int> dims;  // empty when no tensor structure is attached

  ComplexMatrix() = default;
  explicit ComplexMatrix(Mat m, std::vector<int> d = {});

  int dim() const { return static_cast<int>(mat.rows()); }
  bool has_dims() const { return !dims.empty(); }
  std::vector<int> dims_or_single() const {
    return has_dims() ? dims : std::vector<int>{dim()};
  }
};

struct EigDecomposition {
  Eigen::VectorXd eigenvalues;  // ascending
  Mat eigenvectors;             // column k pairs with eigenvalues(k)
};

double max_abs(const Mat& m);
bool is_hermitian(const Mat& m, double tol = kHermTol);
void require_hermitian(const Mat& m, double tol = kHermTol);
// Same check with a label naming the offending operator in the error.
void require_hermitian(const Mat& m, const char* what, double tol = kHermTol);

// Cyclic complex Jacobi eigensolver. Converged when the off-diagonal
// Frobenius mass falls below 1e-14 * ||M||_F; hard cap of 100 sweeps.
EigDecomposition eig_hermitian(const Mat& m);

double lambda_max(const Mat& herm);
double lambda_min(const Mat& herm);

// Spectral power with the pseudo-inverse kernel convention: eigenvalues at or
// below rank_tol * lambda_max map to 0 for every exponent t, including t = 0
// (support projector) and t < 0. Rejects inputs with eigenvalues below
// -psd_tol (relative).
Mat mat_power(const Mat& m, double t);
ComplexMatrix mat_power(const ComplexMatrix& m, double t);

Mat kron_mat(const Mat& a, const Mat& b);
// Tensor product; subsystem dims concatenate (a factor without dims counts
// as one subsystem of its full dimension).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Trace out every subsystem not listed in keep. keep must be strictly
// increasing and in range; the result carries the kept dims.
ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<int>& keep);

// Transpose one subsystem in place; a pure entry permutation plus nothing
// else, so applying it twice is bit-exact identity.
ComplexMatrix partial_transpose(const ComplexMatrix& m, int subsystem);

// Exchange the two factors of a bipartite operator: the result lives on
// dims {d1, d0} with out((b,a),(b',a')) = in((a,b),(a',b')).
ComplexMatrix swap_subsystems(const ComplexMatrix& m);

}  // namespace pgb
