#include "pgb/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pgb {

ComplexMatrix::ComplexMatrix(Mat m, std::vector<int> d)
    : mat(std::move(m)), dims(std::move(d)) {
  if (mat.rows() != mat.cols())
    throw BadParams("ComplexMatrix must be square");
  if (!dims.empty()) {
    long long prod = 1;
    for (int x : dims) {
      if (x <= 0) throw BadParams("subsystem dims must be positive");
      prod *= x;
    }
    if (prod != mat.rows())
      throw DimensionMismatch("product of subsystem dims != matrix dimension");
  }
}

double max_abs(const Mat& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const Mat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tol * std::max(1.0, max_abs(m));
}

void require_hermitian(const Mat& m, double tol) {
  if (!is_hermitian(m, tol))
    throw NotHermitian("matrix deviates from its adjoint beyond tolerance");
}

void require_hermitian(const Mat& m, const char* what, double tol) {
  if (!is_hermitian(m, tol))
    throw NotHermitian(std::string(what) +
                       " deviates from its adjoint beyond tolerance");
}

namespace {

double offdiag_norm(const Mat& a) {
  const int n = static_cast<int>(a.rows());
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

EigDecomposition eig_hermitian(const Mat& m_in) {
  require_hermitian(m_in);
  const int n = static_cast<int>(m_in.rows());
  Mat a = 0.5 * (m_in + m_in.adjoint());
  Mat v = Mat::Identity(n, n);
  const double target = 1e-14 * a.norm();

  bool done = (n <= 1) || offdiag_norm(a) <= target;
  for (int sweep = 0; sweep < 100 && !done; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = std::abs(a(p, q));
        if (apq == 0.0) continue;
        const Cplx phase = a(p, q) / apq;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0.0)
                             ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                             : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Cplx cphase = std::conj(phase);
        // Right-multiply columns p,q by the rotation.
        for (int i = 0; i < n; ++i) {
          const Cplx aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip - cphase * s * aiq;
          a(i, q) = s * aip + cphase * c * aiq;
        }
        // Left-multiply rows p,q by its adjoint.
        for (int j = 0; j < n; ++j) {
          const Cplx apj = a(p, j), aqj = a(q, j);
          a(p, j) = c * apj - phase * s * aqj;
          a(q, j) = s * apj + phase * c * aqj;
        }
        for (int i = 0; i < n; ++i) {
          const Cplx vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - cphase * s * viq;
          v(i, q) = s * vip + cphase * c * viq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = Cplx(a(p, p).real(), 0.0);
        a(q, q) = Cplx(a(q, q).real(), 0.0);
      }
    }
    done = offdiag_norm(a) <= target;
  }
  if (!done)
    throw NoConvergence("eig_hermitian: Jacobi sweep cap (100) reached");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });
  EigDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    out.eigenvalues(k) = a(order[k], order[k]).real();
    out.eigenvectors.col(k) = v.col(order[k]);
  }
  return out;
}

double lambda_max(const Mat& herm) {
  if (herm.rows() == 0) return 0.0;
  const auto ed = eig_hermitian(herm);
  return ed.eigenvalues(ed.eigenvalues.size() - 1);
}

double lambda_min(const Mat& herm) {
  if (herm.rows() == 0) return 0.0;
  return eig_hermitian(herm).eigenvalues(0);
}

Mat mat_power(const Mat& m, double t) {
  const auto ed = eig_hermitian(m);
  const int n = static_cast<int>(ed.eigenvalues.size());
  if (n == 0) return m;
  const double lmax = ed.eigenvalues(n - 1);
  const double lmin = ed.eigenvalues(0);
  const double scale = std::max({1.0, std::abs(lmax), std::abs(lmin)});
  if (lmin < -kPsdTol * scale)
    throw NotPSD("mat_power: eigenvalue below -psd_tol");
  const double cutoff = kRankTol * std::max(lmax, 0.0);
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; ++i)
    d(i) = (ed.eigenvalues(i) <= cutoff) ? 0.0 : std::pow(ed.eigenvalues(i), t);
  return ed.eigenvectors * d.asDiagonal() * ed.eigenvectors.adjoint();
}

ComplexMatrix mat_power(const ComplexMatrix& m, double t) {
  return ComplexMatrix(mat_power(m.mat, t), m.dims);
}

Mat kron_mat(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  std::vector<int> dims = a.dims_or_single();
  const std::vector<int> bd = b.dims_or_single();
  dims.insert(dims.end(), bd.begin(), bd.end());
  return ComplexMatrix(kron_mat(a.mat, b.mat), std::move(dims));
}

namespace {

// Row-major strides: stride[k] = product of dims after k.
std::vector<long long> strides_of(const std::vector<int>& dims) {
  std::vector<long long> st(dims.size());
  long long acc = 1;
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    st[k] = acc;
    acc *= dims[k];
  }
  return st;
}

// Flat offsets of every multi-index over the given subsystem subset.
std::vector<long long> subset_offsets(const std::vector<int>& dims,
                                      const std::vector<long long>& strides,
                                      const std::vector<int>& subset) {
  long long total = 1;
  for (int s : subset) total *= dims[s];
  std::vector<long long> off(total, 0);
  long long repeat = total;
  for (int s : subset) {
    repeat /= dims[s];
    for (long long i = 0; i < total; ++i) {
      const long long digit = (i / repeat) % dims[s];
      off[i] += digit * strides[s];
    }
  }
  return off;
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<int>& keep) {
  if (!m.has_dims())
    throw MissingDims("partial_trace requires subsystem dims");
  const auto& dims = m.dims;
  const int k = static_cast<int>(dims.size());
  for (size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= k)
      throw BadParams("partial_trace: keep index out of range");
    if (i > 0 && keep[i] <= keep[i - 1])
      throw BadParams("partial_trace: keep must be strictly increasing");
  }
  std::vector<int> traced;
  for (int s = 0; s < k; ++s)
    if (std::find(keep.begin(), keep.end(), s) == keep.end()) traced.push_back(s);

  const auto strides = strides_of(dims);
  const auto keep_off = subset_offsets(dims, strides, keep);
  const auto tr_off = subset_offsets(dims, strides, traced);
  const long long dk = static_cast<long long>(keep_off.size());

  Mat out = Mat::Zero(dk, dk);
  for (long long t = 0; t < static_cast<long long>(tr_off.size()); ++t) {
    const long long tb = tr_off[t];
    for (long long i = 0; i < dk; ++i)
      for (long long j = 0; j < dk; ++j)
        out(i, j) += m.mat(keep_off[i] + tb, keep_off[j] + tb);
  }
  std::vector<int> kept_dims;
  for (int s : keep) kept_dims.push_back(dims[s]);
  return ComplexMatrix(std::move(out), std::move(kept_dims));
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, int subsystem) {
  if (!m.has_dims())
    throw MissingDims("partial_transpose requires subsystem dims");
  const auto& dims = m.dims;
  if (subsystem < 0 || subsystem >= static_cast<int>(dims.size()))
    throw BadParams("partial_transpose: subsystem index out of range");
  const auto strides = strides_of(dims);
  const long long st = strides[subsystem];
  const long long ds = dims[subsystem];
  const long long n = m.dim();
  Mat out(n, n);
  for (long long r = 0; r < n; ++r) {
    const long long rs = (r / st) % ds;
    for (long long c = 0; c < n; ++c) {
      const long long cs = (c / st) % ds;
      out(r + (cs - rs) * st, c + (rs - cs) * st) = m.mat(r, c);
    }
  }
  return ComplexMatrix(std::move(out), dims);
}

ComplexMatrix swap_subsystems(const ComplexMatrix& m) {
  if (!m.has_dims() || m.dims.size() != 2)
    throw BadParams("swap_subsystems requires exactly two subsystem dims");
  const long long d0 = m.dims[0];
  const long long d1 = m.dims[1];
  const long long n = m.dim();
  Mat out(n, n);
  for (long long a = 0; a < d0; ++a)
    for (long long b = 0; b < d1; ++b)
      for (long long ap = 0; ap < d0; ++ap)
        for (long long bp = 0; bp < d1; ++bp)
          out(b * d0 + a, bp * d0 + ap) = m.mat(a * d1 + b, ap * d1 + bp);
  return ComplexMatrix(std::move(out),
                       {static_cast<int>(d1), static_cast<int>(d0)});
}

}  // namespace pgb
