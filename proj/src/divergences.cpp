#include "pgb/divergences.hpp"

#include <cmath>
#include <string>

#include "pgb/errors.hpp"

namespace pgb {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSupportLeakTol = 1e-9;

void check_alpha(double alpha, double lo) {
  if (std::isnan(alpha) || alpha < lo)
    throw UnsupportedAlpha("order " + std::to_string(alpha) +
                           " below minimum " + std::to_string(lo));
}

// Projector onto the support of a PSD matrix, plus its eigendecomposition.
struct SupportInfo {
  EigDecomposition eig;
  double cutoff = 0.0;
};

SupportInfo support_of(const Mat& m) {
  SupportInfo s;
  s.eig = eig_hermitian(m);
  const int n = static_cast<int>(s.eig.eigenvalues.size());
  const double top = std::max(s.eig.eigenvalues(n - 1), 0.0);
  s.cutoff = kRankTol * top;
  return s;
}

double support_leak(const Mat& rho, const SupportInfo& s) {
  // Tr[rho (I - Pi_sigma)] with Pi_sigma the support projector.
  double inside = 0.0;
  const int n = static_cast<int>(s.eig.eigenvalues.size());
  for (int j = 0; j < n; ++j) {
    if (s.eig.eigenvalues(j) <= s.cutoff) continue;
    const Vec v = s.eig.eigenvectors.col(j);
    inside += (v.adjoint() * rho * v)(0, 0).real();
  }
  return rho.trace().real() - inside;
}

double umegaki(const Mat& rho, const SupportInfo& sig) {
  // Tr[rho log2 rho] - Tr[rho log2 sigma], both on the respective supports.
  EigDecomposition er = eig_hermitian(rho);
  const int n = static_cast<int>(er.eigenvalues.size());
  const double rcut = kRankTol * std::max(er.eigenvalues(n - 1), 0.0);
  double h = 0.0;
  for (int j = 0; j < n; ++j) {
    const double lam = er.eigenvalues(j);
    if (lam > rcut) h += lam * std::log2(lam);
  }
  double cross = 0.0;
  for (int j = 0; j < n; ++j) {
    const double mu = sig.eig.eigenvalues(j);
    if (mu <= sig.cutoff) continue;
    const Vec v = sig.eig.eigenvectors.col(j);
    const double w = (v.adjoint() * rho * v)(0, 0).real();
    cross += w * std::log2(mu);
  }
  return h - cross;
}

}  // namespace

double binary_entropy(double p) {
  if (std::isnan(p) || p < 0.0 || p > 1.0)
    throw OutOfRange("probability " + std::to_string(p) +
                     " outside [0, 1]");
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

double renyi_classical(const ProbVector& p, const ProbVector& q,
                       double alpha) {
  check_alpha(alpha, 0.0);
  if (p.size() != q.size())
    throw LengthMismatch("distributions have sizes " +
                         std::to_string(p.size()) + " and " +
                         std::to_string(q.size()));
  const int n = p.size();
  if (alpha == 0.0) {
    double mass = 0.0;
    for (int i = 0; i < n; ++i)
      if (p.p[i] > 0.0) mass += q.p[i];
    if (mass <= 0.0) return kInf;
    return -std::log2(mass);
  }
  if (alpha == 1.0) {
    double kl = 0.0;
    for (int i = 0; i < n; ++i) {
      if (p.p[i] <= 0.0) continue;
      if (q.p[i] <= 0.0) return kInf;
      kl += p.p[i] * std::log2(p.p[i] / q.p[i]);
    }
    return kl;
  }
  if (std::isinf(alpha)) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      if (p.p[i] <= 0.0) continue;
      if (q.p[i] <= 0.0) return kInf;
      worst = std::max(worst, p.p[i] / q.p[i]);
    }
    return std::log2(worst);
  }
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    if (p.p[i] <= 0.0) continue;
    if (q.p[i] <= 0.0) {
      if (alpha > 1.0) return kInf;
      continue;  // zero contribution for alpha < 1
    }
    s += std::pow(p.p[i], alpha) * std::pow(q.p[i], 1.0 - alpha);
  }
  if (s <= 0.0) return kInf;  // disjoint supports, alpha < 1
  return std::log2(s) / (alpha - 1.0);
}

double binary_d(double p, double q, double alpha) {
  if (std::isnan(p) || p < 0.0 || p > 1.0)
    throw OutOfRange("probability " + std::to_string(p) + " outside [0, 1]");
  if (std::isnan(q) || q < 0.0 || q > 1.0)
    throw OutOfRange("probability " + std::to_string(q) + " outside [0, 1]");
  return renyi_classical(ProbVector{{p, 1.0 - p}}, ProbVector{{q, 1.0 - q}},
                         alpha);
}

double fidelity(const Mat& rho, const Mat& sigma) {
  if (rho.rows() != sigma.rows())
    throw DimensionMismatch("fidelity arguments have different dimensions");
  require_hermitian(rho, "fidelity argument");
  require_hermitian(sigma, "fidelity argument");
  const Mat root = mat_power(sigma, 0.5);
  const Mat inner = root * rho * root;
  EigDecomposition e = eig_hermitian(inner);
  // Kernel convention as in mat_power: eigenvalues at or below the relative
  // rank cutoff are treated as exact zeros, else sqrt turns solver noise of
  // size eps into errors of size sqrt(eps).
  const double cutoff =
      kRankTol * std::max(e.eigenvalues(e.eigenvalues.size() - 1), 0.0);
  double f = 0.0;
  for (int i = 0; i < e.eigenvalues.size(); ++i)
    if (e.eigenvalues(i) > cutoff) f += std::sqrt(e.eigenvalues(i));
  return f;
}

double fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim())
    throw DimensionMismatch("fidelity arguments have different dimensions");
  return fidelity(rho.mat(), sigma.mat());
}

double sandwiched(const Mat& rho, const Mat& sigma, double alpha) {
  check_alpha(alpha, 0.5);
  if (rho.rows() != sigma.rows())
    throw DimensionMismatch("divergence arguments have different dimensions");
  require_hermitian(rho, "divergence argument");
  require_hermitian(sigma, "divergence argument");

  SupportInfo sig = support_of(sigma);
  if (sig.eig.eigenvalues(sig.eig.eigenvalues.size() - 1) < -kPsdTol)
    throw NotPSD("second divergence argument is not positive semidefinite");
  if (alpha >= 1.0 && support_leak(rho, sig) > kSupportLeakTol) return kInf;

  if (alpha == 1.0) return umegaki(rho, sig);

  if (std::isinf(alpha)) {
    const Mat isqrt = mat_power(sigma, -0.5);
    return std::log2(std::max(lambda_max(isqrt * rho * isqrt), 0.0));
  }

  const double t = (1.0 - alpha) / (2.0 * alpha);
  const Mat k = mat_power(sigma, t);
  EigDecomposition e = eig_hermitian(k * rho * k);
  // Same kernel convention as mat_power: for alpha < 1 the fractional power
  // of a noise eigenvalue would dominate the true value, so clip at the
  // relative rank cutoff.
  const double cutoff =
      kRankTol * std::max(e.eigenvalues(e.eigenvalues.size() - 1), 0.0);
  double s = 0.0;
  for (int i = 0; i < e.eigenvalues.size(); ++i) {
    const double lam = e.eigenvalues(i);
    if (lam > cutoff) s += std::pow(lam, alpha);
  }
  if (s <= 0.0) return kInf;
  return std::log2(s) / (alpha - 1.0);
}

double sandwiched(const DensityOperator& rho, const DensityOperator& sigma,
                  double alpha) {
  return sandwiched(rho.mat(), sigma.mat(), alpha);
}

double cond_entropy_down(const DensityOperator& rho_ab, double alpha) {
  if (rho_ab.dims().size() != 2)
    throw BadParams("conditional entropy needs exactly two subsystems");
  const int da = rho_ab.dims()[0];
  const ComplexMatrix rb = partial_trace(rho_ab.cm(), {1});
  const Mat pia = Mat::Identity(da, da) / static_cast<double>(da);
  const ComplexMatrix ref = kron(ComplexMatrix(pia, {da}), rb);
  return std::log2(static_cast<double>(da)) -
         sandwiched(rho_ab.mat(), ref.mat, alpha);
}

}  // namespace pgb
