#include "pgb/states.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <utility>

#include "pgb/errors.hpp"

namespace pgb {
namespace {

constexpr double kTraceTol = 1e-10;
constexpr double kProbTol = 1e-10;
constexpr double kPi = 3.14159265358979323846;

Mat outer(const Vec& v) { return v * v.adjoint(); }

Vec normalized_or_throw(Vec v) {
  const double n = v.norm();
  if (n < 1e-300) throw BadParams("cannot normalize zero vector");
  return v / n;
}

}  // namespace

DensityOperator DensityOperator::make(ComplexMatrix m) {
  require_hermitian(m.mat, "density operator");
  const double tr = m.mat.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol)
    throw BadParams("density operator trace " + std::to_string(tr) +
                    " differs from 1");
  const double lo = lambda_min(m.mat);
  const double scale = std::max(1.0, max_abs(m.mat));
  if (lo < -kPsdTol * scale)
    throw NotPSD("density operator has eigenvalue " + std::to_string(lo));
  return DensityOperator(std::move(m));
}

ProbVector ProbVector::make(std::vector<double> p) {
  if (p.empty()) throw BadParams("probability vector is empty");
  double sum = 0.0;
  for (double& v : p) {
    if (v < -1e-12)
      throw BadParams("negative probability " + std::to_string(v));
    v = std::max(v, 0.0);
    sum += v;
  }
  if (std::abs(sum - 1.0) > kProbTol)
    throw BadParams("probabilities sum to " + std::to_string(sum));
  return ProbVector{std::move(p)};
}

Ensemble Ensemble::make(std::vector<double> priors,
                        std::vector<DensityOperator> states) {
  if (priors.size() != states.size())
    throw CountMismatch("ensemble has " + std::to_string(priors.size()) +
                        " priors but " + std::to_string(states.size()) +
                        " states");
  if (states.empty()) throw BadParams("ensemble is empty");
  ProbVector pv = ProbVector::make(std::move(priors));
  const int d = states[0].dim();
  for (const auto& s : states)
    if (s.dim() != d)
      throw DimensionMismatch("ensemble states have mixed dimensions");
  return Ensemble{std::move(pv.p), std::move(states)};
}

Mat Ensemble::average() const {
  Mat acc = Mat::Zero(dim(), dim());
  for (int x = 0; x < size(); ++x) acc += priors[x] * states[x].mat();
  return acc;
}

DensityOperator maximally_mixed(int d) {
  if (d < 1) throw BadParams("dimension must be positive");
  Mat m = Mat::Identity(d, d) / static_cast<double>(d);
  return DensityOperator::make(ComplexMatrix(std::move(m), {d}));
}

DensityOperator max_entangled(int d) {
  if (d < 1) throw BadParams("dimension must be positive");
  Vec v = Vec::Zero(d * d);
  const double a = 1.0 / std::sqrt(static_cast<double>(d));
  for (int z = 0; z < d; ++z) v(z * d + z) = a;
  return DensityOperator::make(ComplexMatrix(outer(v), {d, d}));
}

DensityOperator cq_state(const Ensemble& e) {
  const int m = e.size();
  const int db = e.dim();
  Mat block = Mat::Zero(m * db, m * db);
  for (int x = 0; x < m; ++x)
    block.block(x * db, x * db, db, db) = e.priors[x] * e.states[x].mat();
  return DensityOperator::make(ComplexMatrix(std::move(block), {m, db}));
}

Ensemble ensemble_from_cq(const DensityOperator& rho_xb) {
  if (rho_xb.dims().size() != 2)
    throw BadParams("classical-quantum decoding needs exactly two subsystems");
  const int m = rho_xb.dims()[0];
  const int db = rho_xb.dims()[1];
  const Mat& r = rho_xb.mat();
  double off = 0.0;
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      if (x == y) continue;
      off = std::max(off, r.block(x * db, y * db, db, db).cwiseAbs().maxCoeff());
    }
  if (off > 1e-9)
    throw BadParams("state is not block diagonal in the classical register");
  std::vector<double> priors(m);
  std::vector<DensityOperator> states;
  states.reserve(m);
  for (int x = 0; x < m; ++x) {
    Mat blk = r.block(x * db, x * db, db, db);
    const double px = blk.trace().real();
    priors[x] = px;
    if (px < 1e-14) {
      states.push_back(maximally_mixed(db));
    } else {
      states.push_back(DensityOperator::make(ComplexMatrix(blk / px, {db})));
    }
  }
  return Ensemble::make(std::move(priors), std::move(states));
}

DensityOperator purify(const DensityOperator& rho) {
  const int d = rho.dim();
  EigDecomposition ed = eig_hermitian(rho.mat());
  const double top = std::max(ed.eigenvalues(d - 1), 0.0);
  const double cutoff = kRankTol * std::max(top, 1.0);
  // Eigenvalues ascend; walk from the top down so the reference index of the
  // dominant eigenvector is 0.
  std::vector<std::pair<double, int>> kept;
  for (int i = d - 1; i >= 0; --i)
    if (ed.eigenvalues(i) > cutoff) kept.emplace_back(ed.eigenvalues(i), i);
  if (kept.empty()) throw BadParams("state has no significant eigenvalues");
  const int rank = static_cast<int>(kept.size());
  Vec psi = Vec::Zero(d * rank);
  for (int k = 0; k < rank; ++k) {
    const double amp = std::sqrt(kept[k].first);
    const auto col = ed.eigenvectors.col(kept[k].second);
    for (int i = 0; i < d; ++i) psi(i * rank + k) = amp * col(i);
  }
  psi = normalized_or_throw(std::move(psi));
  std::vector<int> dims = rho.dims();
  dims.push_back(rank);
  return DensityOperator::make(ComplexMatrix(outer(psi), std::move(dims)));
}

ProbVector l_distribution(int m, double p0) {
  if (m < 1) throw BadParams("distribution size must be positive");
  if (p0 < 0.0 || p0 > 1.0)
    throw BadParams("leading probability must lie in [0, 1]");
  if (m == 1) {
    if (std::abs(p0 - 1.0) > 1e-12)
      throw BadParams("single-outcome distribution requires p0 = 1");
    return ProbVector::make({1.0});
  }
  std::vector<double> p(m, (1.0 - p0) / (m - 1));
  p[0] = p0;
  return ProbVector::make(std::move(p));
}

DensityOperator bell_diagonal(int d, const ProbVector& weights) {
  if (d < 2) throw BadParams("dimension must be at least 2");
  if (weights.size() != d * d)
    throw LengthMismatch("need d^2 weights, got " +
                         std::to_string(weights.size()));
  const double a0 = 1.0 / std::sqrt(static_cast<double>(d));
  Mat rho = Mat::Zero(d * d, d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      Vec v = Vec::Zero(d * d);
      for (int z = 0; z < d; ++z) {
        const double ang = 2.0 * kPi * b * z / d;
        v(z * d + (z + a) % d) = a0 * Cplx(std::cos(ang), std::sin(ang));
      }
      rho += weights.p[a * d + b] * outer(v);
    }
  return DensityOperator::make(ComplexMatrix(std::move(rho), {d, d}));
}

DensityOperator theta_state(int d, double p0) {
  if (d < 2) throw BadParams("dimension must be at least 2");
  if (p0 < 0.0 || p0 > 1.0)
    throw BadParams("leading weight must lie in [0, 1]");
  const Mat f = fourier(d);
  const double rest = std::sqrt((1.0 - p0) / (d - 1));
  Vec psi = std::sqrt(p0) * f.col(0);
  for (int x = 1; x < d; ++x) psi += rest * f.col(x);
  psi = normalized_or_throw(std::move(psi));
  return DensityOperator::make(ComplexMatrix(outer(psi), {d}));
}

DensityOperator monogamy_state(int d, double theta) {
  if (d < 2) throw BadParams("dimension must be at least 2");
  if (theta < 0.0 || theta > 1.57079632679489662)
    throw BadParams("mixing angle must lie in [0, pi/2]");
  const double a = 1.0 / std::sqrt(static_cast<double>(d));
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  Vec psi = Vec::Zero(d * d * d);
  for (int z = 0; z < d; ++z) {
    psi(z * d * d + z * d + 0) += ct * a;  // |z>_A |z>_B |0>_C
    psi(z * d * d + 0 * d + z) += st * a;  // |z>_A |0>_B |z>_C
  }
  psi = normalized_or_throw(std::move(psi));
  return DensityOperator::make(ComplexMatrix(outer(psi), {d, d, d}));
}

Mat fourier(int d) {
  if (d < 1) throw BadParams("dimension must be positive");
  Mat f(d, d);
  const double a = 1.0 / std::sqrt(static_cast<double>(d));
  for (int z = 0; z < d; ++z)
    for (int x = 0; x < d; ++x) {
      const double ang = 2.0 * kPi * x * z / d;
      f(z, x) = a * Cplx(std::cos(ang), std::sin(ang));
    }
  return f;
}

DensityOperator measure_conjugate(const DensityOperator& rho_abc,
                                  Conjugate which) {
  if (rho_abc.dims().size() != 3)
    throw BadParams("conjugate measurement needs exactly three subsystems");
  const int da = rho_abc.dims()[0];
  const int db = rho_abc.dims()[1];
  const int dc = rho_abc.dims()[2];
  const int dbc = db * dc;
  const Mat& r = rho_abc.mat();
  const Mat f = fourier(da);

  const int dkeep = (which == Conjugate::Z) ? dc : db;
  const std::vector<int> keep =
      (which == Conjugate::Z) ? std::vector<int>{1} : std::vector<int>{0};
  Mat out = Mat::Zero(da * dkeep, da * dkeep);
  for (int x = 0; x < da; ++x) {
    // Basis vector for outcome x on A: computational for Z, Fourier for X.
    Vec v = Vec::Zero(da);
    if (which == Conjugate::Z) {
      v(x) = 1.0;
    } else {
      v = f.col(x);
    }
    Mat mx = Mat::Zero(dbc, dbc);
    for (int a = 0; a < da; ++a) {
      if (std::abs(v(a)) == 0.0) continue;
      for (int ap = 0; ap < da; ++ap) {
        if (std::abs(v(ap)) == 0.0) continue;
        const Cplx w = std::conj(v(a)) * v(ap);
        mx += w * r.block(a * dbc, ap * dbc, dbc, dbc);
      }
    }
    ComplexMatrix reduced =
        partial_trace(ComplexMatrix(std::move(mx), {db, dc}), keep);
    out.block(x * dkeep, x * dkeep, dkeep, dkeep) = reduced.mat;
  }
  return DensityOperator::make(ComplexMatrix(std::move(out), {da, dkeep}));
}

DensityOperator random_state(const std::vector<int>& dims, bool pure,
                             Rng& rng) {
  long long prod = 1;
  for (int d : dims) {
    if (d < 1) throw BadParams("dimension must be positive");
    prod *= d;
  }
  const int n = static_cast<int>(prod);
  if (pure) {
    Vec v(n);
    for (int i = 0; i < n; ++i) {
      const double re = rng.next_gauss();
      const double im = rng.next_gauss();
      v(i) = Cplx(re, im);
    }
    v = normalized_or_throw(std::move(v));
    return DensityOperator::make(ComplexMatrix(outer(v), dims));
  }
  Mat g(n, n);
  for (int rr = 0; rr < n; ++rr)
    for (int cc = 0; cc < n; ++cc) {
      const double re = rng.next_gauss();
      const double im = rng.next_gauss();
      g(rr, cc) = Cplx(re, im);
    }
  Mat rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = Mat(0.5 * (rho + rho.adjoint()));
  return DensityOperator::make(ComplexMatrix(std::move(rho), dims));
}

DensityOperator random_density(int d, Rng& rng) {
  return random_state({d}, false, rng);
}

DensityOperator random_density(int d, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(d, rng);
}

Ensemble random_ensemble(int m, int d, bool classical, Rng& rng) {
  if (m < 1) throw BadParams("ensemble size must be positive");
  std::vector<double> priors(m);
  double sum = 0.0;
  for (int x = 0; x < m; ++x) {
    priors[x] = -std::log(rng.next_unit());
    sum += priors[x];
  }
  for (double& p : priors) p /= sum;
  std::vector<DensityOperator> states;
  states.reserve(m);
  for (int x = 0; x < m; ++x) {
    if (classical) {
      std::vector<double> diag(d);
      double s = 0.0;
      for (int i = 0; i < d; ++i) {
        diag[i] = -std::log(rng.next_unit());
        s += diag[i];
      }
      Mat mm = Mat::Zero(d, d);
      for (int i = 0; i < d; ++i) mm(i, i) = diag[i] / s;
      states.push_back(DensityOperator::make(ComplexMatrix(std::move(mm), {d})));
    } else {
      states.push_back(random_density(d, rng));
    }
  }
  return Ensemble::make(std::move(priors), std::move(states));
}

Ensemble random_ensemble(int m, int d, std::uint64_t seed, bool classical) {
  Rng rng(seed);
  return random_ensemble(m, d, classical, rng);
}

DensityOperator random_tripartite(int da, int db, int dc, bool pure, Rng& rng) {
  return random_state({da, db, dc}, pure, rng);
}

DensityOperator random_tripartite(int da, int db, int dc, std::uint64_t seed,
                                  bool pure) {
  Rng rng(seed);
  return random_tripartite(da, db, dc, pure, rng);
}

}  // namespace pgb
