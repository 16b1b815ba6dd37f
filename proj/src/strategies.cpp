#include "pgb/strategies.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "pgb/errors.hpp"

namespace pgb {
namespace {

constexpr double kCompleteTol = 1e-8;
constexpr double kValueSlop = 1e-8;

Mat hermitized(Mat m) { return Mat(0.5 * (m + m.adjoint())); }

double clamp01(double v, const char* what) {
  if (std::isnan(v) || v < -kValueSlop || v > 1.0 + kValueSlop)
    throw OutOfRange(std::string(what) + " value " + std::to_string(v) +
                     " outside [0, 1]");
  return std::min(std::max(v, 0.0), 1.0);
}

Povm weighted_pgm(const Ensemble& e, bool squared) {
  const int m = e.size();
  const int d = e.dim();
  std::vector<Mat> weights(m);
  Mat total = Mat::Zero(d, d);
  for (int x = 0; x < m; ++x) {
    Mat w = e.priors[x] * e.states[x].mat();
    if (squared) w = Mat(w * w);
    weights[x] = hermitized(std::move(w));
    total += weights[x];
  }
  total = hermitized(std::move(total));
  const Mat isr = mat_power(total, -0.5);
  std::vector<ComplexMatrix> elements;
  elements.reserve(m);
  Mat sum = Mat::Zero(d, d);
  for (int x = 0; x < m; ++x) {
    Mat lam = hermitized(Mat(isr * weights[x] * isr));
    sum += lam;
    elements.emplace_back(std::move(lam), std::vector<int>{d});
  }
  // Fold any deficit off the support of the total weight into element 0; the
  // deficit is I - (support projector), hence PSD.
  elements[0].mat = hermitized(Mat(elements[0].mat + Mat::Identity(d, d) - sum));
  return Povm::make(std::move(elements));
}

}  // namespace

Povm Povm::make(std::vector<ComplexMatrix> elements) {
  if (elements.empty()) throw BadParams("measurement has no elements");
  const int d = elements[0].dim();
  Mat sum = Mat::Zero(d, d);
  for (const auto& el : elements) {
    if (el.dim() != d)
      throw DimensionMismatch("measurement elements have mixed dimensions");
    require_hermitian(el.mat, "measurement element");
    const double scale = std::max(1.0, max_abs(el.mat));
    if (lambda_min(el.mat) < -kPsdTol * scale)
      throw NotPSD("measurement element has a negative eigenvalue");
    sum += el.mat;
  }
  if (max_abs(Mat(sum - Mat::Identity(d, d))) > kCompleteTol)
    throw BadParams("measurement elements do not sum to the identity");
  return Povm{std::move(elements)};
}

Channel Channel::make(ComplexMatrix choi) {
  if (!choi.has_dims() || choi.dims.size() != 2)
    throw BadParams("Choi operator needs dims {d_in, d_out}");
  require_hermitian(choi.mat, "Choi operator");
  const double scale = std::max(1.0, max_abs(choi.mat));
  if (lambda_min(choi.mat) < -kPsdTol * scale)
    throw NotPSD("Choi operator has a negative eigenvalue");
  const ComplexMatrix marg = partial_trace(choi, {0});
  const int din = choi.dims[0];
  if (max_abs(Mat(marg.mat - Mat::Identity(din, din))) > kCompleteTol)
    throw BadParams("channel is not trace preserving");
  return Channel{std::move(choi)};
}

Povm pgm(const Ensemble& e) { return weighted_pgm(e, false); }

Povm quad_pgm(const Ensemble& e) { return weighted_pgm(e, true); }

Povm best_single_guess(const Ensemble& e) {
  const int m = e.size();
  const int d = e.dim();
  int best = 0;
  for (int x = 1; x < m; ++x)
    if (e.priors[x] > e.priors[best]) best = x;
  std::vector<ComplexMatrix> elements;
  elements.reserve(m);
  for (int x = 0; x < m; ++x) {
    Mat el = (x == best) ? Mat(Mat::Identity(d, d)) : Mat(Mat::Zero(d, d));
    elements.emplace_back(std::move(el), std::vector<int>{d});
  }
  return Povm::make(std::move(elements));
}

Povm uniform_povm(int m, int d) {
  if (m < 1 || d < 1) throw BadParams("sizes must be positive");
  std::vector<ComplexMatrix> elements;
  elements.reserve(m);
  for (int x = 0; x < m; ++x)
    elements.emplace_back(Mat(Mat::Identity(d, d) / static_cast<double>(m)),
                          std::vector<int>{d});
  return Povm::make(std::move(elements));
}

double guessing_prob(const Ensemble& e, const Povm& povm) {
  if (povm.size() != e.size())
    throw CountMismatch("measurement has " + std::to_string(povm.size()) +
                        " elements for " + std::to_string(e.size()) +
                        " labels");
  if (povm.dim() != e.dim())
    throw DimensionMismatch("measurement and ensemble dimensions differ");
  double p = 0.0;
  for (int x = 0; x < e.size(); ++x)
    p += e.priors[x] *
         (povm.elements[x].mat * e.states[x].mat()).trace().real();
  return clamp01(p, "guessing probability");
}

double p_pg(const Ensemble& e) { return guessing_prob(e, pgm(e)); }

Channel pretty_good_recovery(const DensityOperator& rho_ab) {
  if (rho_ab.dims().size() != 2)
    throw BadParams("recovery map needs a bipartite state");
  const int da = rho_ab.dims()[0];
  const int db = rho_ab.dims()[1];
  const ComplexMatrix rb = partial_trace(rho_ab.cm(), {1});
  const Mat isr = mat_power(rb.mat, -0.5);
  const Mat proj = mat_power(rb.mat, 0.0);  // support projector
  const Mat lift = kron_mat(Mat::Identity(da, da), isr);
  ComplexMatrix core(hermitized(Mat(lift * rho_ab.mat() * lift)),
                     std::vector<int>{da, db});
  ComplexMatrix j = swap_subsystems(core);  // now on B tensor A'
  const Mat tail = kron_mat(Mat(Mat::Identity(db, db) - proj),
                            Mat(Mat::Identity(da, da) / static_cast<double>(da)));
  // Conjugation matches the Choi application convention
  //   out = sum_beta rho[(a,beta),(b,beta')] J[(beta,a'),(beta',b')],
  // which contracts J without transposition: conj(swap(core)) is what makes
  // the channel's overlap reproduce Tr[rho core] exactly.
  j.mat = hermitized(Mat((j.mat + tail).conjugate()));
  return Channel::make(std::move(j));
}

Channel identity_channel(int d) {
  if (d < 1) throw BadParams("dimension must be positive");
  Mat j = Mat::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) j(i * d + i, k * d + k) = 1.0;
  return Channel::make(ComplexMatrix(std::move(j), {d, d}));
}

DensityOperator apply_channel(const Channel& ch,
                              const DensityOperator& rho_ab) {
  if (rho_ab.dims().size() != 2)
    throw BadParams("channel application needs a bipartite state");
  const int da = rho_ab.dims()[0];
  const int db = rho_ab.dims()[1];
  if (db != ch.dim_in())
    throw DimensionMismatch("channel input dimension " +
                            std::to_string(ch.dim_in()) +
                            " does not match subsystem dimension " +
                            std::to_string(db));
  const int dout = ch.dim_out();
  const Mat& r = rho_ab.mat();
  const Mat& j = ch.choi.mat;
  Mat out = Mat::Zero(da * dout, da * dout);
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < da; ++b)
      for (int ap = 0; ap < dout; ++ap)
        for (int bp = 0; bp < dout; ++bp) {
          Cplx acc = 0.0;
          for (int beta = 0; beta < db; ++beta)
            for (int betap = 0; betap < db; ++betap)
              acc += r(a * db + beta, b * db + betap) *
                     j(beta * dout + ap, betap * dout + bp);
          out(a * dout + ap, b * dout + bp) = acc;
        }
  out = hermitized(std::move(out));
  return DensityOperator::make(ComplexMatrix(std::move(out), {da, dout}));
}

double recovery_fidelity(const DensityOperator& rho_ab, const Channel& ch) {
  const int da = rho_ab.dims()[0];
  if (ch.dim_out() != da)
    throw DimensionMismatch("recovery output dimension must match A");
  const DensityOperator out = apply_channel(ch, rho_ab);
  const Mat& o = out.mat();
  Cplx acc = 0.0;
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < da; ++b) acc += o(a * da + a, b * da + b);
  return clamp01(acc.real() / static_cast<double>(da), "recovery fidelity");
}

double r_pg(const DensityOperator& rho_ab) {
  return recovery_fidelity(rho_ab, pretty_good_recovery(rho_ab));
}

double p_quad_classical(const Eigen::MatrixXd& joint) {
  if (joint.rows() < 1 || joint.cols() < 1)
    throw BadTable("joint distribution is empty");
  double total = 0.0;
  for (int y = 0; y < joint.cols(); ++y)
    for (int x = 0; x < joint.rows(); ++x) {
      if (joint(x, y) < -1e-12)
        throw BadTable("joint distribution has a negative entry");
      total += std::max(joint(x, y), 0.0);
    }
  if (std::abs(total - 1.0) > 1e-8)
    throw BadTable("joint distribution sums to " + std::to_string(total));
  double p = 0.0;
  for (int y = 0; y < joint.cols(); ++y) {
    double two = 0.0;
    double three = 0.0;
    for (int x = 0; x < joint.rows(); ++x) {
      const double v = std::max(joint(x, y), 0.0);
      two += v * v;
      three += v * v * v;
    }
    if (two > 0.0) p += three / two;
  }
  return clamp01(p, "squared-weight guessing probability");
}

}  // namespace pgb
