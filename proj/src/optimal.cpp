#include "pgb/optimal.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "pgb/errors.hpp"

namespace pgb {
namespace {

// Orthonormal basis of Hermitian n x n matrices. Every element has at most
// two nonzero entries |a><b|, which keeps gradient and Hessian assembly
// sparse: Tr[S1 |a><b| S2 |c><d|] = S1(d, a) S2(b, c).
struct BasisElem {
  int na = 1;
  int a[2] = {0, 0};
  int b[2] = {0, 0};
  Cplx v[2] = {Cplx(0, 0), Cplx(0, 0)};
  double tr = 0.0;
};

std::vector<BasisElem> herm_basis(int n) {
  std::vector<BasisElem> basis;
  basis.reserve(static_cast<size_t>(n) * n);
  const double s = 1.0 / std::sqrt(2.0);
  for (int k = 0; k < n; ++k) {
    BasisElem e;
    e.na = 1;
    e.a[0] = k;
    e.b[0] = k;
    e.v[0] = 1.0;
    e.tr = 1.0;
    basis.push_back(e);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      BasisElem sym;
      sym.na = 2;
      sym.a[0] = i;
      sym.b[0] = j;
      sym.v[0] = s;
      sym.a[1] = j;
      sym.b[1] = i;
      sym.v[1] = s;
      basis.push_back(sym);
      BasisElem asym = sym;
      asym.v[0] = Cplx(0, s);
      asym.v[1] = Cplx(0, -s);
      basis.push_back(asym);
    }
  return basis;
}

Mat from_coords(const std::vector<BasisElem>& basis, const Eigen::VectorXd& y,
                int n) {
  Mat m = Mat::Zero(n, n);
  for (size_t k = 0; k < basis.size(); ++k)
    for (int t = 0; t < basis[k].na; ++t)
      m(basis[k].a[t], basis[k].b[t]) += y(static_cast<int>(k)) * basis[k].v[t];
  return m;
}

Mat hermitized(Mat m) { return Mat(0.5 * (m + m.adjoint())); }

// Conic feasibility problem: lift(w) - targets[x] must stay PSD, where
// lift(w) = w for measurements and I_{lift} tensor w for recovery.
struct ConeProgram {
  int n = 1;
  int lift = 1;
  std::vector<Mat> targets;
};

Mat lift_up(const Mat& w, int lift) {
  if (lift == 1) return w;
  return kron_mat(Mat::Identity(lift, lift), w);
}

struct SlackInfo {
  bool pd = false;
  double logdet = 0.0;
  Mat inv;
};

SlackInfo analyze_slack(const Mat& s, bool want_inverse) {
  SlackInfo out;
  Eigen::LLT<Mat> llt(s);
  if (llt.info() != Eigen::Success) return out;
  const auto& packed = llt.matrixLLT();
  double ld = 0.0;
  for (int i = 0; i < s.rows(); ++i) {
    const double di = packed(i, i).real();
    if (!(di > 0.0)) return out;
    ld += std::log(di);
  }
  out.pd = true;
  out.logdet = 2.0 * ld;
  if (want_inverse) out.inv = llt.solve(Mat::Identity(s.rows(), s.cols()));
  return out;
}

struct StrategyCandidate {
  double value = 0.0;
  std::variant<Povm, Channel> witness;
};

using DualRepair =
    std::function<std::optional<StrategyCandidate>(const std::vector<Mat>&)>;

// Interior-point barrier loop shared by both programs. Every iterate yields
// two independently checkable certificates: the current w is inflated to an
// exactly feasible dual operator (upper bound), and the barrier multipliers
// S_x^{-1}/t are repaired into an exactly valid strategy (lower bound). The
// returned bounds are therefore sound even when the gap target is not met.
CertifiedValue solve_barrier(const ConeProgram& prob, double report_scale,
                             double tol,
                             std::vector<StrategyCandidate> candidates,
                             const DualRepair& repair) {
  const int n = prob.n;
  const auto basis = herm_basis(n);
  const int kdim = static_cast<int>(basis.size());
  constexpr int kIterCap = 200;
  constexpr double kFeasPad = 1e-12;

  CertifiedValue out;
  out.lower = -1.0;
  out.upper = std::numeric_limits<double>::infinity();
  for (auto& c : candidates)
    if (c.value > out.lower) {
      out.lower = c.value;
      out.primal_witness = std::move(c.witness);
    }

  // Strictly feasible start: one unit above the largest target eigenvalue.
  double lam0 = 0.0;
  for (const Mat& tgt : prob.targets) lam0 = std::max(lam0, lambda_max(tgt));
  Mat w = (lam0 + 1.0) * Mat::Identity(n, n);

  double t = 1.0;
  const double inner_eps = std::max(1e-13, tol * 1e-2);

  auto slack_infos = [&prob](const Mat& ww, bool inv,
                             std::vector<SlackInfo>& infos) -> bool {
    infos.clear();
    const Mat lw = lift_up(ww, prob.lift);
    for (const Mat& tgt : prob.targets) {
      SlackInfo si = analyze_slack(Mat(lw - tgt), inv);
      if (!si.pd) return false;
      infos.push_back(std::move(si));
    }
    return true;
  };
  auto fval = [&prob, &t](const std::vector<SlackInfo>& infos, const Mat& ww) {
    double f = ww.trace().real();
    for (const auto& si : infos) f -= si.logdet / t;
    return f;
  };
  auto update_upper = [&](const Mat& ww) {
    const Mat lw = lift_up(ww, prob.lift);
    double viol = -std::numeric_limits<double>::infinity();
    for (const Mat& tgt : prob.targets)
      viol = std::max(viol, lambda_max(Mat(tgt - lw)));
    const double bump = std::max(0.0, viol + kFeasPad);
    const double trace = ww.trace().real() + n * bump;
    const double value = report_scale * trace;
    if (value < out.upper) {
      out.upper = value;
      out.upper_trace = trace;
      out.dual_witness = ComplexMatrix(
          hermitized(Mat(ww + bump * Mat::Identity(n, n))), {n});
    }
  };
  auto update_lower = [&](const std::vector<SlackInfo>& infos) {
    std::vector<Mat> zs;
    zs.reserve(infos.size());
    for (const auto& si : infos) zs.push_back(si.inv / t);
    auto cand = repair(zs);
    if (cand && cand->value > out.lower) {
      out.lower = cand->value;
      out.primal_witness = std::move(cand->witness);
    }
  };

  std::vector<SlackInfo> cur;
  if (!slack_infos(w, true, cur))
    throw NoConvergence("interior start is infeasible");

  bool done = false;
  while (!done && out.iterations < kIterCap && t < 1e16) {
    for (int inner = 0; inner < 50 && out.iterations < kIterCap; ++inner) {
      ++out.iterations;

      update_upper(w);
      update_lower(cur);
      if (out.upper - out.lower <= tol) {
        done = true;
        break;
      }

      // Gradient of Tr w - (1/t) sum log det S_x in basis coordinates.
      Mat gmat = Mat::Zero(n, n);
      for (const auto& si : cur) {
        if (prob.lift == 1) {
          gmat += si.inv;
        } else {
          gmat += partial_trace(ComplexMatrix(si.inv, {prob.lift, n}), {1}).mat;
        }
      }
      Eigen::VectorXd g(kdim);
      for (int k = 0; k < kdim; ++k) {
        Cplx acc = 0.0;
        for (int u = 0; u < basis[k].na; ++u)
          acc += basis[k].v[u] * gmat(basis[k].b[u], basis[k].a[u]);
        g(k) = basis[k].tr - acc.real() / t;
      }

      Eigen::MatrixXd h = Eigen::MatrixXd::Zero(kdim, kdim);
      for (const auto& si : cur) {
        const Mat& si_inv = si.inv;
        for (int k = 0; k < kdim; ++k)
          for (int l = k; l < kdim; ++l) {
            Cplx acc = 0.0;
            for (int u = 0; u < basis[k].na; ++u)
              for (int vv = 0; vv < basis[l].na; ++vv) {
                const Cplx coef = basis[k].v[u] * basis[l].v[vv];
                if (prob.lift == 1) {
                  acc += coef * si_inv(basis[l].b[vv], basis[k].a[u]) *
                         si_inv(basis[k].b[u], basis[l].a[vv]);
                } else {
                  Cplx lifted = 0.0;
                  for (int al = 0; al < prob.lift; ++al)
                    for (int be = 0; be < prob.lift; ++be)
                      lifted += si_inv(be * n + basis[l].b[vv],
                                       al * n + basis[k].a[u]) *
                                si_inv(al * n + basis[k].b[u],
                                       be * n + basis[l].a[vv]);
                  acc += coef * lifted;
                }
              }
            const double val = acc.real() / t;
            h(k, l) += val;
            if (l != k) h(l, k) += val;
          }
      }

      Eigen::VectorXd step;
      {
        Eigen::LLT<Eigen::MatrixXd> hllt(h);
        if (hllt.info() == Eigen::Success) {
          step = hllt.solve(g);
        } else {
          double ridge = 1e-13 * std::max(h.diagonal().maxCoeff(), 1e-30);
          bool ok = false;
          for (int rt = 0; rt < 8 && !ok; ++rt, ridge *= 100.0) {
            Eigen::LLT<Eigen::MatrixXd> l2(Eigen::MatrixXd(
                h + ridge * Eigen::MatrixXd::Identity(kdim, kdim)));
            if (l2.info() == Eigen::Success) {
              step = l2.solve(g);
              ok = true;
            }
          }
          if (!ok) break;
        }
      }
      const double dec2 = g.dot(step);
      if (!(dec2 > 0.0)) break;
      if (0.5 * dec2 <= inner_eps) break;  // centered; raise t

      const Mat delta = from_coords(basis, step, n);
      const double f0 = fval(cur, w);
      bool accepted = false;
      std::vector<SlackInfo> trial;
      double s = 1.0;
      for (int ls = 0; ls < 60; ++ls, s *= 0.5) {
        Mat wn = w - s * delta;
        if (!slack_infos(wn, true, trial)) continue;
        if (fval(trial, wn) <= f0 - 0.25 * s * dec2) {
          w = std::move(wn);
          cur = std::move(trial);
          trial.clear();
          accepted = true;
          break;
        }
      }
      if (!accepted) break;  // stalled at this t; raise t
    }
    t *= 10.0;
  }

  out.gap = out.upper - out.lower;
  out.converged = out.gap <= tol;
  return out;
}

}  // namespace

CertifiedValue p_opt(const Ensemble& e, double tol) {
  if (!(tol > 0.0)) throw BadParams("tolerance must be positive");
  const int d = e.dim();
  const int m = e.size();

  ConeProgram prob;
  prob.n = d;
  prob.lift = 1;
  prob.targets.reserve(m);
  for (int x = 0; x < m; ++x)
    prob.targets.push_back(Mat(e.priors[x] * e.states[x].mat()));

  std::vector<StrategyCandidate> cands;
  {
    Povm g = pgm(e);
    const double v = guessing_prob(e, g);
    cands.push_back({v, std::move(g)});
    Povm b = best_single_guess(e);
    const double vb = guessing_prob(e, b);
    cands.push_back({vb, std::move(b)});
    Povm u = uniform_povm(m, d);
    const double vu = guessing_prob(e, u);
    cands.push_back({vu, std::move(u)});
  }

  DualRepair repair = [&e, d](const std::vector<Mat>& zs)
      -> std::optional<StrategyCandidate> {
    try {
      Mat s = Mat::Zero(d, d);
      for (const Mat& z : zs) s += z;
      s = hermitized(std::move(s));
      const Mat isr = mat_power(s, -0.5);
      std::vector<ComplexMatrix> els;
      els.reserve(zs.size());
      Mat total = Mat::Zero(d, d);
      for (const Mat& z : zs) {
        Mat el = hermitized(Mat(isr * z * isr));
        total += el;
        els.emplace_back(std::move(el), std::vector<int>{d});
      }
      // Fold the (PSD) deficit off the support of s into element 0 so the
      // elements resolve the identity exactly.
      els[0].mat =
          hermitized(Mat(els[0].mat + Mat::Identity(d, d) - total));
      Povm povm = Povm::make(std::move(els));
      const double v = guessing_prob(e, povm);
      return StrategyCandidate{v, std::move(povm)};
    } catch (const Error&) {
      return std::nullopt;
    }
  };

  return solve_barrier(prob, 1.0, tol, std::move(cands), repair);
}

CertifiedValue r_opt(const DensityOperator& rho_ab, double tol) {
  if (!(tol > 0.0)) throw BadParams("tolerance must be positive");
  if (rho_ab.dims().size() != 2)
    throw BadParams("recovery program needs a bipartite state");
  const int da = rho_ab.dims()[0];
  const int db = rho_ab.dims()[1];

  ConeProgram prob;
  prob.n = db;
  prob.lift = da;
  prob.targets.push_back(rho_ab.mat());

  std::vector<StrategyCandidate> cands;
  {
    Channel pg = pretty_good_recovery(rho_ab);
    const double v = recovery_fidelity(rho_ab, pg);
    cands.push_back({v, std::move(pg)});
    if (da == db) {
      Channel id = identity_channel(da);
      const double vi = recovery_fidelity(rho_ab, id);
      cands.push_back({vi, std::move(id)});
    }
  }

  DualRepair repair = [&rho_ab, da, db](const std::vector<Mat>& zs)
      -> std::optional<StrategyCandidate> {
    try {
      const Mat z = hermitized(Mat(zs[0]));
      ComplexMatrix zcm(z, {da, db});
      // Rescale so the A-marginal becomes exactly I_B / dA, which makes the
      // transposed-and-swapped operator an exactly trace-preserving Choi
      // operator.
      const Mat sb =
          hermitized(Mat(partial_trace(zcm, {1}).mat * static_cast<double>(da)));
      const Mat m = mat_power(sb, -0.5);
      const Mat proj = mat_power(sb, 0.0);
      const Mat lift = kron_mat(Mat::Identity(da, da), m);
      Mat zp = hermitized(Mat(lift * z * lift));
      zp += kron_mat(Mat(Mat::Identity(da, da) / static_cast<double>(da)),
                     Mat((Mat::Identity(db, db) - proj) /
                         static_cast<double>(da)));
      ComplexMatrix pre(Mat(static_cast<double>(da) * zp.conjugate()),
                        {da, db});
      ComplexMatrix j = swap_subsystems(pre);
      Channel ch = Channel::make(std::move(j));
      const double v = recovery_fidelity(rho_ab, ch);
      return StrategyCandidate{v, std::move(ch)};
    } catch (const Error&) {
      return std::nullopt;
    }
  };

  return solve_barrier(prob, 1.0 / static_cast<double>(da), tol,
                       std::move(cands), repair);
}

CertifiedValue max_fid_uniform(const DensityOperator& rho_ac, double tol) {
  if (rho_ac.dims().size() != 2)
    throw BadParams("uniform-fidelity program needs a bipartite state");
  const DensityOperator psi = purify(rho_ac);
  const ComplexMatrix marg = partial_trace(psi.cm(), {0, 2});
  return r_opt(DensityOperator::make(marg), tol);
}

}  // namespace pgb
