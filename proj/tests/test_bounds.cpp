#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "pgb/bounds.hpp"

using pgb::BoundReport;
using pgb::ComplexMatrix;
using pgb::Context;
using pgb::DensityOperator;
using pgb::Ensemble;
using pgb::Mat;

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kInf = std::numeric_limits<double>::infinity();

Ensemble basis_ensemble(int m, const std::vector<double>& priors) {
  std::vector<DensityOperator> states;
  for (int x = 0; x < m; ++x) {
    Mat e = Mat::Zero(m, m);
    e(x, x) = 1.0;
    states.push_back(DensityOperator::make(ComplexMatrix(std::move(e))));
  }
  return Ensemble::make(priors, states);
}

Ensemble trivial_ensemble(const pgb::ProbVector& p) {
  std::vector<DensityOperator> states(
      p.p.size(),
      DensityOperator::make(ComplexMatrix(Mat::Ones(1, 1), {1})));
  return Ensemble::make(p.p, states);
}

double ctx_num(const Context& ctx, const std::string& key) {
  const auto it = ctx.find(key);
  REQUIRE(it != ctx.end());
  if (const auto* d = std::get_if<double>(&it->second)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&it->second))
    return static_cast<double>(*i);
  if (const auto* u = std::get_if<std::uint64_t>(&it->second))
    return static_cast<double>(*u);
  REQUIRE(false);
  return 0.0;
}

}  // namespace

TEST_CASE("report assembly") {
  BoundReport r = pgb::make_report("demo", 2.0, 1.5, true, 1e-6, {});
  CHECK(r.slack == 0.5);
  CHECK(r.satisfied);
  CHECK(std::get<std::string>(r.context.at("orientation")) == "lhs>=rhs");

  BoundReport flipped = pgb::make_report("demo", 2.0, 1.5, false, 1e-6, {});
  CHECK(flipped.slack == -0.5);
  CHECK_FALSE(flipped.satisfied);
  CHECK(std::get<std::string>(flipped.context.at("orientation")) ==
        "rhs>=lhs");

  // Exactly at the tolerance boundary still counts as satisfied.
  BoundReport edge = pgb::make_report("demo", 1.0, 1.0 + 1e-6, true, 1e-6, {});
  CHECK(edge.satisfied);
  BoundReport past =
      pgb::make_report("demo", 1.0, 1.0 + 1.0000001e-6, true, 1e-6, {});
  CHECK_FALSE(past.satisfied);

  // Infinities: a +inf lhs trivially satisfies a >= relation; matching
  // infinities count as equality rather than NaN.
  BoundReport inf_lhs = pgb::make_report("demo", kInf, 3.0, true, 1e-6, {});
  CHECK(inf_lhs.satisfied);
  CHECK(inf_lhs.slack == kInf);
  BoundReport both = pgb::make_report("demo", kInf, kInf, true, 1e-6, {});
  CHECK(both.slack == 0.0);
  CHECK(both.satisfied);
}

TEST_CASE("boundary curve helpers") {
  // Symmetry in (x, z) and exact zeros at the two endpoints of the branch.
  CHECK(pgb::ellipse_residual(0.3, 0.9, 5) ==
        doctest::Approx(pgb::ellipse_residual(0.9, 0.3, 5)).epsilon(1e-15));
  CHECK(pgb::ellipse_residual(1.0 / 3.0, 1.0, 3) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(pgb::ellipse_residual(1.0, 1.0 / 3.0, 3) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(pgb::ellipse_residual(0.75, 0.75, 4) == 0.0);
  // Interior points are negative, exterior positive.
  CHECK(pgb::ellipse_residual(0.5, 0.5, 4) < 0.0);
  CHECK(pgb::ellipse_residual(1.0, 1.0, 4) > 0.0);
  CHECK_THROWS_AS(pgb::ellipse_residual(0.5, 0.5, 1), pgb::BadParams);

  CHECK(pgb::envelope_g(1.0, 7) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pgb::envelope_g(1.0 / 7.0, 7) ==
        doctest::Approx(7.0).epsilon(1e-12));
  // The envelope is on the curve: residual(x, g(x)/m, m) = 0.
  for (double x : {0.2, 0.5, 0.8}) {
    const double z = pgb::envelope_g(x, 5) / 5.0;
    CHECK(pgb::ellipse_residual(x, z, 5) ==
          doctest::Approx(0.0).epsilon(1e-12));
  }
  // Decreasing on [1/m, 1].
  CHECK(pgb::envelope_g(0.3, 4) > pgb::envelope_g(0.6, 4));
  CHECK_THROWS_AS(pgb::envelope_g(0.5, 1), pgb::BadParams);
}

TEST_CASE("divergence-vs-guessing check on the perfectly correlated case") {
  const int m = 3;
  const Ensemble e = basis_ensemble(m, {1.0 / 3, 1.0 / 3, 1.0 / 3});
  const DensityOperator cq = pgb::cq_state(e);
  const DensityOperator sigma =
      DensityOperator::make(ComplexMatrix(e.average(), {m}));
  const pgb::Povm povm = pgb::pgm(e);
  for (double alpha : {0.5, 1.0, 2.0, 3.0, pgb::kAlphaInf}) {
    const BoundReport r = pgb::check_prop_c(cq, povm, sigma, alpha, 1e-9);
    CHECK(r.name == "prop_c");
    // Both sides equal log2 m: the bound is saturated at every order.
    CHECK(r.lhs == doctest::Approx(std::log2(3.0)).epsilon(1e-9));
    CHECK(std::abs(r.slack) < 1e-9);
    CHECK(r.satisfied);
    CHECK(ctx_num(r.context, "p_guess") == doctest::Approx(1.0));
  }
}

TEST_CASE("divergence-vs-guessing check on uniform independent data") {
  // Identical states with uniform priors: both sides vanish.
  const DensityOperator common = pgb::maximally_mixed(2);
  const Ensemble e =
      Ensemble::make({0.5, 0.5}, {common, common});
  const DensityOperator cq = pgb::cq_state(e);
  const DensityOperator sigma =
      DensityOperator::make(ComplexMatrix(e.average(), {2}));
  for (double alpha : {0.5, 1.0, 2.0, pgb::kAlphaInf}) {
    const BoundReport r =
        pgb::check_prop_c(cq, pgb::pgm(e), sigma, alpha, 1e-9);
    CHECK(std::abs(r.lhs) < 1e-9);
    CHECK(std::abs(r.slack) < 1e-9);
    CHECK(r.satisfied);
  }
}

TEST_CASE("divergence-vs-guessing check with an off-support reference") {
  // sigma misses part of rho_B's support: the divergence side is +inf for
  // alpha >= 1 and the record reads as satisfied with infinite slack.
  const Ensemble e = basis_ensemble(2, {0.5, 0.5});
  const DensityOperator cq = pgb::cq_state(e);
  Mat proj = Mat::Zero(2, 2);
  proj(0, 0) = 1.0;
  const DensityOperator sigma =
      DensityOperator::make(ComplexMatrix(std::move(proj), {2}));
  const BoundReport r = pgb::check_prop_c(cq, pgb::pgm(e), sigma, 2.0, 1e-9);
  CHECK(r.lhs == kInf);
  CHECK(r.slack == kInf);
  CHECK(r.satisfied);
}

TEST_CASE("divergence-vs-guessing checks hold on random instances") {
  pgb::Rng rng(2025);
  for (int rep = 0; rep < 6; ++rep) {
    const int m = rng.next_int(2, 4);
    const int d = rng.next_int(2, 4);
    const Ensemble e = pgb::random_ensemble(m, d, false, rng);
    const DensityOperator cq = pgb::cq_state(e);
    const DensityOperator sigma_avg =
        DensityOperator::make(ComplexMatrix(e.average(), {d}));
    const DensityOperator sigma_rand = pgb::random_density(d, rng);
    for (double alpha : {0.5, 1.0, 2.0, 3.0, pgb::kAlphaInf}) {
      for (const DensityOperator* sigma : {&sigma_avg, &sigma_rand}) {
        const BoundReport r =
            pgb::check_prop_c(cq, pgb::pgm(e), *sigma, alpha, 1e-9);
        CHECK(r.slack >= -1e-9);
      }
    }
  }
  // Quantum side with the pretty-good recovery and both references.
  for (int rep = 0; rep < 4; ++rep) {
    const int da = rng.next_int(2, 3);
    const int db = rng.next_int(2, 3);
    const DensityOperator rho = pgb::random_state({da, db}, false, rng);
    const DensityOperator sigma_b = DensityOperator::make(
        pgb::partial_trace(rho.cm(), {1}));
    const pgb::Channel rec = pgb::pretty_good_recovery(rho);
    for (double alpha : {0.5, 1.0, 2.0, 3.0, pgb::kAlphaInf}) {
      const BoundReport r =
          pgb::check_prop_q(rho, rec, sigma_b, alpha, 1e-9);
      CHECK(r.name == "prop_q");
      CHECK(r.slack >= -1e-9);
    }
  }
}

TEST_CASE("sigma dimension mismatches are rejected") {
  const Ensemble e = basis_ensemble(2, {0.5, 0.5});
  const DensityOperator cq = pgb::cq_state(e);
  const DensityOperator wrong = pgb::maximally_mixed(3);
  CHECK_THROWS_AS(
      pgb::check_prop_c(cq, pgb::pgm(e), wrong, 2.0, 1e-9),
      pgb::DimensionMismatch);
  CHECK_THROWS_AS(pgb::fidelity_bound_c(cq, wrong, 1e-6),
                  pgb::DimensionMismatch);
}

TEST_CASE("entropy-vs-error check saturates on extremal states") {
  // Perfectly correlated classical data: H(X|B) = 0 and P_opt = 1.
  const Ensemble e = basis_ensemble(3, {1.0 / 3, 1.0 / 3, 1.0 / 3});
  const BoundReport rc = pgb::fano_classical(pgb::cq_state(e), 1e-6);
  CHECK(rc.name == "fano_c");
  CHECK(std::abs(rc.slack) < 1e-9);
  CHECK(rc.satisfied);

  // Maximally entangled state: H(A|B) = -log2 d and R_opt = 1.
  const BoundReport rq = pgb::fano_quantum(pgb::max_entangled(2), 1e-6);
  CHECK(rq.name == "fano_q");
  CHECK(std::abs(rq.slack) < 1e-9);
  CHECK(rq.satisfied);

  // The conservative endpoint is the certified lower one.
  CHECK(ctx_num(rq.context, "r_opt_lower") <=
        ctx_num(rq.context, "r_opt_upper"));
}

TEST_CASE("entropy-vs-error check on random states") {
  pgb::Rng rng(2027);
  for (int rep = 0; rep < 4; ++rep) {
    const Ensemble e = pgb::random_ensemble(3, 3, false, rng);
    const BoundReport rc = pgb::fano_classical(pgb::cq_state(e), 1e-6);
    CHECK(rc.slack >= -1e-6);
    const DensityOperator rho = pgb::random_state({2, 3}, false, rng);
    const BoundReport rq = pgb::fano_quantum(rho, 1e-6);
    CHECK(rq.slack >= -1e-6);
  }
}

TEST_CASE("pretty-good-vs-optimal bound saturates on the spread family") {
  const Ensemble e = trivial_ensemble(pgb::l_distribution(4, 0.7));
  const BoundReport r = pgb::pgm_bound(e, 1e-6);
  CHECK(r.name == "pgm_bound");
  // P_pg = sum p^2 = 0.52 exactly for (m, p0) = (4, 0.7).
  CHECK(r.lhs == doctest::Approx(0.52).epsilon(1e-12));
  // P_opt = max p = 0.7, and the bound is tight on this family.
  CHECK(std::abs(r.slack) < 1e-6);
  CHECK(ctx_num(r.context, "p_opt_upper") ==
        doctest::Approx(0.7).epsilon(1e-7));
  // The report also carries the weaker square comparison and the gap above
  // the uniform value, both nonnegative here.
  CHECK(ctx_num(r.context, "slack_weaker") >= -1e-9);
  CHECK(ctx_num(r.context, "rhs_minus_uniform") >= -1e-12);
}

TEST_CASE("pretty-good-vs-optimal bound on random ensembles") {
  pgb::Rng rng(2029);
  for (int rep = 0; rep < 5; ++rep) {
    const int m = rng.next_int(2, 4);
    const Ensemble e = pgb::random_ensemble(m, rng.next_int(2, 4), false, rng);
    const BoundReport r = pgb::pgm_bound(e, 1e-6);
    CHECK(r.slack >= -1e-6);
    CHECK(ctx_num(r.context, "rhs_minus_uniform") >= -1e-12);
  }
}

TEST_CASE("recovery bound saturates on generalized Bell mixtures") {
  const DensityOperator rho =
      pgb::bell_diagonal(2, pgb::l_distribution(4, 0.6));
  const BoundReport r = pgb::recovery_bound(rho, 1e-6);
  CHECK(r.name == "recovery_bound");
  CHECK(r.lhs == doctest::Approx(0.41333333333333333).epsilon(1e-9));
  CHECK(r.rhs == doctest::Approx(0.41333333333333333).epsilon(1e-6));
  CHECK(std::abs(r.slack) < 1e-6);
  CHECK(ctx_num(r.context, "r_opt_upper") ==
        doctest::Approx(0.6).epsilon(1e-6));
}

TEST_CASE("fidelity trade-off checks") {
  // Spread family with sigma = average saturates the classical bound.
  const Ensemble e = trivial_ensemble(pgb::l_distribution(3, 0.6));
  const DensityOperator cq = pgb::cq_state(e);
  const DensityOperator sigma =
      DensityOperator::make(ComplexMatrix(e.average(), {1}));
  const BoundReport rc = pgb::fidelity_bound_c(cq, sigma, 1e-6);
  CHECK(rc.name == "fidelity_c");
  CHECK(std::abs(rc.slack) < 1e-6);

  // Quantum side on random states with the true marginal.
  pgb::Rng rng(2031);
  for (int rep = 0; rep < 3; ++rep) {
    const DensityOperator rho = pgb::random_state({2, 3}, false, rng);
    const DensityOperator sb = DensityOperator::make(
        pgb::partial_trace(rho.cm(), {1}));
    const BoundReport rq = pgb::fidelity_bound_q(rho, sb, 1e-6);
    CHECK(rq.name == "fidelity_q");
    CHECK(rq.slack >= -1e-6);
    const double f = ctx_num(rq.context, "fidelity");
    CHECK(f >= 0.0);
    CHECK(f <= 1.0 + 1e-12);
  }
}

TEST_CASE("conjugate-measurement trade-off sits on the curve for the "
          "extremal family") {
  const double p0 = std::pow(std::cos(kPi / 8), 2);
  const DensityOperator theta = pgb::theta_state(2, p0);
  // Lift to the tripartite layout with trivial B and C.
  const DensityOperator abc = DensityOperator::make(
      ComplexMatrix(theta.mat(), {2, 1, 1}));
  const BoundReport r = pgb::uncertainty_check(abc, 1e-5);
  CHECK(r.name == "uncertainty");
  CHECK(r.satisfied);
  CHECK(std::abs(r.slack) < 1e-5);
  CHECK(ctx_num(r.context, "x_upper") ==
        doctest::Approx(0.8535533905932737).epsilon(1e-6));
  CHECK(ctx_num(r.context, "z_upper") ==
        doctest::Approx(0.8535533905932737).epsilon(1e-6));
  CHECK(std::abs(ctx_num(r.context, "residual")) < 1e-5);
}

TEST_CASE("recovery monogamy trade-off anchors") {
  const BoundReport r =
      pgb::monogamy_check(pgb::monogamy_state(2, kPi / 4), 1e-5);
  CHECK(r.name == "monogamy");
  CHECK(r.satisfied);
  CHECK(std::abs(r.slack) < 1e-5);
  CHECK(ctx_num(r.context, "x_upper") ==
        doctest::Approx(0.75).epsilon(1e-6));
  CHECK(ctx_num(r.context, "z_upper") ==
        doctest::Approx(0.75).epsilon(1e-6));
  CHECK(std::abs(ctx_num(r.context, "residual")) < 1e-5);

  // Off the symmetric point the closed form for x still applies.
  const double t = 0.3;
  const BoundReport r3 = pgb::monogamy_check(pgb::monogamy_state(3, t), 1e-5);
  const double expect =
      std::pow(3 * std::cos(t) + std::sin(t), 2) /
      (3.0 * (3.0 + std::sin(2 * t)));
  CHECK(ctx_num(r3.context, "x_upper") ==
        doctest::Approx(expect).epsilon(1e-5));
  CHECK(r3.satisfied);
}

TEST_CASE("squared-weight bound values on the spread family") {
  const Ensemble e = trivial_ensemble(pgb::l_distribution(4, 0.7));
  const BoundReport r = pgb::quad_bound(e, 1e-8);
  CHECK(r.name == "quad_bound");
  CHECK(r.lhs == doctest::Approx(0.6653846153846154).epsilon(1e-10));
  // rhs = P_opt^3 + (1-P_opt)^3/9 with P_opt = 0.7.
  CHECK(r.rhs == doctest::Approx(0.346).epsilon(1e-6));
  CHECK(r.satisfied);
  // Second variant: lhs >= P_opt^2 = 0.49.
  CHECK(ctx_num(r.context, "rhs_tyson") ==
        doctest::Approx(0.49).epsilon(1e-6));
  CHECK(ctx_num(r.context, "slack_tyson") >= -1e-8);
}

TEST_CASE("squared-weight checks reject non-commuting ensembles") {
  Eigen::VectorXcd plus(2);
  plus << 1, 1;
  plus.normalize();
  const DensityOperator ket_plus =
      DensityOperator::make(ComplexMatrix(Mat(plus * plus.adjoint())));
  Mat zero = Mat::Zero(2, 2);
  zero(0, 0) = 1.0;
  const DensityOperator ket_zero =
      DensityOperator::make(ComplexMatrix(std::move(zero)));
  const Ensemble e = Ensemble::make({0.5, 0.5}, {ket_zero, ket_plus});
  CHECK_THROWS_AS(pgb::quad_bound(e, 1e-8), pgb::NonCommuting);
  CHECK_THROWS_AS(pgb::d3_quad_relation(e, 1e-8), pgb::NonCommuting);
}

TEST_CASE("third-order divergence relation on the spread family") {
  const Ensemble e = trivial_ensemble(pgb::l_distribution(4, 0.7));
  const BoundReport r = pgb::d3_quad_relation(e, 1e-8);
  CHECK(r.name == "d3_quad");
  CHECK(r.lhs == doctest::Approx(1.2344219714873186).epsilon(1e-9));
  CHECK(r.rhs == doctest::Approx(1.7061302073041351).epsilon(1e-9));
  CHECK(r.satisfied);
  CHECK(ctx_num(r.context, "p_quad") ==
        doctest::Approx(0.6653846153846154).epsilon(1e-10));

  // Uniform independent data: lhs = 0, rhs = (1/2) log2 m.
  const Ensemble u = basis_ensemble(4, {0.25, 0.25, 0.25, 0.25});
  std::vector<DensityOperator> same(4, pgb::maximally_mixed(2));
  const Ensemble indep = Ensemble::make(u.priors, same);
  const BoundReport ru = pgb::d3_quad_relation(indep, 1e-8);
  CHECK(std::abs(ru.lhs) < 1e-9);
  CHECK(ru.rhs == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(ru.satisfied);
}

TEST_CASE("collision-divergence comparison against the flattened mixture") {
  // Perfect correlation: slack is exactly log2(2 - 1/m).
  for (int m : {2, 3, 4}) {
    std::vector<double> priors(static_cast<size_t>(m), 1.0 / m);
    const Ensemble e = basis_ensemble(m, priors);
    const BoundReport r = pgb::beigi_check(pgb::cq_state(e), 1e-9);
    CHECK(r.name == "beigi");
    CHECK(r.slack ==
          doctest::Approx(std::log2(2.0 - 1.0 / m)).epsilon(1e-9));
    CHECK(ctx_num(r.context, "p_pg") == doctest::Approx(1.0).epsilon(1e-10));
  }

  // Uniform independent data: both sides vanish.
  std::vector<DensityOperator> same(3, pgb::maximally_mixed(2));
  const Ensemble indep =
      Ensemble::make({1.0 / 3, 1.0 / 3, 1.0 / 3}, same);
  const BoundReport ru = pgb::beigi_check(pgb::cq_state(indep), 1e-9);
  CHECK(std::abs(ru.lhs) < 1e-9);
  CHECK(std::abs(ru.slack) < 1e-9);

  // Random instances hold.
  pgb::Rng rng(2033);
  for (int rep = 0; rep < 5; ++rep) {
    const Ensemble e =
        pgb::random_ensemble(rng.next_int(2, 4), rng.next_int(2, 4), false,
                             rng);
    const BoundReport r = pgb::beigi_check(pgb::cq_state(e), 1e-6);
    CHECK(r.slack >= -1e-6);
  }
}

TEST_CASE("slack is recomputable from the stored sides") {
  pgb::Rng rng(2035);
  const Ensemble e = pgb::random_ensemble(3, 2, false, rng);
  const BoundReport r = pgb::pgm_bound(e, 1e-6);
  CHECK(r.slack == r.lhs - r.rhs);  // bitwise, no rounding slop
  const BoundReport rf = pgb::fano_classical(pgb::cq_state(e), 1e-6);
  CHECK(rf.slack == rf.rhs - rf.lhs);
}
