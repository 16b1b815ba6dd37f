#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "pgb/divergences.hpp"
#include "pgb/strategies.hpp"

using pgb::Channel;
using pgb::ComplexMatrix;
using pgb::DensityOperator;
using pgb::Ensemble;
using pgb::Mat;
using pgb::Povm;

namespace {

Ensemble basis_ensemble(int m) {
  std::vector<DensityOperator> states;
  std::vector<double> priors(static_cast<size_t>(m), 1.0 / m);
  for (int x = 0; x < m; ++x) {
    Mat e = Mat::Zero(m, m);
    e(x, x) = 1.0;
    states.push_back(DensityOperator::make(ComplexMatrix(std::move(e))));
  }
  return Ensemble::make(priors, states);
}

Eigen::MatrixXd joint_of_classical(const Ensemble& e) {
  Eigen::MatrixXd joint(e.size(), e.dim());
  for (int x = 0; x < e.size(); ++x)
    for (int y = 0; y < e.dim(); ++y)
      joint(x, y) = e.priors[static_cast<size_t>(x)] *
                    e.states[static_cast<size_t>(x)].mat()(y, y).real();
  return joint;
}

}  // namespace

TEST_CASE("povm validation") {
  std::vector<ComplexMatrix> good;
  good.emplace_back(Mat(Mat::Identity(2, 2) * 0.5));
  good.emplace_back(Mat(Mat::Identity(2, 2) * 0.5));
  CHECK_NOTHROW(Povm::make(good));

  std::vector<ComplexMatrix> not_complete;
  not_complete.emplace_back(Mat(Mat::Identity(2, 2) * 0.5));
  not_complete.emplace_back(Mat(Mat::Identity(2, 2) * 0.4));
  CHECK_THROWS_AS(Povm::make(not_complete), pgb::BadParams);

  Mat neg(2, 2);
  neg << 1.4, 0, 0, 0.6;
  std::vector<ComplexMatrix> negative;
  negative.emplace_back(Mat(Mat::Identity(2, 2) - neg));
  negative.emplace_back(neg);
  CHECK_THROWS_AS(Povm::make(negative), pgb::NotPSD);

  std::vector<ComplexMatrix> mixed_dims;
  mixed_dims.emplace_back(Mat(Mat::Identity(2, 2)));
  mixed_dims.emplace_back(Mat(Mat::Zero(3, 3)));
  CHECK_THROWS_AS(Povm::make(mixed_dims), pgb::DimensionMismatch);
}

TEST_CASE("pretty-good measurement on orthogonal states is a projector") {
  const Ensemble e = basis_ensemble(3);
  const Povm povm = pgb::pgm(e);
  REQUIRE(povm.size() == 3);
  for (int x = 0; x < 3; ++x) {
    CHECK(pgb::max_abs(povm.elements[static_cast<size_t>(x)].mat -
                       e.states[static_cast<size_t>(x)].mat()) < 1e-10);
  }
  CHECK(pgb::guessing_prob(e, povm) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pretty-good measurement on identical states scores collision") {
  pgb::Rng rng(5);
  const DensityOperator common = pgb::random_density(3, rng);
  const std::vector<double> priors = {0.5, 0.3, 0.2};
  const Ensemble e =
      Ensemble::make(priors, {common, common, common});
  const Povm povm = pgb::pgm(e);
  // Lambda_x = p_x * (support projector), so the success probability is the
  // collision probability of the prior.
  CHECK(pgb::guessing_prob(e, povm) ==
        doctest::Approx(0.5 * 0.5 + 0.3 * 0.3 + 0.2 * 0.2).epsilon(1e-10));
}

TEST_CASE("pretty-good measurement completes off the average support") {
  // Two states supported on the first two of three levels: the PGM must
  // still resolve the identity on the full space.
  Mat a = Mat::Zero(3, 3);
  a(0, 0) = 1.0;
  Mat b = Mat::Zero(3, 3);
  b(1, 1) = 1.0;
  const Ensemble e = Ensemble::make(
      {0.5, 0.5}, {DensityOperator::make(ComplexMatrix(std::move(a))),
                   DensityOperator::make(ComplexMatrix(std::move(b)))});
  const Povm povm = pgb::pgm(e);
  Mat total = Mat::Zero(3, 3);
  for (const auto& el : povm.elements) total += el.mat;
  CHECK(pgb::max_abs(total - Mat::Identity(3, 3)) < 1e-10);
  CHECK(pgb::guessing_prob(e, povm) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("pgm guessing matches the classical formula on diagonal data") {
  pgb::Rng rng(17);
  for (int rep = 0; rep < 10; ++rep) {
    const int m = rng.next_int(2, 4);
    const int d = rng.next_int(2, 4);
    const Ensemble e = pgb::random_ensemble(m, d, true, rng);
    const Eigen::MatrixXd joint = joint_of_classical(e);
    CHECK(pgb::guessing_prob(e, pgb::pgm(e)) ==
          doctest::Approx(oracle::classical_pretty_good(joint))
              .epsilon(1e-10));
  }
}

TEST_CASE("pretty-good guessing equals its divergence form") {
  pgb::Rng rng(23);
  for (int rep = 0; rep < 20; ++rep) {
    const int m = rng.next_int(2, 4);
    const int d = rng.next_int(2, 4);
    const Ensemble e = pgb::random_ensemble(m, d, false, rng);
    const DensityOperator cq = pgb::cq_state(e);
    const DensityOperator ref = DensityOperator::make(pgb::kron(
        pgb::maximally_mixed(m).cm(), ComplexMatrix(e.average(), {d})));
    const double via_divergence =
        std::exp2(pgb::sandwiched(cq, ref, 2.0)) / m;
    CHECK(pgb::p_pg(e) ==
          doctest::Approx(via_divergence).epsilon(1e-9));
    CHECK(pgb::p_pg(e) ==
          doctest::Approx(pgb::guessing_prob(e, pgb::pgm(e)))
              .epsilon(1e-9));
  }
}

TEST_CASE("squared-weight measurement agrees with its classical value") {
  pgb::Rng rng(29);
  for (int rep = 0; rep < 10; ++rep) {
    const int m = rng.next_int(2, 4);
    const int d = rng.next_int(2, 4);
    const Ensemble e = pgb::random_ensemble(m, d, true, rng);
    const Eigen::MatrixXd joint = joint_of_classical(e);
    CHECK(pgb::guessing_prob(e, pgb::quad_pgm(e)) ==
          doctest::Approx(oracle::classical_quad(joint)).epsilon(1e-10));
    CHECK(pgb::p_quad_classical(joint) ==
          doctest::Approx(oracle::classical_quad(joint)).epsilon(1e-12));
  }
}

TEST_CASE("classical squared-weight value on the spread distribution") {
  // Single trivial symbol: columns are the bare prior.
  Eigen::MatrixXd joint(4, 1);
  joint << 0.7, 0.1, 0.1, 0.1;
  CHECK(pgb::p_quad_classical(joint) ==
        doctest::Approx(0.346 / 0.52).epsilon(1e-12));

  Eigen::MatrixXd bad(2, 1);
  bad << 0.7, -0.1;
  CHECK_THROWS_AS(pgb::p_quad_classical(bad), pgb::BadTable);
  Eigen::MatrixXd off(2, 1);
  off << 0.7, 0.7;
  CHECK_THROWS_AS(pgb::p_quad_classical(off), pgb::BadTable);
}

TEST_CASE("simple strategies") {
  const Ensemble e = Ensemble::make(
      {0.2, 0.8}, {pgb::maximally_mixed(2), pgb::maximally_mixed(2)});
  CHECK(pgb::guessing_prob(e, pgb::best_single_guess(e)) ==
        doctest::Approx(0.8).epsilon(1e-12));
  CHECK(pgb::guessing_prob(e, pgb::uniform_povm(2, 2)) ==
        doctest::Approx(0.5).epsilon(1e-12));

  const Povm povm = pgb::uniform_povm(3, 2);
  CHECK_THROWS_AS(pgb::guessing_prob(e, povm), pgb::CountMismatch);
  const Povm wrong_dim = pgb::uniform_povm(2, 3);
  CHECK_THROWS_AS(pgb::guessing_prob(e, wrong_dim),
                  pgb::DimensionMismatch);
}

TEST_CASE("channel validation and identity behavior") {
  CHECK_NOTHROW(pgb::identity_channel(3));

  // Non-trace-preserving Choi is rejected.
  ComplexMatrix bad(Mat(Mat::Identity(4, 4) * 0.7), {2, 2});
  CHECK_THROWS_AS(Channel::make(bad), pgb::BadParams);

  // Negative Choi is rejected.
  Mat m = Mat::Identity(4, 4);
  m(0, 0) = -0.1;
  m(1, 1) = 2.1;
  CHECK_THROWS_AS(Channel::make(ComplexMatrix(m, {2, 2})), pgb::NotPSD);

  // Missing tensor structure is rejected.
  CHECK_THROWS_AS(Channel::make(ComplexMatrix(Mat::Identity(4, 4))),
                  pgb::BadParams);

  pgb::Rng rng(31);
  const DensityOperator rho = pgb::random_state({2, 3}, false, rng);
  const DensityOperator out =
      pgb::apply_channel(pgb::identity_channel(3), rho);
  CHECK(pgb::max_abs(out.mat() - rho.mat()) < 1e-12);
  CHECK(out.dims() == rho.dims());
}

TEST_CASE("apply_channel contracts the Choi operator correctly") {
  // Completely depolarizing channel: J = I_in ten pi_out. Any input goes to
  // the maximally mixed state.
  const int din = 2, dout = 3;
  const ComplexMatrix j(
      pgb::kron_mat(Mat::Identity(din, din),
                    Mat::Identity(dout, dout) / dout),
      {din, dout});
  const Channel depol = Channel::make(j);
  pgb::Rng rng(37);
  const DensityOperator rho = pgb::random_state({2, din}, false, rng);
  const DensityOperator out = pgb::apply_channel(depol, rho);
  CHECK(out.dims() == std::vector<int>{2, dout});
  const ComplexMatrix marg_a = pgb::partial_trace(rho.cm(), {0});
  CHECK(pgb::max_abs(out.mat() -
                     pgb::kron_mat(marg_a.mat,
                                   Mat::Identity(dout, dout) / dout)) <
        1e-10);
}

TEST_CASE("recovery fidelity of standard cases") {
  // Identity on the maximally entangled state is perfect.
  for (int d : {2, 3}) {
    CHECK(pgb::recovery_fidelity(pgb::max_entangled(d),
                                 pgb::identity_channel(d)) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  // Identity on a product of maximally mixed states: overlap 1/d^2.
  const DensityOperator prod = DensityOperator::make(
      pgb::kron(pgb::maximally_mixed(2).cm(), pgb::maximally_mixed(2).cm()));
  CHECK(pgb::recovery_fidelity(prod, pgb::identity_channel(2)) ==
        doctest::Approx(0.25).epsilon(1e-12));

  // Output dimension must match the A side.
  CHECK_THROWS_AS(
      pgb::recovery_fidelity(prod, pgb::identity_channel(3)),
      pgb::DimensionMismatch);
}

TEST_CASE("pretty-good recovery is a channel and hits its divergence form") {
  pgb::Rng rng(43);
  for (int rep = 0; rep < 12; ++rep) {
    const int da = rng.next_int(2, 4);
    const int db = rng.next_int(2, 4);
    const DensityOperator rho = pgb::random_state({da, db}, false, rng);
    const Channel rec = pgb::pretty_good_recovery(rho);
    CHECK(rec.dim_in() == db);
    CHECK(rec.dim_out() == da);

    const DensityOperator pi_rb = DensityOperator::make(pgb::kron(
        pgb::maximally_mixed(da).cm(),
        pgb::partial_trace(rho.cm(), {1})));
    const double via_divergence =
        std::exp2(pgb::sandwiched(rho, pi_rb, 2.0)) / (da * da);
    CHECK(pgb::recovery_fidelity(rho, rec) ==
          doctest::Approx(via_divergence).epsilon(1e-9));
    CHECK(pgb::r_pg(rho) ==
          doctest::Approx(via_divergence).epsilon(1e-9));
  }
}

TEST_CASE("pretty-good recovery stays trace preserving off the support") {
  // B marginal is singular: rho = phi_A ten |0><0|_B embedded in dim 3.
  Mat b = Mat::Zero(3, 3);
  b(0, 0) = 1.0;
  const DensityOperator rho = DensityOperator::make(pgb::kron(
      pgb::maximally_mixed(2).cm(), ComplexMatrix(std::move(b), {3})));
  CHECK_NOTHROW(pgb::pretty_good_recovery(rho));
  const Channel rec = pgb::pretty_good_recovery(rho);
  // Tr_out of the Choi operator is the identity even though rho_B is rank 1.
  const ComplexMatrix tb = pgb::partial_trace(rec.choi, {0});
  CHECK(pgb::max_abs(tb.mat - Mat::Identity(3, 3)) < 1e-9);
}

TEST_CASE("pretty-good recovery of the maximally entangled state is exact") {
  for (int d : {2, 3}) {
    const DensityOperator phi = pgb::max_entangled(d);
    CHECK(pgb::r_pg(phi) == doctest::Approx(1.0).epsilon(1e-10));
  }
}
