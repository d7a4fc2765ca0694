#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "doctest.h"
#include "gave/dynamics.hpp"
#include "gave/instances.hpp"
#include "gave/integrators.hpp"
#include "gave/problem.hpp"
#include "gave/reformulations.hpp"

namespace {

gave::LcpProblem scalar_lcp() {
  gave::Matrix m(1, 1);
  gave::Vector q(1);
  m << 2.0;
  q << -1.0;
  return {m, q};
}

gave::Vector vec1(double v) {
  gave::Vector x(1);
  x << v;
  return x;
}

// entries on the grid of multiples of 2^-20 in [-1, 1]: sums, halvings, and
// doublings of such numbers are exact in double precision
double dyadic(gave::SplitMix64& rng) {
  const auto ticks = static_cast<std::int64_t>(rng.next() % (2 * 1048576 + 1));
  return static_cast<double>(ticks - 1048576) * 0x1.0p-20;
}

}  // namespace

TEST_CASE("complementarity problem converts by shifting the identity") {
  const gave::GaveProblem p = gave::lcp_to_gave(scalar_lcp());
  CHECK(p.A()(0, 0) == 3.0);
  CHECK(p.B()(0, 0) == 1.0);
  CHECK(p.c()[0] == -1.0);

  gave::LcpProblem three(3.0 * gave::Matrix::Identity(2, 2),
                         gave::Vector::Ones(2));
  const gave::GaveProblem p3 = gave::lcp_to_gave(three);
  CHECK((p3.A() - 4.0 * gave::Matrix::Identity(2, 2)).norm() == 0.0);
  CHECK((p3.B() - 2.0 * gave::Matrix::Identity(2, 2)).norm() == 0.0);
  CHECK((p3.c() - gave::Vector::Ones(2)).norm() == 0.0);

  // M = I degenerates the |x| coefficient to zero: a plain linear system
  gave::LcpProblem eye(gave::Matrix::Identity(2, 2), gave::Vector::Ones(2));
  CHECK(gave::lcp_to_gave(eye).B().norm() == 0.0);
}

TEST_CASE("solution recovery solves the shifted system") {
  const gave::LcpProblem lcp = scalar_lcp();
  const gave::Vector z = gave::recover_lcp_solution(lcp, vec1(-0.25));
  CHECK(z[0] == 0.5);
  // w = M z + q vanishes, so this z is exactly complementary
  CHECK((lcp.M() * z + lcp.q()).norm() == 0.0);

  CHECK(gave::recover_lcp_solution(lcp, vec1(-0.5)).norm() == 0.0);

  gave::LcpProblem eye(gave::Matrix::Identity(2, 2), gave::Vector::Ones(2));
  CHECK_THROWS_AS(gave::recover_lcp_solution(eye, gave::Vector::Zero(2)),
                  gave::NumericalError);
  CHECK_THROWS_AS(gave::recover_lcp_solution(lcp, gave::Vector::Zero(2)),
                  std::invalid_argument);
}

TEST_CASE("positive and negative parts split a solution exactly") {
  gave::Vector x(2);
  x << 1.0, -2.0;
  const auto [z, w] = gave::gave_solution_to_hlcp(x);
  CHECK(z[0] == 1.0);
  CHECK(z[1] == 0.0);
  CHECK(w[0] == 0.0);
  CHECK(w[1] == 2.0);

  const auto [z0, w0] = gave::gave_solution_to_hlcp(gave::Vector::Zero(3));
  CHECK(z0.norm() == 0.0);
  CHECK(w0.norm() == 0.0);

  const auto [z5, w5] = gave::gave_solution_to_hlcp(vec1(5.0));
  CHECK(z5[0] == 5.0);
  CHECK(w5[0] == 0.0);

  gave::SplitMix64 rng(4321);
  for (int trial = 0; trial < 20; ++trial) {
    gave::Vector v(6);
    for (int i = 0; i < 6; ++i) v[i] = 3.0 * rng.gaussian();
    const auto [zp, wp] = gave::gave_solution_to_hlcp(v);
    CHECK((zp - wp - v).norm() == 0.0);
    CHECK(zp.dot(wp) == 0.0);
    CHECK(zp.minCoeff() >= 0.0);
    CHECK(wp.minCoeff() >= 0.0);
  }
}

TEST_CASE("horizontal form converts by averaging the coefficient pair") {
  gave::HlcpProblem hlcp(gave::Matrix::Identity(2, 2),
                         3.0 * gave::Matrix::Identity(2, 2),
                         gave::Vector::Ones(2));
  const gave::GaveProblem p = gave::hlcp_to_gave(hlcp);
  CHECK((p.A() - 2.0 * gave::Matrix::Identity(2, 2)).norm() == 0.0);
  CHECK((p.B() - gave::Matrix::Identity(2, 2)).norm() == 0.0);
  CHECK((p.c() - gave::Vector::Ones(2)).norm() == 0.0);

  gave::HlcpProblem equal(gave::Matrix::Identity(2, 2),
                          gave::Matrix::Identity(2, 2),
                          gave::Vector::Zero(2));
  CHECK(gave::hlcp_to_gave(equal).B().norm() == 0.0);

  gave::Matrix c1(1, 1), d1(1, 1);
  c1 << 1.0;
  d1 << 2.0;
  const gave::GaveProblem ph =
      gave::hlcp_to_gave(gave::HlcpProblem(c1, d1, vec1(1.0)));
  CHECK(ph.A()(0, 0) == 1.5);
  CHECK(ph.B()(0, 0) == 0.5);
  CHECK(ph.c()[0] == 1.0);
}

TEST_CASE("horizontal round trip is entrywise exact on dyadic data") {
  gave::SplitMix64 rng(31415);
  for (int trial = 0; trial < 10; ++trial) {
    gave::Matrix c(3, 3), d(3, 3);
    gave::Vector p(3);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        c(i, j) = dyadic(rng);
        d(i, j) = dyadic(rng);
      }
      p[i] = dyadic(rng);
    }
    const gave::GaveProblem converted =
        gave::hlcp_to_gave(gave::HlcpProblem(c, d, p));
    // mapping back through C = A - B, D = A + B reproduces the inputs
    CHECK(((converted.A() - converted.B()) - c).cwiseAbs().maxCoeff() == 0.0);
    CHECK(((converted.A() + converted.B()) - d).cwiseAbs().maxCoeff() == 0.0);
    CHECK((converted.c() - p).cwiseAbs().maxCoeff() == 0.0);
    // converting the reproduced pair again changes nothing
    const gave::GaveProblem twice = gave::hlcp_to_gave(gave::HlcpProblem(
        converted.A() - converted.B(), converted.A() + converted.B(),
        converted.c()));
    CHECK((twice.A() - converted.A()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((twice.B() - converted.B()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("complementarity report grades feasibility and the inner product") {
  const gave::LcpProblem lcp = scalar_lcp();
  const gave::ComplementarityReport good =
      gave::verify_lcp(lcp, vec1(0.5), 1e-8);
  CHECK(good.feasible);
  CHECK(good.complementary);
  CHECK(good.min_z == 0.5);
  CHECK(good.min_w == 0.0);
  CHECK(good.inner_product == 0.0);

  const gave::ComplementarityReport negative =
      gave::verify_lcp(lcp, vec1(-0.1), 1e-8);
  CHECK_FALSE(negative.feasible);

  gave::LcpProblem eye(gave::Matrix::Identity(1, 1), gave::Vector::Zero(1));
  const gave::ComplementarityReport coupled =
      gave::verify_lcp(eye, vec1(1.0), 1e-8);
  CHECK(coupled.inner_product == 1.0);
  CHECK(coupled.feasible);
  CHECK_FALSE(coupled.complementary);

  CHECK_THROWS_AS(gave::verify_lcp(lcp, gave::Vector::Zero(2), 1e-8),
                  std::invalid_argument);
}

TEST_CASE("full pipeline recovers a complementary point") {
  const gave::LcpProblem lcp = gave::random_spd_lcp(5, 918273);
  const gave::GaveProblem problem = gave::lcp_to_gave(lcp);
  REQUIRE(gave::certify_unique(problem).certified);
  gave::EulerConfig config;
  config.eta = 0.1;
  config.xi = 4.0;
  config.tol = 1e-12;
  config.max_iter = 100000;
  config.safeguard = true;
  const gave::IterateLog log = gave::forward_euler_solve(
      problem, gave::FlowParams::from_xi(1, 1, 1, 4), config,
      gave::Vector::Zero(5));
  REQUIRE(log.converged);
  const gave::Vector z = gave::recover_lcp_solution(lcp, log.iterates.back());
  const gave::ComplementarityReport report = gave::verify_lcp(lcp, z, 1e-8);
  CHECK(report.feasible);
  CHECK(report.complementary);
}
