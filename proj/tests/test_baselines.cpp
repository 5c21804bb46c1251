#include <doctest.h>

#include <cmath>

#include "qlnn/baselines.hpp"
#include "qlnn/kernel.hpp"
#include "qlnn/special_functions.hpp"

using namespace qlnn;

TEST_CASE("single scatterer") {
  for (auto choice : {MonopoleChoice::hankel, MonopoleChoice::log_form, MonopoleChoice::ratio}) {
    PhysicalConfig cfg;
    cfg.monopole = choice;
    const CoeffGrid A = direct_foldy_solve(cfg, 0);
    CHECK(std::abs(A(0, 0) + 1.0 / monopole_constant(cfg)) < 1e-15);
  }
}

TEST_CASE("2 x 2 lattice against a hand-assembled system") {
  const PhysicalConfig cfg;
  const double ks = cfg.k * cfg.s;
  const Complex C = hankel1_0(cfg.k * cfg.a);
  const Complex h1 = hankel1_0(ks), h2 = hankel1_0(ks * std::sqrt(2.0));
  // Unknowns ordered (0,0), (1,0), (0,1), (1,1).
  MatrixXc A(4, 4);
  A << C, h1, h1, h2,
       h1, C, h2, h1,
       h1, h2, C, h1,
       h2, h1, h1, C;
  const double c = std::cos(cfg.theta_inc), s = std::sin(cfg.theta_inc);
  VectorXc b(4);
  b << -1.0, -std::exp(-kI * ks * c), -std::exp(-kI * ks * s), -std::exp(-kI * ks * (c + s));
  const VectorXc x = Eigen::FullPivLU<MatrixXc>(A).solve(b);
  const CoeffGrid got = direct_foldy_solve(cfg, 1);
  CHECK(std::abs(got(0, 0) - x(0)) < 1e-13);
  CHECK(std::abs(got(1, 0) - x(1)) < 1e-13);
  CHECK(std::abs(got(0, 1) - x(2)) < 1e-13);
  CHECK(std::abs(got(1, 1) - x(3)) < 1e-13);
  CHECK((foldy_matrix(cfg, 1) - A).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("direct solve symmetry and residual") {
  const PhysicalConfig cfg;
  for (int N : {4, 12}) {
    const CoeffGrid A = direct_foldy_solve(cfg, N);
    CHECK((A.values - A.values.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    const VectorXc r = foldy_matrix(cfg, N) * A.vec() - foldy_forcing(cfg, N);
    CHECK(r.cwiseAbs().maxCoeff() < 1e-12);
  }
  PhysicalConfig bad = cfg;
  bad.a = 0.06;
  CHECK_THROWS_AS(direct_foldy_solve(bad, 2), Error);
}

TEST_CASE("least-squares collocation, single scatterer") {
  const PhysicalConfig cfg;
  const double ka = cfg.k * cfg.a;
  const CoeffGrid A = lsc_solve(cfg, 0, {16});
  const Complex exact = -1.0 / hankel1_0(ka);
  CHECK(std::abs(A(0, 0) - exact) < ka * ka * std::abs(exact));
  // The collocation average of the incident wave is J0(ka).
  CHECK(std::abs(A(0, 0) + bessel_j0(ka) / hankel1_0(ka)) < 1e-12 * std::abs(exact));
}

TEST_CASE("least-squares collocation on a lattice") {
  const PhysicalConfig cfg;
  const int N = 6;
  const CoeffGrid a8 = lsc_solve(cfg, N, {8});
  const CoeffGrid a16 = lsc_solve(cfg, N, {16});
  CHECK((a8.values - a16.values).cwiseAbs().maxCoeff() < 1e-8);

  const LscSystem sys = lsc_system(cfg, N, {16});
  CHECK(sys.matrix.rows() == 16 * (N + 1) * (N + 1));
  const VectorXc r = sys.matrix * a16.vec() - sys.rhs;
  const VectorXc normal = sys.matrix.adjoint() * r;
  const double scale = (sys.matrix.adjoint() * sys.rhs).cwiseAbs().maxCoeff();
  CHECK(normal.cwiseAbs().maxCoeff() < 1e-8 * scale);

  // Close to the direct solve; the gap is the J0(ka) averaging, O((ka)^2).
  const CoeffGrid d = direct_foldy_solve(cfg, N);
  const double ka = cfg.k * cfg.a;
  CHECK((a16.values - d.values).cwiseAbs().maxCoeff() < ka * ka);

  CHECK_THROWS_AS(lsc_solve(cfg, N, {2}), Error);
}

TEST_CASE("rank deficiency is reported") {
  const PhysicalConfig cfg;
  LscSystem sys = lsc_system(cfg, 1, {8});
  sys.matrix.col(3) = sys.matrix.col(0);
  try {
    least_squares(sys.matrix, sys.rhs);
    FAIL("expected rank deficiency");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::rank_deficient);
  }
  CHECK_THROWS_AS(least_squares(sys.matrix, VectorXc::Ones(3)), Error);
}
