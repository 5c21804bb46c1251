#include <doctest.h>

#include <cmath>
#include <map>

#include "qlnn/baselines.hpp"
#include "qlnn/special_functions.hpp"
#include "qlnn/verification.hpp"

using namespace qlnn;

namespace {

const SpectralState& state(int N) {
  static std::map<int, SpectralState> cache;
  auto it = cache.find(N);
  if (it == cache.end()) {
    const PhysicalConfig cfg;
    it = cache.emplace(N, make_spectral_state(direct_foldy_solve(cfg, N), cfg)).first;
  }
  return it->second;
}

}  // namespace

TEST_CASE("Z-transforms") {
  const PhysicalConfig cfg;
  const SpectralState& st = state(8);
  CHECK(z_transform_A(st, 0.0, 0.0) == st.A(0, 0));
  CHECK(z_transform_B1(st, 0.0) == st.A(0, 0));
  CHECK(z_transform_B2(st, 0.0) == st.A(0, 0));

  CoeffGrid small(1);
  small.values << 1.0, 2.0, Complex(0, 3), 4.0;
  const SpectralState s1 = make_spectral_state(small, cfg);
  CHECK(std::abs(z_transform_A(s1, 1.0, 1.0) - Complex(7.0, 3.0)) < 1e-15);
  // No far interactions on a 2 x 2 grid.
  CHECK(s1.S_A.cwiseAbs().maxCoeff() == 0.0);

  for (auto [z, zeta] : {std::pair{Complex(0.3, 0.4), Complex(-0.7, 0.1)},
                         {std::polar(1.0, 2.0), std::polar(1.0, -0.3)}}) {
    Complex loop = 0.0, b1 = 0.0, b2 = 0.0;
    for (int p = 0; p <= 8; ++p)
      for (int q = 0; q <= 8; ++q) loop += st.A(p, q) * std::pow(z, p) * std::pow(zeta, q);
    for (int p = 0; p <= 8; ++p) {
      b1 += st.A(p, 0) * std::pow(z, p);
      b2 += st.A(0, p) * std::pow(zeta, p);
    }
    CHECK(std::abs(z_transform_A(st, z, zeta) - loop) < 1e-13);
    CHECK(std::abs(z_transform_B1(st, z) - b1) < 1e-13);
    CHECK(std::abs(z_transform_B2(st, zeta) - b2) < 1e-13);
  }
}

TEST_CASE("far-interaction sums") {
  const PhysicalConfig cfg;
  const SpectralState& st = state(8);
  // S_A is the Foldy sum with the nearest-neighbour block removed.
  for (auto [p, q] : {std::pair{0, 0}, {4, 3}, {8, 8}}) {
    Complex ref = 0.0;
    for (int n = 0; n <= 8; ++n)
      for (int m = 0; m <= 8; ++m)
        if (std::abs(m - p) > 1 || std::abs(n - q) > 1)
          ref += st.A(m, n) * hankel1_0(cfg.k * cfg.s * std::hypot(double(m - p), double(n - q)));
    CHECK(std::abs(st.S_A(p, q) - ref) < 1e-13);
  }
}

TEST_CASE("functional equation") {
  const PhysicalConfig cfg;
  // Zero state: only the incident forcing remains.
  CoeffGrid zero(6);
  const SpectralState s0 = make_spectral_state(zero, cfg);
  const Complex z(0.2, 0.3), zeta(-0.4, 0.1);
  const Complex inc = -1.0 / ((1.0 - cfg.z_c() * z) * (1.0 - cfg.z_s() * zeta));
  CHECK(std::abs(functional_equation_residual(s0, cfg, z, zeta) + z * zeta * inc) < 1e-15);
  CHECK(std::abs(functional_equation_residual(s0, cfg, z, zeta, false)) == 0.0);

  // Inside the disk the truncated tails decay and the identity converges.
  const auto a = random_unit_circle(32, 1, 0.5), b = random_unit_circle(32, 2, 0.5);
  double prev = 1e300;
  for (int N : {20, 30, 40}) {
    double worst = 0.0;
    for (int i = 0; i < 32; ++i)
      worst = std::max(worst, std::abs(functional_equation_residual(state(N), cfg, a[i], b[i])));
    MESSAGE("functional equation residual, radius 0.5, N = " << N << ": " << worst);
    CHECK(worst < prev);
    prev = worst;
  }
  CHECK(prev < 1e-10);
}

TEST_CASE("B2+ from the contour formula") {
  const PhysicalConfig cfg;
  CHECK(std::abs(b2_plus(state(30), cfg, 0.0) - state(30).A(0, 0)) < 1e-10);
  double worst = 0.0;
  for (Complex zeta : random_unit_circle(16, 3, 0.5))
    worst = std::max(worst, std::abs(b2_plus(state(30), cfg, zeta) - z_transform_B2(state(30), zeta)));
  CHECK(worst < 1e-8);
  // At radius 0.9 both sides are truncation limited and improve with N.
  double prev = 1e300;
  for (int N : {20, 30, 40}) {
    double gap = 0.0;
    for (Complex zeta : random_unit_circle(16, 4, 0.9))
      gap = std::max(gap, std::abs(b2_plus(state(N), cfg, zeta) - z_transform_B2(state(N), zeta)));
    MESSAGE("B2+ gap at radius 0.9, N = " << N << ": " << gap);
    CHECK(gap < prev);
    prev = gap;
  }
  double wh = 0.0;
  for (Complex zeta : random_unit_circle(16, 5))
    wh = std::max(wh, one_variable_wh_residual(state(30), cfg, zeta));
  CHECK(wh < 1e-5);
  CHECK(liouville_defect(state(30), cfg, random_unit_circle(8, 6, 0.5)) < 1e-8);

  PhysicalConfig other = cfg;
  other.theta_inc = 0.3;
  CHECK_THROWS_AS(b2_plus(state(8), other, 0.1), Error);
}

TEST_CASE("residue closed forms") {
  const PhysicalConfig cfg;
  for (Complex z : random_unit_circle(6, 9)) {
    for (int n : {0, 1, 3, 7}) {
      for (int q : {0, 1, 3, 7}) CHECK(appendix_c_check(z, n, q, cfg).max() < 1e-9);
    }
  }
  CHECK(appendix_c_check(std::polar(1.0, 0.4), 0, 0, cfg).first < 1e-10);
  CHECK_THROWS_AS(appendix_c_check(1.0, -1, 0, cfg), Error);
}

TEST_CASE("Cauchy split") {
  // F+ is evaluated inside the unit disk, F- outside.
  auto laurent = [](Complex z) { return z + 1.0 / z; };
  const Complex in(0.3, -0.2), out(1.4, 0.9);
  CHECK(std::abs(cauchy_split(laurent, in).plus - in) < 1e-14);
  CHECK(std::abs(cauchy_split(laurent, out).minus - 1.0 / out) < 1e-14);

  auto constant = [](Complex) { return Complex(2.5, 1.0); };
  CHECK(std::abs(cauchy_split(constant, in).plus - Complex(2.5, 1.0)) < 1e-14);
  CHECK(std::abs(cauchy_split(constant, out).minus) < 1e-14);

  // One pole inside and one outside: partial fractions.
  const Complex a(0.4, 0.1), b(1.8, -0.5);
  auto rational = [&](Complex z) { return 1.0 / (z - a) + 2.0 / (z - b); };
  for (Complex w : {Complex(0.1, 0.2), Complex(-0.2, 0.05)})
    CHECK(std::abs(cauchy_split(rational, w).plus - 2.0 / (w - b)) < 1e-12);
  for (Complex w : {Complex(1.5, 0.3), Complex(-1.2, -0.9)})
    CHECK(std::abs(cauchy_split(rational, w).minus - 1.0 / (w - a)) < 1e-12);

  // Additivity on the unit circle: a contour of radius 0.8 puts the plus
  // integral on |z| = 1.25 and the minus integral on |z| = 0.8.
  auto f = [](Complex z) { return std::exp(0.3 * z) + 1.0 / (z - 0.2) + 1.0 / (z - 3.0); };
  for (Complex w : random_unit_circle(8, 11)) {
    const CauchySplit s = cauchy_split(f, w, 512, 0.8);
    CHECK(std::abs(s.plus + s.minus - f(w)) < 1e-10);
  }
  try {
    cauchy_split(laurent, std::polar(1.0, 0.3));
    FAIL("expected singular input");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::singular_input);
  }
}

TEST_CASE("verification suites") {
  const PhysicalConfig cfg;
  const auto kernel = verify_kernel(cfg, 1);
  REQUIRE(kernel.size() == 5);
  for (const auto& c : kernel) {
    if (c.name == "manifold_involution_unit_circle") {
      CHECK_FALSE(c.passed);
    } else {
      CHECK_MESSAGE(c.passed, c.name << " " << c.value);
    }
  }
  const auto ac = verify_appendix_c(cfg, 2);
  REQUIRE(ac.size() == 1);
  CHECK(ac[0].passed);
  const auto fe = verify_functional_eq(cfg, 30, 3);
  REQUIRE(fe.size() == 2);
  CHECK(fe[1].passed);
  PhysicalConfig log_cfg = cfg;
  log_cfg.monopole = MonopoleChoice::log_form;
  CHECK(verify_energy(log_cfg, 10)[0].passed);
  CHECK(verify_energy(cfg, 10)[0].passed);

  const auto pts = random_unit_circle(5, 42, 0.7);
  CHECK(pts == random_unit_circle(5, 42, 0.7));
  for (Complex p : pts) CHECK(std::abs(std::abs(p) - 0.7) < 1e-15);
}
