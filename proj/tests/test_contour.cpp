#include <doctest.h>

#include <cmath>

#include "qlnn/contour.hpp"

using namespace qlnn;

namespace {

VectorXc sample(const ContourSpec& spec, const std::function<Complex(Complex)>& f) {
  VectorXc v(spec.Q);
  for (int j = 0; j < spec.Q; ++j) v(j) = f(spec.nodes(j));
  return v;
}

}  // namespace

TEST_CASE("contour node set") {
  const ContourSpec spec = ContourSpec::make(128);
  CHECK(spec.nodes.size() == 128);
  for (int j = 0; j < spec.Q; ++j) CHECK(std::abs(std::abs(spec.nodes(j)) - 1.0) < 1e-15);
  CHECK(std::abs(spec.nodes(0) - 1.0) < 1e-15);
  CHECK_THROWS_AS(ContourSpec::make(32), Error);
  CHECK_THROWS_AS(ContourSpec::make(65), Error);
  CHECK_NOTHROW(ContourSpec::make(64));
  CHECK_THROWS_AS(integrate(VectorXc::Zero(10), spec), Error);
}

TEST_CASE("trapezoid rule on Laurent monomials") {
  const ContourSpec spec = ContourSpec::make(256);
  CHECK(std::abs(integrate(sample(spec, [](Complex z) { return 1.0 / z; }), spec) - 1.0) < 1e-14);
  for (int m = 0; m < 200; m += 7) {
    auto f = [m](Complex z) { return std::pow(z, m); };
    CHECK(std::abs(integrate(sample(spec, f), spec)) < 1e-14);
  }
  for (int m = 2; m < 200; m += 7) {
    auto f = [m](Complex z) { return std::pow(z, -m); };
    CHECK(std::abs(integrate(sample(spec, f), spec)) < 1e-13);
  }
  // 1/(z - a) = sum a^k z^{-k-1}: only the k = 0 term survives; aliasing
  // contributes a^Q / (1 - a^Q).
  auto g = [](Complex z) { return 1.0 / (z - 0.3); };
  CHECK(std::abs(integrate(sample(spec, g), spec) - 1.0) < 1e-12);
  const ContourSpec small = ContourSpec::make(64);
  auto h = [](Complex z) { return 1.0 / (z - 0.9); };
  const double aliased = std::pow(0.9, 64) / (1.0 - std::pow(0.9, 64));
  CHECK(std::abs(integrate(sample(small, h), small) - (1.0 + aliased)) < 1e-12);
}

TEST_CASE("pole removal on the unit circle") {
  const Complex zs = std::polar(1.0, -0.628 * std::sqrt(2.0) / 2.0 * -1.0);
  const ContourSpec spec = ContourSpec::make(256);

  auto f1 = [&](Complex z) { return 1.0 / (z - zs); };
  CHECK(std::abs(integrate_with_pole_removal(f1, {{zs, 1.0, PoleSide::inside}}, spec) - 1.0) <
        1e-12);
  auto f2 = [&](Complex z) { return 1.0 / (z - 1.0 / zs); };
  CHECK(std::abs(integrate_with_pole_removal(f2, {{1.0 / zs, 1.0, PoleSide::outside}}, spec)) <
        1e-12);

  auto f3 = [&](Complex z) { return 1.0 / ((z - zs) * (z - 1.0 / zs)); };
  const Complex r1 = 1.0 / (zs - 1.0 / zs);
  const Complex r2 = 1.0 / (1.0 / zs - zs);
  const Complex got = integrate_with_pole_removal(
      f3, {{zs, r1, PoleSide::inside}, {1.0 / zs, r2, PoleSide::outside}}, spec);
  CHECK(std::abs(got - r1) < 1e-12);
}

TEST_CASE("pole removal with smooth remainder and a pole on a node") {
  const ContourSpec spec = ContourSpec::make(512);
  // Pole exactly at a node: the contour rotates internally.
  const Complex p = spec.nodes(5);
  auto f = [&](Complex z) { return std::exp(z) / (z - p) + 1.0 / (z - 0.5); };
  const Complex got = integrate_with_pole_removal(f, {{p, std::exp(p), PoleSide::outside}}, spec);
  // exp(z) - exp(p) over z - p is entire; only 1/(z - 0.5) contributes.
  CHECK(std::abs(got - 1.0) < 1e-12);
  const Complex got_in =
      integrate_with_pole_removal(f, {{p, std::exp(p), PoleSide::inside}}, spec);
  CHECK(std::abs(got_in - (1.0 + std::exp(p))) < 1e-12);
}

TEST_CASE("rational integrands give the inside residues") {
  const ContourSpec spec = ContourSpec::make(512);
  const Complex a = std::polar(1.0, 0.4), b = std::polar(1.0, 2.1), c(0.2, -0.5), d(1.7, 0.3);
  auto f = [&](Complex z) { return 1.0 / ((z - a) * (z - b) * (z - c) * (z - d)); };
  auto res = [&](Complex p, std::initializer_list<Complex> others) {
    Complex den = 1.0;
    for (Complex o : others) den *= (p - o);
    return 1.0 / den;
  };
  const Complex ra = res(a, {b, c, d}), rb = res(b, {a, c, d}), rc = res(c, {a, b, d});
  const Complex got = integrate_with_pole_removal(
      f, {{a, ra, PoleSide::inside}, {b, rb, PoleSide::outside}}, spec);
  CHECK(std::abs(got - (ra + rc)) < 1e-12);
}

TEST_CASE("residue guard") {
  const ContourSpec spec = ContourSpec::make(256);
  const Complex zs = std::polar(1.0, 0.77);
  auto f = [&](Complex z) { return 2.0 / (z - zs); };
  try {
    integrate_with_pole_removal(f, {{zs, 1.0, PoleSide::inside}}, spec);
    FAIL("expected inconsistent residue");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::inconsistent_residue);
  }
  CHECK_NOTHROW(integrate_with_pole_removal(f, {{zs, 1.0, PoleSide::inside}}, spec, false));
}

TEST_CASE("incident pole classification") {
  PhysicalConfig cfg;
  cfg.theta_inc = -0.75 * kPi;
  auto p = classify_incident_poles(cfg);
  CHECK(p.z_c.side == PoleSide::inside);
  CHECK(p.inv_z_c.side == PoleSide::outside);
  CHECK(p.z_s.side == PoleSide::inside);
  CHECK(p.inv_z_s.side == PoleSide::outside);
  CHECK(std::abs(p.z_c.location - std::exp(Complex(0, -cfg.k * cfg.s * std::cos(cfg.theta_inc)))) <
        1e-15);
  CHECK(std::abs(p.inv_z_s.location * p.z_s.location - 1.0) < 1e-15);

  cfg.theta_inc = -0.25 * kPi;
  p = classify_incident_poles(cfg);
  CHECK(p.z_c.side == PoleSide::outside);
  CHECK(p.inv_z_c.side == PoleSide::inside);
  CHECK(p.z_s.side == PoleSide::inside);

  // The sign rule agrees with a small positive imaginary part of k.
  for (double theta : {-2.5, -1.0, 0.4, 2.0, 3.0}) {
    cfg.theta_inc = theta;
    p = classify_incident_poles(cfg);
    const Complex k(cfg.k, 1e-6);
    const bool zc_in = std::abs(std::exp(-kI * k * cfg.s * std::cos(theta))) < 1.0;
    const bool zs_in = std::abs(std::exp(-kI * k * cfg.s * std::sin(theta))) < 1.0;
    CHECK((p.z_c.side == PoleSide::inside) == zc_in);
    CHECK((p.z_s.side == PoleSide::inside) == zs_in);
  }

  for (double theta : {0.5 * kPi, 0.0, kPi, -0.5 * kPi}) {
    cfg.theta_inc = theta;
    try {
      classify_incident_poles(cfg);
      FAIL("expected grazing incidence");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::grazing_incidence);
    }
  }
}

TEST_CASE("rotation away from hazards") {
  const double h = 2.0 * kPi / 64;
  CHECK(lattice_distance(0.0, h) == doctest::Approx(0.0));
  CHECK(lattice_distance(0.5 * h, h) == doctest::Approx(0.5));
  CHECK(lattice_distance(-0.25 * h, h) == doctest::Approx(0.25));
  CHECK(choose_rotation(64, {0.0}) == doctest::Approx(0.5 * h));
  const double r = choose_rotation(64, {0.1, 0.37});
  CHECK(lattice_distance(0.1 - r, h) > 0.2);
  CHECK(lattice_distance(0.37 - r, h) > 0.2);
}

TEST_CASE("doubling gate") {
  // The trapezoid value of 1/(z - r) carries an aliasing error r^Q / (1 - r^Q).
  auto eval = [](int Q) {
    const ContourSpec spec = ContourSpec::make(Q);
    VectorXc v(Q);
    for (int j = 0; j < Q; ++j) v(j) = 1.0 / (spec.nodes(j) - 0.97);
    VectorXc out(1);
    out(0) = integrate(v, spec);
    return out;
  };
  auto norm = [](const VectorXc& v) { return v.cwiseAbs().maxCoeff(); };
  int used = 0;
  const VectorXc got = converge_doubling<VectorXc>(eval, norm, 64, 4096, 1e-10, &used);
  // 0.97^512 = 2e-7 still moves the result; 0.97^1024 = 3e-14 does not.
  CHECK(used == 2048);
  CHECK(std::abs(got(0) - 1.0) < 1e-10);
  CHECK_THROWS_AS(converge_doubling<VectorXc>(eval, norm, 64, 256, 1e-14), Error);
  converge_doubling<VectorXc>(eval, norm, 512, 512, 1e-10, &used);
  CHECK(used == 512);
}
