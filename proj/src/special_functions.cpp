#include "qlnn/special_functions.hpp"

#include <cmath>

namespace qlnn {

namespace bessel {

namespace {

using Real = long double;

constexpr Real kPiL = 3.141592653589793238462643383279502884L;
constexpr Real kGammaL = 0.577215664901532860606512090082402431L;

}  // namespace

J0Y0 series(double x) {
  const Real q = Real(x) * Real(x) / 4.0L;
  Real term = 1.0L;  // (-1)^k q^k / (k!)^2
  Real j0 = 1.0L;
  Real harmonic = 0.0L;
  Real ysum = 0.0L;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (Real(k) * Real(k));
    harmonic += 1.0L / Real(k);
    j0 += term;
    ysum -= harmonic * term;
    if (std::fabs(term) * (1.0L + harmonic) < 1e-24L) break;
  }
  const Real log_part = std::log(Real(x) / 2.0L) + kGammaL;
  const Real y0 = (2.0L / kPiL) * (log_part * j0 + ysum);
  return {static_cast<double>(j0), static_cast<double>(y0)};
}

J0Y0 recurrence(double x) {
  const Real xl = x;
  int start = static_cast<int>(x) + 40;
  if (start % 2 != 0) ++start;

  Real next = 0.0L;     // J_{n+1}
  Real current = 1e-30L;  // J_n
  Real norm = 0.0L;     // J0 + 2 sum J_{2k}
  Real neumann = 0.0L;  // sum (-1)^k J_{2k} / k
  for (int n = start; n >= 1; --n) {
    if (n % 2 == 0) {
      const int k = n / 2;
      norm += 2.0L * current;
      neumann += ((k % 2 == 0) ? 1.0L : -1.0L) * current / Real(k);
    }
    const Real prev = (2.0L * Real(n) / xl) * current - next;
    next = current;
    current = prev;
  }
  norm += current;
  const Real j0 = current / norm;
  const Real y0 = (2.0L / kPiL) *
                  ((std::log(xl / 2.0L) + kGammaL) * j0 - 2.0L * neumann / norm);
  return {static_cast<double>(j0), static_cast<double>(y0)};
}

J0Y0 asymptotic(double x) {
  const Real xl = x;
  Real a = 1.0L;
  Real p = 1.0L;
  Real q = 0.0L;
  Real previous = 1.0L;
  Real xpow = 1.0L;
  for (int k = 1; k < 120; ++k) {
    a *= -Real(2 * k - 1) * Real(2 * k - 1) / (8.0L * Real(k));
    xpow *= xl;
    const Real term = a / xpow;
    // Stop at the smallest term of the divergent series.
    if (std::fabs(term) > previous) break;
    previous = std::fabs(term);
    if (k % 2 == 0) {
      p += ((k / 2) % 2 == 0 ? 1.0L : -1.0L) * term;
    } else {
      q += (((k - 1) / 2) % 2 == 0 ? 1.0L : -1.0L) * term;
    }
    if (previous < 1e-22L) break;
  }
  const Real chi = xl - kPiL / 4.0L;
  const Real amp = std::sqrt(2.0L / (kPiL * xl));
  const Real c = std::cos(chi);
  const Real s = std::sin(chi);
  return {static_cast<double>(amp * (p * c - q * s)),
          static_cast<double>(amp * (p * s + q * c))};
}

}  // namespace bessel

namespace {

bessel::J0Y0 evaluate(double x) {
  if (x <= bessel::kSeriesLimit) return bessel::series(x);
  if (x <= bessel::kAsymptoticLimit) return bessel::recurrence(x);
  return bessel::asymptotic(x);
}

void require_positive(double x, const char* who) {
  if (!(x > 0.0)) {
    throw Error(ErrorKind::domain,
                std::string(who) + ": argument must be positive, got " + std::to_string(x));
  }
}

}  // namespace

double bessel_j0(double x) {
  x = std::fabs(x);
  if (x == 0.0) return 1.0;
  return evaluate(x).j0;
}

double bessel_y0(double x) {
  require_positive(x, "bessel_y0");
  return evaluate(x).y0;
}

Complex hankel1_0(double x) {
  require_positive(x, "hankel1_0");
  const auto v = evaluate(x);
  return {v.j0, v.y0};
}

}  // namespace qlnn
