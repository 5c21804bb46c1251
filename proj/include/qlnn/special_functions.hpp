#pragma once

#include "qlnn/types.hpp"

namespace qlnn {

/// Order-zero Bessel functions of a positive real argument.
///
/// Three evaluation regimes, all in extended precision internally:
///   x <= kSeriesLimit       ascending (Maclaurin) series
///   x <= kAsymptoticLimit   Miller backward recurrence for J0, Neumann series for Y0
///   x >  kAsymptoticLimit   Hankel asymptotic expansion
namespace bessel {

inline constexpr double kSeriesLimit = 8.0;
inline constexpr double kAsymptoticLimit = 20.0;

/// J0 and Y0 sharing one evaluation.
struct J0Y0 {
  double j0;
  double y0;
};

// Regime-specific kernels, exposed for the continuity checks.
J0Y0 series(double x);
J0Y0 recurrence(double x);
J0Y0 asymptotic(double x);

}  // namespace bessel

/// J0(x) for x >= 0. Negative arguments use the even symmetry.
double bessel_j0(double x);

/// Y0(x); throws ErrorKind::domain for x <= 0.
double bessel_y0(double x);

/// H0^(1)(x) = J0(x) + i Y0(x); throws ErrorKind::domain for x <= 0.
Complex hankel1_0(double x);

}  // namespace qlnn
