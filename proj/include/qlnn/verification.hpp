#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qlnn/config.hpp"
#include "qlnn/kernel.hpp"
#include "qlnn/types.hpp"

namespace qlnn {

/// One named numerical check with its measured deviation.
struct CheckResult {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::string detail;
};

/// Candidate coefficients plus the far-interaction sums
/// S_A(p, q) = sum over (m, n) outside the 3x3 block around (p, q) of
/// A_mn H0(ks |R_pq - R_mn|), for p, q <= N.
struct SpectralState {
  CoeffGrid A;
  MatrixXc S_A;
};

SpectralState make_spectral_state(const CoeffGrid& A, const PhysicalConfig& cfg);

Complex z_transform_A(const SpectralState& st, Complex z, Complex zeta);
Complex z_transform_B1(const SpectralState& st, Complex z);
Complex z_transform_B2(const SpectralState& st, Complex zeta);

/// Truncated F++(z, zeta); the incident part is the closed form
/// -1 / ((1 - z_c z)(1 - z_s zeta)) unless include_incident is false.
Complex forcing_Fpp(const SpectralState& st, const PhysicalConfig& cfg, Complex z, Complex zeta,
                    bool include_incident = true);

/// z zeta K A++ - z L2(z) B1+ - zeta L2(zeta) B2+ + A00 H0(ks sqrt 2) - z zeta F++.
Complex functional_equation_residual(const SpectralState& st, const PhysicalConfig& cfg,
                                     Complex z, Complex zeta, bool include_incident = true);

Complex F_inc(const PhysicalConfig& cfg, const KernelConstants& kc, Complex zeta);
Complex F_A(const SpectralState& st, const KernelConstants& kc, Complex zeta);

/// Contour-integral solution for B2+ with S_A taken from the state.
Complex b2_plus(const SpectralState& st, const PhysicalConfig& cfg, Complex zeta, int Q = 1024);

/// |zeta B2(zeta) - B2(1/zeta)/zeta - [F(zeta) - F(1/zeta)]| with B2 from b2_plus.
double one_variable_wh_residual(const SpectralState& st, const PhysicalConfig& cfg, Complex zeta,
                                int Q = 1024);

/// Deviation of the entire function from its Liouville constant. Inside the
/// annulus it equals zeta (B2 - b2_plus)(zeta); outside, the same expression at
/// 1/zeta. Returns the maximum over the samples and their reflections.
double liouville_defect(const SpectralState& st, const PhysicalConfig& cfg,
                        const std::vector<Complex>& inside_samples, int Q = 1024);

struct AppendixCReport {
  double first = 0.0;   // zeta^{-n-2} / K
  double second = 0.0;  // zeta^{-n-1} / (K (z_s zeta - 1))
  double third = 0.0;   // zeta^{q-n-1} / K
  double max() const;
};

/// Relative deviations between trapezoid quadrature in zeta and the closed
/// residue forms at fixed z on the unit circle.
AppendixCReport appendix_c_check(Complex z, int n, int q, const PhysicalConfig& cfg,
                                 int Q = 2048);

struct CauchySplit {
  Complex plus;
  Complex minus;
};

/// Plus/minus parts of f at zeta using a circular contour of the given
/// radius: F+ = (1/2 pi i) \oint f(1/z) / (z (1 - zeta z)) dz,
/// F- = -(1/2 pi i) \oint f(z) / (z - zeta) dz.
/// Throws ErrorKind::singular_input when zeta or 1/zeta lies on the contour.
CauchySplit cauchy_split(const std::function<Complex(Complex)>& f, Complex zeta, int Q = 512,
                         double radius = 1.0);

// Suites used by the CLI. Random samples come from a seeded generator.
std::vector<CheckResult> verify_kernel(const PhysicalConfig& cfg, unsigned seed);
std::vector<CheckResult> verify_appendix_c(const PhysicalConfig& cfg, unsigned seed);
std::vector<CheckResult> verify_functional_eq(const PhysicalConfig& cfg, int N, unsigned seed);
std::vector<CheckResult> verify_energy(const PhysicalConfig& cfg, int N);

/// Unit-circle points with uniformly distributed angles.
std::vector<Complex> random_unit_circle(int count, unsigned seed, double radius = 1.0);

}  // namespace qlnn
