#pragma once

#include "qlnn/config.hpp"
#include "qlnn/types.hpp"

namespace qlnn {

struct KernelConstants {
  Complex C;   // monopole constant
  Complex h1;  // H0(ks)
  Complex h2;  // H0(ks sqrt 2)
  Complex a1, b1, c1, d1;
  Complex b2, c2, d2;  // inside roots of z^2 + t z + 1 for t = b1, c1, d1
  double eps_b = 1e-5;
};

Complex monopole_constant(const PhysicalConfig& cfg);

/// Throws ErrorKind::degenerate when b1 = +-2.
KernelConstants build_constants(const PhysicalConfig& cfg);
/// Same from raw C = monopole, h1 = H0(ks), h2 = H0(ks sqrt 2).
KernelConstants constants_from(Complex C, Complex h1, Complex h2);

/// Root of z^2 + t1 z + 1 given by -t1/2 + sqrt(t1/2 - 1) sqrt(t1/2 + 1)
/// with principal square roots. Computed without cancellation.
Complex quadratic_inside_root(Complex t1);

Complex eval_L1(Complex z, const KernelConstants& kc);
Complex eval_L2(Complex z, const KernelConstants& kc);
Complex eval_K(Complex z, Complex zeta, const KernelConstants& kc);

/// Inside root in zeta of K(z, zeta) = 0.
Complex manifold_M(Complex z, const KernelConstants& kc);
/// M(z) / L2(z), finite at the removable singularities b2 and 1/b2.
Complex manifold_M_over_L2(Complex z, const KernelConstants& kc);
/// dM/dzeta; throws ErrorKind::singular_input at the branch points where M^2 = 1.
Complex manifold_dM(Complex zeta, const KernelConstants& kc);

}  // namespace qlnn
