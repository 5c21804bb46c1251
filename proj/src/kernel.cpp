#include "qlnn/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "qlnn/special_functions.hpp"

namespace qlnn {

namespace {

void require_nonzero(Complex z, const char* who) {
  if (z == Complex(0.0, 0.0)) throw Error(ErrorKind::domain, std::string(who) + ": z = 0");
}

}  // namespace

Complex monopole_constant(const PhysicalConfig& cfg) {
  const double ka = cfg.k * cfg.a;
  switch (cfg.monopole) {
    case MonopoleChoice::hankel:
      return hankel1_0(ka);
    case MonopoleChoice::log_form:
      return 2.0 * kI / kPi * (std::log(ka / 2.0) + kEulerGamma) + 1.0;
    case MonopoleChoice::ratio:
      return hankel1_0(ka) / bessel_j0(ka);
  }
  throw Error(ErrorKind::invalid_input, "unknown monopole choice");
}

Complex quadratic_inside_root(Complex t1) {
  const Complex half = 0.5 * t1;
  const Complex s = std::sqrt(half - 1.0) * std::sqrt(half + 1.0);
  // The two roots multiply to one; take whichever is free of cancellation.
  const Complex w = -half - s;
  if (std::abs(w) >= 1.0) return 1.0 / w;
  return -half + s;
}

KernelConstants build_constants(const PhysicalConfig& cfg) {
  if (!(cfg.k * cfg.s > 0.0) || !(cfg.k * cfg.a > 0.0)) {
    throw Error(ErrorKind::invalid_input, "ks and ka must be positive");
  }
  return constants_from(monopole_constant(cfg), hankel1_0(cfg.k * cfg.s),
                        hankel1_0(cfg.k * cfg.s * std::sqrt(2.0)));
}

KernelConstants constants_from(Complex C, Complex h1, Complex h2) {
  KernelConstants kc;
  kc.C = C;
  kc.h1 = h1;
  kc.h2 = h2;
  kc.a1 = kc.C / kc.h1;
  kc.b1 = kc.h1 / kc.h2;
  if (std::abs(kc.b1 - 2.0) < 1e-14 || std::abs(kc.b1 + 2.0) < 1e-14) {
    throw Error(ErrorKind::degenerate, "b1 = +-2: branch constants undefined");
  }
  kc.c1 = kc.b1 * (kc.a1 - 2.0) / (kc.b1 - 2.0);
  kc.d1 = kc.b1 * (kc.a1 + 2.0) / (kc.b1 + 2.0);
  kc.b2 = quadratic_inside_root(kc.b1);
  kc.c2 = quadratic_inside_root(kc.c1);
  kc.d2 = quadratic_inside_root(kc.d1);
  return kc;
}

Complex eval_L1(Complex z, const KernelConstants& kc) {
  require_nonzero(z, "eval_L1");
  return kc.C + (z + 1.0 / z) * kc.h1;
}

Complex eval_L2(Complex z, const KernelConstants& kc) {
  require_nonzero(z, "eval_L2");
  return kc.h1 + (z + 1.0 / z) * kc.h2;
}

Complex eval_K(Complex z, Complex zeta, const KernelConstants& kc) {
  require_nonzero(zeta, "eval_K");
  return eval_L1(z, kc) + (zeta + 1.0 / zeta) * eval_L2(z, kc);
}

Complex manifold_M(Complex z, const KernelConstants& kc) {
  require_nonzero(z, "manifold_M");
  // Simple zero at b2 and 1/b2, where the quotient L1/L2 blows up.
  const Complex db = z - kc.b2;
  if (std::abs(db) < kc.eps_b) {
    const Complex b2sq = kc.b2 * kc.b2;
    return -(b2sq - 1.0) / ((kc.a1 - kc.b1) * kc.b1 * b2sq) * db;
  }
  const Complex dinv = z - 1.0 / kc.b2;
  if (std::abs(dinv) < kc.eps_b) {
    return -(1.0 - kc.b2 * kc.b2) / ((kc.a1 - kc.b1) * kc.b1) * dinv;
  }
  return quadratic_inside_root(eval_L1(z, kc) / eval_L2(z, kc));
}

Complex manifold_M_over_L2(Complex z, const KernelConstants& kc) {
  const Complex m = manifold_M(z, kc);
  if (std::abs(z - kc.b2) < kc.eps_b || std::abs(z - 1.0 / kc.b2) < kc.eps_b) {
    // From M + 1/M = -L1/L2: M/L2 = -(1 + M^2)/L1, regular where L2 vanishes.
    return -(1.0 + m * m) / eval_L1(z, kc);
  }
  return m / eval_L2(z, kc);
}

Complex manifold_dM(Complex zeta, const KernelConstants& kc) {
  // At the branch points M(zeta)^2 - 1 is only resolved to sqrt(eps).
  for (Complex bp : {kc.c2, kc.d2, 1.0 / kc.c2, 1.0 / kc.d2}) {
    if (std::abs(zeta - bp) < 1e-12 * std::max(1.0, std::abs(bp))) {
      throw Error(ErrorKind::singular_input, "manifold_dM: zeta at a branch point");
    }
  }
  const Complex m = manifold_M(zeta, kc);
  const Complex m2 = m * m;
  if (std::abs(m2 - 1.0) < 1e-13) {
    throw Error(ErrorKind::singular_input, "manifold_dM: M(zeta)^2 = 1 (branch point)");
  }
  return -m2 * eval_L2(m, kc) * (zeta * zeta - 1.0) /
         (zeta * zeta * eval_L2(zeta, kc) * (m2 - 1.0));
}

}  // namespace qlnn
