#include "qlnn/verification.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qlnn/baselines.hpp"
#include "qlnn/contour.hpp"
#include "qlnn/field.hpp"
#include "qlnn/solver.hpp"
#include "qlnn/special_functions.hpp"

namespace qlnn {

SpectralState make_spectral_state(const CoeffGrid& A, const PhysicalConfig& cfg) {
  const int N = A.N;
  MatrixXc H(N + 1, N + 1);
  for (int dn = 0; dn <= N; ++dn) {
    for (int dm = 0; dm <= N; ++dm) {
      H(dm, dn) = (dm <= 1 && dn <= 1)
                      ? Complex(0.0)
                      : hankel1_0(cfg.k * cfg.s * std::sqrt(double(dm) * dm + double(dn) * dn));
    }
  }
  SpectralState st;
  st.A = A;
  st.S_A = MatrixXc::Zero(N + 1, N + 1);
  for (int q = 0; q <= N; ++q) {
    for (int p = 0; p <= N; ++p) {
      Complex sum = 0.0;
      for (int n = 0; n <= N; ++n) {
        for (int m = 0; m <= N; ++m) sum += A(m, n) * H(std::abs(p - m), std::abs(q - n));
      }
      st.S_A(p, q) = sum;
    }
  }
  return st;
}

namespace {

VectorXc power_vector(Complex x, int N) {
  VectorXc v(N + 1);
  v(0) = 1.0;
  for (int i = 1; i <= N; ++i) v(i) = v(i - 1) * x;
  return v;
}

// (sum_p sum_q X(p, q) z^p zeta^q)
Complex double_series(const MatrixXc& X, Complex z, Complex zeta) {
  const int N = static_cast<int>(X.rows()) - 1;
  return (power_vector(z, N).transpose() * X * power_vector(zeta, N))(0, 0);
}

double relative(Complex a, Complex b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

}  // namespace

Complex z_transform_A(const SpectralState& st, Complex z, Complex zeta) {
  return double_series(st.A.values, z, zeta);
}

Complex z_transform_B1(const SpectralState& st, Complex z) {
  return (st.A.values.col(0).transpose() * power_vector(z, st.A.N))(0, 0);
}

Complex z_transform_B2(const SpectralState& st, Complex zeta) {
  return (st.A.values.row(0) * power_vector(zeta, st.A.N))(0, 0);
}

Complex forcing_Fpp(const SpectralState& st, const PhysicalConfig& cfg, Complex z, Complex zeta,
                    bool include_incident) {
  Complex f = -double_series(st.S_A, z, zeta);
  if (include_incident) f -= 1.0 / ((1.0 - cfg.z_c() * z) * (1.0 - cfg.z_s() * zeta));
  return f;
}

Complex functional_equation_residual(const SpectralState& st, const PhysicalConfig& cfg,
                                     Complex z, Complex zeta, bool include_incident) {
  const KernelConstants kc = build_constants(cfg);
  return z * zeta * eval_K(z, zeta, kc) * z_transform_A(st, z, zeta) -
         z * eval_L2(z, kc) * z_transform_B1(st, z) -
         zeta * eval_L2(zeta, kc) * z_transform_B2(st, zeta) + st.A(0, 0) * kc.h2 -
         z * zeta * forcing_Fpp(st, cfg, z, zeta, include_incident);
}

Complex F_inc(const PhysicalConfig& cfg, const KernelConstants& kc, Complex zeta) {
  const Complex M = manifold_M(zeta, kc);
  return manifold_M_over_L2(zeta, kc) * zeta / ((1.0 - cfg.z_c() * M) * (1.0 - cfg.z_s() * zeta));
}

Complex F_A(const SpectralState& st, const KernelConstants& kc, Complex zeta) {
  const int N = st.A.N;
  const Complex M = manifold_M(zeta, kc);
  const VectorXc Mp = power_vector(M, N);
  const VectorXc zp = power_vector(zeta, N);
  return (Mp.transpose() * st.S_A * zp)(0, 0) * manifold_M_over_L2(zeta, kc) * zeta;
}

Complex b2_plus(const SpectralState& st, const PhysicalConfig& cfg, Complex zeta, int Q) {
  require_supported_incidence(cfg);
  const KernelConstants kc = build_constants(cfg);
  const IncidentPoles poles = classify_incident_poles(cfg);
  const int N = st.A.N;
  const Complex zs = cfg.z_s();
  const Complex zc = cfg.z_c();
  // The reflected pole 1/zeta only needs removal when it approaches the
  // contour; deep inside, subtracting g(1/zeta) would cancel |zeta|^{-N} terms.
  const bool remove_reflection = std::abs(zeta) > 0.95;
  const Complex zr = remove_reflection ? 1.0 / zeta : Complex(0.0);

  std::vector<double> hazards = {std::arg(zs), -std::arg(zs)};
  if (remove_reflection) hazards.push_back(std::arg(zr));
  const ContourSpec spec = ContourSpec::make(Q, choose_rotation(Q, hazards));

  auto G = [&](Complex x) {
    return manifold_M_over_L2(x, kc) / (1.0 - zc * manifold_M(x, kc));
  };
  const Complex R1 = G(zs);
  const Complex R2 = G(zs) / (zs * zs);
  auto h_smooth = [&](Complex x) {
    return G(x) * (1.0 / (x - zs) - x / (1.0 - zs * x)) - R1 / (x - zs) - R2 / (x - 1.0 / zs);
  };
  // g_pq(x) = M^{p+1} (x^{-q-1} - x^{q+1}) / L2 summed against S_A.
  auto g_sum = [&](Complex x) {
    const Complex M = manifold_M(x, kc);
    const VectorXc Mp = power_vector(M, N);
    VectorXc d(N + 1);
    Complex xp = x, xi = 1.0 / x;
    for (int q = 0; q <= N; ++q) {
      d(q) = xi - xp;
      xp *= x;
      xi /= x;
    }
    return (Mp.transpose() * st.S_A * d)(0, 0) * manifold_M_over_L2(x, kc);
  };

  const Complex h_ref = remove_reflection ? h_smooth(zr) : Complex(0.0);
  const Complex g_ref = remove_reflection ? g_sum(zr) : Complex(0.0);
  VectorXc f(Q);
  for (int j = 0; j < Q; ++j) {
    const Complex z = spec.nodes(j);
    f(j) = (h_smooth(z) - h_ref + g_sum(z) - g_ref) / (1.0 - zeta * z);
  }
  Complex out = integrate(f, spec);
  if (poles.z_s.side == PoleSide::inside) {
    out += R1 / (1.0 - zeta * zs);
  } else {
    out += R2 / (1.0 - zeta / zs);
  }
  return out;
}

double one_variable_wh_residual(const SpectralState& st, const PhysicalConfig& cfg, Complex zeta,
                                int Q) {
  const KernelConstants kc = build_constants(cfg);
  const Complex zr = 1.0 / zeta;
  const Complex lhs = zeta * b2_plus(st, cfg, zeta, Q) - zr * b2_plus(st, cfg, zr, Q);
  const Complex rhs = F_inc(cfg, kc, zeta) - F_inc(cfg, kc, zr) + F_A(st, kc, zeta) -
                      F_A(st, kc, zr);
  return std::abs(lhs - rhs);
}

double liouville_defect(const SpectralState& st, const PhysicalConfig& cfg,
                        const std::vector<Complex>& inside_samples, int Q) {
  double worst = 0.0;
  for (Complex zeta : inside_samples) {
    const double d = std::abs(zeta * (z_transform_B2(st, zeta) - b2_plus(st, cfg, zeta, Q)));
    worst = std::max(worst, d);
  }
  return worst;
}

double AppendixCReport::max() const { return std::max({first, second, third}); }

AppendixCReport appendix_c_check(Complex z, int n, int q, const PhysicalConfig& cfg, int Q) {
  if (n < 0 || q < 0) throw Error(ErrorKind::invalid_input, "indices must be non-negative");
  const KernelConstants kc = build_constants(cfg);
  const IncidentPoles poles = classify_incident_poles(cfg);
  const Complex M = manifold_M(z, kc);
  const Complex L2 = eval_L2(z, kc);
  const Complex zs = cfg.z_s();
  const ContourSpec spec = ContourSpec::make(Q, choose_rotation(Q, {-std::arg(zs)}));

  // The first and third integrands have poles only at 0, M and 1/M, and
  // their values scale like a power of |M|, which drowns in rounding on the
  // unit circle when |M| is small. Integrate on |zeta| = |M|^{-1/2} when there
  // is a pole at the origin and on |zeta| = |M|^{1/2} otherwise.
  const double root = std::sqrt(std::abs(M));
  auto on_circle = [&](int e) {
    const double r = e < 0 ? 1.0 / root : root;
    VectorXc f(Q);
    for (int j = 0; j < Q; ++j) {
      const Complex ze = r * spec.nodes(j);
      f(j) = r * std::pow(ze, e) / eval_K(z, ze, kc);
    }
    return integrate(f, spec);
  };
  AppendixCReport rep;
  rep.first = relative(on_circle(-n - 2), std::pow(M, n + 2) / (L2 * (M * M - 1.0)));
  rep.third = relative(on_circle(q - n - 1),
                       std::pow(M, std::abs(n - q) + 1) / (L2 * (M * M - 1.0)));

  // The pole at 1/z_s sits on the contour; remove it and restore its residue
  // only when the incidence rule puts it inside.
  const Complex p = 1.0 / zs;
  const Complex residue = std::pow(p, -n - 1) / (eval_K(z, p, kc) * zs);
  auto f2 = [&](Complex ze) { return std::pow(ze, -n - 1) / (eval_K(z, ze, kc) * (zs * ze - 1.0)); };
  const PoleSide side = poles.inv_z_s.side;
  const Complex numeric = integrate_with_pole_removal(f2, {{p, residue, side}}, spec, false);
  Complex closed = -M / (L2 * (M - zs)) *
                   (std::pow(M, n + 1) / (M * M - 1.0) - std::pow(zs, n + 1) / (zs * M - 1.0));
  if (side == PoleSide::inside) closed += residue;
  rep.second = relative(numeric, closed);
  return rep;
}

CauchySplit cauchy_split(const std::function<Complex(Complex)>& f, Complex zeta, int Q,
                         double radius) {
  const double h = 2.0 * kPi / Q;
  const double gap = std::min(std::abs(std::abs(zeta) - radius),
                              std::abs(std::abs(zeta) - 1.0 / radius));
  if (gap < 4.0 * h * radius) {
    throw Error(ErrorKind::singular_input, "cauchy_split: query point on the contour");
  }
  const ContourSpec spec = ContourSpec::make(Q);
  CauchySplit out{0.0, 0.0};
  for (int j = 0; j < Q; ++j) {
    const Complex z = radius * spec.nodes(j);
    const Complex w = radius * spec.weights(j);
    out.plus += w * f(1.0 / z) / (z * (1.0 - zeta * z));
    out.minus -= w * f(z) / (z - zeta);
  }
  return out;
}

std::vector<Complex> random_unit_circle(int count, unsigned seed, double radius) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::vector<Complex> out(count);
  for (auto& z : out) z = std::polar(radius, angle(gen));
  return out;
}

namespace {

CheckResult make_check(std::string name, double value, double threshold, std::string detail = {}) {
  CheckResult c;
  c.name = std::move(name);
  c.value = value;
  c.threshold = threshold;
  c.passed = value < threshold;
  c.detail = std::move(detail);
  return c;
}

}  // namespace

std::vector<CheckResult> verify_kernel(const PhysicalConfig& cfg, unsigned seed) {
  const KernelConstants kc = build_constants(cfg);
  const auto zs = random_unit_circle(256, seed);
  double root = 0.0, l2max = 0.0, invol = 0.0, invol_in = 0.0, recip = 0.0, mod = 0.0;
  for (Complex z : zs) {
    const Complex M = manifold_M(z, kc);
    root = std::max(root, std::abs(eval_K(z, M, kc)));
    root = std::max(root, std::abs(eval_K(z, 1.0 / M, kc)));
    l2max = std::max(l2max, std::abs(eval_L2(z, kc)));
    invol = std::max(invol, std::abs(manifold_M(M, kc) - z));
    recip = std::max(recip, std::abs(manifold_M(1.0 / z, kc) - M));
    mod = std::max(mod, std::abs(M));
    const Complex zi = 0.9 * z;
    invol_in = std::max(invol_in, std::abs(manifold_M(manifold_M(zi, kc), kc) - zi));
  }
  std::vector<CheckResult> out;
  out.push_back(make_check("kernel_root_on_manifold", root / l2max, 1e-12,
                           "max |K(z, M(z))|, |K(z, 1/M(z))| over |L2|"));
  out.push_back(make_check("manifold_involution_unit_circle", invol, 1e-10,
                           "max |M(M(z)) - z| for |z| = 1"));
  out.push_back(make_check("manifold_involution_radius_0.9", invol_in, 1e-10,
                           "max |M(M(z)) - z| for |z| = 0.9"));
  out.push_back(make_check("manifold_reciprocal_symmetry", recip, 1e-10, "max |M(1/z) - M(z)|"));
  out.push_back(make_check("manifold_inside_disk", std::max(mod - 1.0, 0.0), 1e-12,
                           "max(|M| - 1, 0)"));
  return out;
}

std::vector<CheckResult> verify_appendix_c(const PhysicalConfig& cfg, unsigned seed) {
  const auto zs = random_unit_circle(32, seed);
  double worst = 0.0;
  for (Complex z : zs) {
    for (int n : {0, 1, 3, 7}) {
      for (int q : {0, 1, 3, 7}) worst = std::max(worst, appendix_c_check(z, n, q, cfg).max());
    }
  }
  return {make_check("appendix_c_residue_forms", worst, 1e-9,
                     "max relative deviation, Q = 2048, n, q in {0, 1, 3, 7}")};
}

std::vector<CheckResult> verify_functional_eq(const PhysicalConfig& cfg, int N, unsigned seed) {
  const CoeffGrid A = direct_foldy_solve(cfg, N);
  const SpectralState st = make_spectral_state(A, cfg);
  const auto z1 = random_unit_circle(64, seed);
  const auto z2 = random_unit_circle(64, seed + 1);
  const Complex wc = 1.0 / cfg.z_c(), ws = 1.0 / cfg.z_s();
  double on_circle = 0.0, inside = 0.0;
  for (int i = 0; i < 64; ++i) {
    if (std::abs(z1[i] - wc) > 1e-3 && std::abs(z2[i] - ws) > 1e-3) {
      on_circle = std::max(on_circle, std::abs(functional_equation_residual(st, cfg, z1[i], z2[i])));
    }
    inside = std::max(inside,
                      std::abs(functional_equation_residual(st, cfg, 0.5 * z1[i], 0.5 * z2[i])));
  }
  return {make_check("functional_equation_unit_circle", on_circle, 1e-5,
                     "direct-solve coefficients, N = " + std::to_string(N)),
          make_check("functional_equation_radius_0.5", inside, 1e-5,
                     "direct-solve coefficients, N = " + std::to_string(N))};
}

std::vector<CheckResult> verify_energy(const PhysicalConfig& cfg, int N) {
  const CoeffGrid A = direct_foldy_solve(cfg, N);
  const double defect = energy_defect(A, cfg).cwiseAbs().maxCoeff();
  const double ka = cfg.k * cfg.a;
  double threshold = 1e-10;
  std::string detail = "max | |g|^2 + Re g | over scatterers";
  if (cfg.monopole != MonopoleChoice::log_form) {
    const double r = ka / std::log(ka);
    threshold = 10.0 * r * r;
    detail += ", bound 10 (ka / ln ka)^2";
  }
  return {make_check(std::string("energy_defect_") + to_string(cfg.monopole), defect, threshold,
                     detail)};
}

}  // namespace qlnn
