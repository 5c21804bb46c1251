#include "qlnn/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "qlnn/contour.hpp"
#include "qlnn/special_functions.hpp"

namespace qlnn {

namespace {

// Quadrature data for a zeta contour and a z contour evaluated together. The
// reference points are the reflections 1/zeta_j, where the inner integrands
// have their removable pole.
struct PairNodes {
  ContourSpec zeta, z;
  VectorXc M_zeta, MoL2_zeta;
  VectorXc M_z, MoL2_z;
  VectorXc M_ref, MoL2_ref;
  MatrixXc C;  // C(j, i) = w_i / (1 - zeta_j z_i)
  VectorXc c;  // row sums of C
};

PairNodes make_nodes(const KernelConstants& kc, int Q, double rot_zeta, double rot_z) {
  PairNodes pn;
  pn.zeta = ContourSpec::make(Q, rot_zeta);
  pn.z = ContourSpec::make(Q, rot_z);
  pn.M_zeta.resize(Q);
  pn.MoL2_zeta.resize(Q);
  pn.M_z.resize(Q);
  pn.MoL2_z.resize(Q);
  pn.M_ref.resize(Q);
  pn.MoL2_ref.resize(Q);
  for (int j = 0; j < Q; ++j) {
    const Complex ze = pn.zeta.nodes(j);
    const Complex zz = pn.z.nodes(j);
    const Complex zr = std::conj(ze);
    pn.M_zeta(j) = manifold_M(ze, kc);
    pn.MoL2_zeta(j) = manifold_M_over_L2(ze, kc);
    pn.M_z(j) = manifold_M(zz, kc);
    pn.MoL2_z(j) = manifold_M_over_L2(zz, kc);
    pn.M_ref(j) = manifold_M(zr, kc);
    pn.MoL2_ref(j) = manifold_M_over_L2(zr, kc);
  }
  pn.C.resize(Q, Q);
  for (int i = 0; i < Q; ++i) {
    for (int j = 0; j < Q; ++j) {
      pn.C(j, i) = pn.z.weights(i) / (1.0 - pn.zeta.nodes(j) * pn.z.nodes(i));
    }
  }
  pn.c = pn.C.rowwise().sum();
  return pn;
}

// Row d holds v^d, d = 0..dmax.
MatrixXc powers(const VectorXc& v, int dmax) {
  MatrixXc out(dmax + 1, v.size());
  out.row(0).setOnes();
  for (int d = 1; d <= dmax; ++d) out.row(d) = out.row(d - 1).cwiseProduct(v.transpose());
  return out;
}

// Unit-circle node raised to an integer power, from its angle.
Complex node_pow(const ContourSpec& spec, int j, int e) {
  return std::polar(1.0, e * (2.0 * kPi * j / spec.Q + spec.rotation));
}

Complex g_out(int m, int n, Complex zeta, Complex M) {
  return std::pow(M, m + 2) / (M * M - 1.0) * (std::pow(zeta, -n - 1) - std::pow(zeta, n + 1));
}

double max_abs(const MatrixXc& x) { return x.size() ? x.cwiseAbs().maxCoeff() : 0.0; }

Complex hankel_distance(const PhysicalConfig& cfg, int dp, int dq) {
  return hankel1_0(cfg.k * cfg.s * std::sqrt(double(dp) * dp + double(dq) * dq));
}

// I1(p, q, zeta_j) for every zeta node and every (p, q) with p, q <= P;
// column index q (P+1) + p.
MatrixXc inner_table(const PairNodes& pn, int P) {
  const int Q = pn.z.Q;
  const int n_pq = (P + 1) * (P + 1);
  const MatrixXc Mz = powers(pn.M_z, P);
  const MatrixXc Mr = powers(pn.M_ref, P);
  MatrixXc Gz(Q, n_pq), Gr(Q, n_pq);
  for (int q = 0; q <= P; ++q) {
    for (int j = 0; j < Q; ++j) {
      const Complex zq = node_pow(pn.z, j, q + 1);
      const Complex dz = std::conj(zq) - zq;  // z^{-q-1} - z^{q+1}
      // At z = 1/zeta the same combination is conj of the zeta-node version.
      const Complex rq = node_pow(pn.zeta, j, q + 1);
      const Complex dr = rq - std::conj(rq);
      for (int p = 0; p <= P; ++p) {
        const int col = q * (P + 1) + p;
        Gz(j, col) = Mz(p, j) * pn.MoL2_z(j) * dz;
        Gr(j, col) = Mr(p, j) * pn.MoL2_ref(j) * dr;
      }
    }
  }
  MatrixXc I1 = pn.C * Gz;
  I1 -= pn.c.asDiagonal() * Gr;
  return I1;
}

// tab(d, e + 1) = (1/2 pi i) \oint M^d zeta^e / (L2 (M^2 - 1)) dzeta, d >= 1, e >= -1.
MatrixXc zeta_table(const PairNodes& pn, int dmax, int emax) {
  const int Q = pn.zeta.Q;
  VectorXc base(Q);
  for (int j = 0; j < Q; ++j) {
    const Complex M = pn.M_zeta(j);
    base(j) = pn.zeta.weights(j) * pn.MoL2_zeta(j) / (M * M - 1.0);
  }
  const MatrixXc Mp = powers(pn.M_zeta, std::max(dmax - 1, 0));
  MatrixXc Z(Q, emax + 2);
  for (int j = 0; j < Q; ++j) {
    for (int e = -1; e <= emax; ++e) Z(j, e + 1) = node_pow(pn.zeta, j, e);
  }
  MatrixXc tab = MatrixXc::Zero(dmax + 1, emax + 2);
  tab.bottomRows(dmax) = Mp * base.asDiagonal() * Z;
  return tab;
}

Complex asymptotic_from_table(const MatrixXc& tab, int m, int n, int p, int q) {
  const int d1 = std::abs(m - p) + 1, d2 = m + p + 3;
  const int e1 = n + q + 1, e2 = std::abs(n - q) - 1;
  return tab(d1, e1 + 1) - tab(d1, e2 + 1) + tab(d2, e2 + 1) - tab(d2, e1 + 1);
}

Complex second_term_from_table(const MatrixXc& tab, int m, int n, int p, int q) {
  const int d1 = std::abs(m - p) + 1;
  return tab(d1, n + q + 2) - tab(d1, std::abs(n - q));
}

// Coupling nodes: zeta at half offset so 1/zeta never meets a z node.
PairNodes coupling_nodes(const KernelConstants& kc, int Q) {
  return make_nodes(kc, Q, kPi / Q, 0.0);
}

MatrixXc coupling_at(const PhysicalConfig& cfg, const KernelConstants& kc, int N, int P, int T,
                     int Q) {
  const PairNodes pn = coupling_nodes(kc, Q);
  const int n_mn = (N + 1) * (N + 1);
  const int n_pq = (P + 1) * (P + 1);

  const MatrixXc I1 = inner_table(pn, P);

  const MatrixXc Mze = powers(pn.M_zeta, N + 2);
  MatrixXc Go(n_mn, Q);
  for (int n = 0; n <= N; ++n) {
    for (int j = 0; j < Q; ++j) {
      const Complex zn = node_pow(pn.zeta, j, n + 1);
      const Complex dz = std::conj(zn) - zn;
      const Complex M = pn.M_zeta(j);
      const Complex common = pn.zeta.weights(j) * dz / (M * M - 1.0);
      for (int m = 0; m <= N; ++m) Go(n * (N + 1) + m, j) = Mze(m + 2, j) * common;
    }
  }
  MatrixXc M1 = Go * I1;

  const MatrixXc tab = zeta_table(pn, N + P + 3, N + P + 1);
  for (int q = 0; q <= P; ++q) {
    for (int p = 0; p <= P; ++p) {
      const int b = q * (P + 1) + p;
      for (int n = 0; n <= N; ++n) {
        for (int m = 0; m <= N; ++m) {
          const int a = n * (N + 1) + m;
          if (std::max({m, n, p, q}) > T) {
            M1(a, b) = asymptotic_from_table(tab, m, n, p, q);
          } else {
            M1(a, b) += second_term_from_table(tab, m, n, p, q);
          }
        }
      }
    }
  }

  MatrixXc H(P + 1, P + 1);
  for (int dq = 0; dq <= P; ++dq) {
    for (int dp = 0; dp <= P; ++dp) {
      H(dp, dq) = (dp <= 1 && dq <= 1) ? Complex(0.0) : hankel_distance(cfg, dp, dq);
    }
  }
  MatrixXc M2(n_pq, n_mn);
  for (int nb = 0; nb <= N; ++nb) {
    for (int mb = 0; mb <= N; ++mb) {
      const int col = nb * (N + 1) + mb;
      for (int q = 0; q <= P; ++q) {
        for (int p = 0; p <= P; ++p) {
          M2(q * (P + 1) + p, col) = H(std::abs(p - mb), std::abs(q - nb));
        }
      }
    }
  }
  return M1 * M2;
}

// Rotations for the forcing integrals: the z contour must stay clear of
// z_s, 1/z_s, 1/z_c and the reflected zeta nodes; the zeta contour clear of
// the reflected z_s pole.
std::pair<double, double> forcing_rotations(const PhysicalConfig& cfg, int Q) {
  const double h = 2.0 * kPi / Q;
  const double sigma = cfg.k * cfg.s * std::sin(cfg.theta_inc);
  const double gam = cfg.k * cfg.s * std::cos(cfg.theta_inc);
  constexpr int kTrials = 256;
  double best_score = -1.0, best_zeta = 0.5 * h;
  for (int t = 0; t < kTrials; ++t) {
    const double rz = h * t / kTrials;
    const double rzz = 0.5 * h - rz;
    const double score = std::min({lattice_distance(sigma - rz, h),
                                   lattice_distance(-sigma - rz, h),
                                   lattice_distance(sigma - rzz, h),
                                   lattice_distance(-sigma - rzz, h),
                                   lattice_distance(gam - rzz, h)});
    if (score > best_score + 1e-15) {
      best_score = score;
      best_zeta = rz;
    }
  }
  return {best_zeta, 0.5 * h - best_zeta};
}

// A_inc(m, n) for all m, n <= N at fixed Q, vectorized as n (N+1) + m.
VectorXc forcing_at(const PhysicalConfig& cfg, const KernelConstants& kc, int N, int Q) {
  const IncidentPoles poles = classify_incident_poles(cfg);
  const auto [rot_zeta, rot_z] = forcing_rotations(cfg, Q);
  const PairNodes pn = make_nodes(kc, Q, rot_zeta, rot_z);
  const Complex zs = cfg.z_s();
  const Complex zc = cfg.z_c();

  auto G = [&](Complex x) {
    return manifold_M_over_L2(x, kc) / (1.0 - zc * manifold_M(x, kc));
  };
  const Complex R1 = G(zs);            // residue at z_s
  const Complex R2 = G(zs) / (zs * zs);  // residue at 1/z_s, using G(1/z) = G(z)
  auto h_smooth = [&](Complex x, Complex M, Complex MoL2) {
    const Complex g = MoL2 / (1.0 - zc * M);
    return g * (1.0 / (x - zs) - x / (1.0 - zs * x)) - R1 / (x - zs) - R2 / (x - 1.0 / zs);
  };

  VectorXc hz(Q), hr(Q);
  for (int j = 0; j < Q; ++j) {
    hz(j) = h_smooth(pn.z.nodes(j), pn.M_z(j), pn.MoL2_z(j));
    hr(j) = h_smooth(std::conj(pn.zeta.nodes(j)), pn.M_ref(j), pn.MoL2_ref(j));
  }
  const VectorXc J = pn.C * hz - pn.c.cwiseProduct(hr);

  // Residue restored for whichever of z_s, 1/z_s lies inside; its reflection
  // becomes an outside pole of the zeta integrand.
  const bool zs_inside = poles.z_s.side == PoleSide::inside;
  const Complex w_in = zs_inside ? zs : 1.0 / zs;
  const Complex R_in = zs_inside ? R1 : R2;
  const Complex zeta_pole = 1.0 / w_in;
  const Complex M_pole = manifold_M(zeta_pole, kc);

  const Complex wc = 1.0 / zc;
  const Complex M_wc = manifold_M(wc, kc);
  const Complex MoL2_wc = manifold_M_over_L2(wc, kc);
  const bool wc_inside = poles.inv_z_c.side == PoleSide::inside;

  const MatrixXc Mze = powers(pn.M_zeta, N + 2);
  const MatrixXc Mz = powers(pn.M_z, N + 1);
  VectorXc zs_pow(N + 2);
  zs_pow(0) = 1.0;
  for (int e = 1; e <= N + 1; ++e) zs_pow(e) = zs_pow(e - 1) * zs;

  auto divided = [&](Complex M, const Complex* Mpow, int n) {
    // (M^{n+1} - z_s^{n+1}) / (M - z_s)
    if (std::abs(M - zs) < 1e-3) {
      Complex sum = 0.0, mp = 1.0;
      for (int j = 0; j <= n; ++j) {
        sum += mp * zs_pow(n - j);
        mp *= M;
      }
      return sum;
    }
    const Complex Mn1 = Mpow ? Mpow[n + 1] : std::pow(M, n + 1);
    return (Mn1 - zs_pow(n + 1)) / (M - zs);
  };

  VectorXc out((N + 1) * (N + 1));
  std::vector<Complex> mp(N + 2);
  for (int n = 0; n <= N; ++n) {
    for (int m = 0; m <= N; ++m) {
      const Complex go_pole = g_out(m, n, zeta_pole, M_pole);
      Complex part1 = 0.0;
      for (int j = 0; j < Q; ++j) {
        const Complex ze = pn.zeta.nodes(j);
        const Complex M = pn.M_zeta(j);
        const Complex zn = node_pow(pn.zeta, j, n + 1);
        const Complex go = Mze(m + 2, j) / (M * M - 1.0) * (std::conj(zn) - zn);
        part1 += pn.zeta.weights(j) *
                 (go * J(j) + (go - go_pole) * R_in / (1.0 - ze * w_in));
      }

      auto f = [&](Complex M, Complex MoL2, const Complex* Mpow, Complex zinv_m1) {
        return MoL2 * zinv_m1 * divided(M, Mpow, n) / (1.0 - zs * M);
      };
      const Complex f_wc = f(M_wc, MoL2_wc, nullptr, std::pow(wc, -m - 1));
      Complex part2 = 0.0;
      for (int j = 0; j < Q; ++j) {
        const Complex z = pn.z.nodes(j);
        for (int e = 0; e <= N + 1; ++e) mp[e] = Mz(e, j);
        const Complex fz = f(pn.M_z(j), pn.MoL2_z(j), mp.data(), node_pow(pn.z, j, -m - 1));
        part2 += pn.z.weights(j) * (fz - f_wc) / (1.0 - zc * z);
      }
      if (wc_inside) part2 += -f_wc / zc;
      out(n * (N + 1) + m) = part1 + part2;
    }
  }
  return out;
}

void check_indices(std::initializer_list<int> idx) {
  for (int v : idx) {
    if (v < 0) throw Error(ErrorKind::invalid_input, "indices must be non-negative");
  }
}

template <class T, class Eval>
T gated(const TruncationSpec& trunc, Eval eval, int* Q_used = nullptr) {
  if (!trunc.adaptive) {
    if (Q_used) *Q_used = trunc.Q;
    return eval(trunc.Q);
  }
  return converge_doubling<T>(eval, [](const T& x) { return max_abs(x); }, trunc.Q,
                              trunc.Q_max, trunc.quad_tol, Q_used);
}

MatrixXc scalar(Complex v) {
  MatrixXc out(1, 1);
  out(0, 0) = v;
  return out;
}

}  // namespace

void require_supported_incidence(const PhysicalConfig& cfg) {
  classify_incident_poles(cfg);
  if (!(std::cos(cfg.theta_inc) < 0.0 && std::sin(cfg.theta_inc) < 0.0)) {
    throw Error(ErrorKind::invalid_input,
                "QLNN forcing requires cos(theta) < 0 and sin(theta) < 0 "
                "(wave entering through the lattice corner)");
  }
}

bool neighbor_set_contains(int p, int q, int m, int n) {
  return std::abs(p - m) <= 1 && std::abs(q - n) <= 1;
}

Complex compute_M2(int p, int q, int mbar, int nbar, const PhysicalConfig& cfg) {
  check_indices({p, q, mbar, nbar});
  if (neighbor_set_contains(p, q, mbar, nbar)) return 0.0;
  return hankel_distance(cfg, p - mbar, q - nbar);
}

Complex inner_integral_I1(int p, int q, Complex zeta, const PhysicalConfig& cfg,
                          const TruncationSpec& trunc) {
  check_indices({p, q});
  const KernelConstants kc = build_constants(cfg);
  const Complex zr = 1.0 / zeta;
  auto g = [&](Complex z) {
    return std::pow(manifold_M(z, kc), p) * manifold_M_over_L2(z, kc) *
           (std::pow(z, -q - 1) - std::pow(z, q + 1));
  };
  const Complex g_ref = g(zr);
  auto eval = [&](int Q) {
    const ContourSpec spec = ContourSpec::make(Q, choose_rotation(Q, {std::arg(zr)}));
    VectorXc f(Q);
    for (int j = 0; j < Q; ++j) {
      const Complex z = spec.nodes(j);
      f(j) = (g(z) - g_ref) / (1.0 - zeta * z);
    }
    return scalar(integrate(f, spec));
  };
  return gated<MatrixXc>(trunc, eval)(0, 0);
}

Complex compute_M1_full(int m, int n, int p, int q, const PhysicalConfig& cfg,
                        const TruncationSpec& trunc) {
  check_indices({m, n, p, q});
  const KernelConstants kc = build_constants(cfg);
  auto eval = [&](int Q) {
    const PairNodes pn = coupling_nodes(kc, Q);
    VectorXc gz(Q), gr(Q), go(Q);
    for (int j = 0; j < Q; ++j) {
      const Complex z = pn.z.nodes(j);
      const Complex zr = std::conj(pn.zeta.nodes(j));
      const Complex ze = pn.zeta.nodes(j);
      gz(j) = std::pow(pn.M_z(j), p) * pn.MoL2_z(j) * (std::pow(z, -q - 1) - std::pow(z, q + 1));
      gr(j) = std::pow(pn.M_ref(j), p) * pn.MoL2_ref(j) *
              (std::pow(zr, -q - 1) - std::pow(zr, q + 1));
      go(j) = g_out(m, n, ze, pn.M_zeta(j));
    }
    const VectorXc I1 = pn.C * gz - pn.c.cwiseProduct(gr);
    const Complex first = integrate(go.cwiseProduct(I1), pn.zeta);
    const int D = std::abs(m - p) + 1;
    VectorXc t2(Q);
    for (int j = 0; j < Q; ++j) {
      const Complex ze = pn.zeta.nodes(j);
      const Complex M = pn.M_zeta(j);
      t2(j) = std::pow(M, D - 1) * pn.MoL2_zeta(j) / (M * M - 1.0) *
              (std::pow(ze, n + q + 1) - std::pow(ze, std::abs(n - q) - 1));
    }
    return scalar(first + integrate(t2, pn.zeta));
  };
  return gated<MatrixXc>(trunc, eval)(0, 0);
}

Complex compute_M1_asymptotic(int m, int n, int p, int q, const PhysicalConfig& cfg,
                              const TruncationSpec& trunc) {
  check_indices({m, n, p, q});
  const KernelConstants kc = build_constants(cfg);
  auto eval = [&](int Q) {
    const ContourSpec spec = ContourSpec::make(Q, kPi / Q);
    VectorXc f(Q);
    for (int j = 0; j < Q; ++j) {
      const Complex ze = spec.nodes(j);
      const Complex M = manifold_M(ze, kc);
      const Complex mol2 = manifold_M_over_L2(ze, kc);
      f(j) = (std::pow(M, m + p + 2) - std::pow(M, std::abs(m - p))) * mol2 / (M * M - 1.0) *
             (std::pow(ze, std::abs(n - q) - 1) - std::pow(ze, n + q + 1));
    }
    return scalar(integrate(f, spec));
  };
  return gated<MatrixXc>(trunc, eval)(0, 0);
}

Complex compute_M1(int m, int n, int p, int q, const PhysicalConfig& cfg,
                   const TruncationSpec& trunc) {
  if (std::max({m, n, p, q}) > trunc.T) return compute_M1_asymptotic(m, n, p, q, cfg, trunc);
  return compute_M1_full(m, n, p, q, cfg, trunc);
}

Complex compute_A_inc(int m, int n, const PhysicalConfig& cfg, const TruncationSpec& trunc) {
  check_indices({m, n});
  require_supported_incidence(cfg);
  const KernelConstants kc = build_constants(cfg);
  const int N = std::max(m, n);
  auto eval = [&](int Q) { return scalar(forcing_at(cfg, kc, N, Q)(n * (N + 1) + m)); };
  return gated<MatrixXc>(trunc, eval)(0, 0);
}

Coupling assemble_coupling(const PhysicalConfig& cfg, const TruncationSpec& trunc) {
  cfg.validate();
  trunc.validate();
  const KernelConstants kc = build_constants(cfg);
  Coupling out;
  out.M = gated<MatrixXc>(
      trunc, [&](int Q) { return coupling_at(cfg, kc, trunc.N, trunc.inner(), trunc.T, Q); },
      &out.Q_used);
  return out;
}

VectorXc assemble_A_inc(const PhysicalConfig& cfg, const TruncationSpec& trunc, int* Q_used) {
  cfg.validate();
  trunc.validate();
  require_supported_incidence(cfg);
  const KernelConstants kc = build_constants(cfg);
  return gated<VectorXc>(trunc, [&](int Q) { return forcing_at(cfg, kc, trunc.N, Q); }, Q_used);
}

std::shared_ptr<const Coupling> CouplingCache::get(const PhysicalConfig& cfg,
                                                   const TruncationSpec& trunc) {
  char key[256];
  std::snprintf(key, sizeof key, "%.17g|%.17g|%.17g|%s|%d|%d|%d|%d|%d|%.17g|%d", cfg.k, cfg.s,
                cfg.a, to_string(cfg.monopole), trunc.N, trunc.inner(), trunc.T, trunc.Q,
                trunc.Q_max, trunc.quad_tol, int(trunc.adaptive));
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = entries_.find(key);
    if (it != entries_.end()) return it->second;
  }
  auto value = std::make_shared<const Coupling>(assemble_coupling(cfg, trunc));
  std::lock_guard<std::mutex> lock(mutex_);
  return entries_.emplace(key, value).first->second;
}

void CouplingCache::clear() {
  std::lock_guard<std::mutex> lock(mutex_);
  entries_.clear();
}

std::size_t CouplingCache::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return entries_.size();
}

Assembly assemble(const PhysicalConfig& cfg, const TruncationSpec& trunc, CouplingCache* cache) {
  Assembly out;
  int q_inc = 0;
  out.A_inc = assemble_A_inc(cfg, trunc, &q_inc);
  if (cache) {
    const auto c = cache->get(cfg, trunc);
    out.M = c->M;
    out.Q_used = std::max(c->Q_used, q_inc);
  } else {
    Coupling c = assemble_coupling(cfg, trunc);
    out.M = std::move(c.M);
    out.Q_used = std::max(c.Q_used, q_inc);
  }
  return out;
}

LinearSolve solve_dense(const MatrixXc& A, const VectorXc& b) {
  if (A.rows() != A.cols() || A.rows() != b.size()) {
    throw Error(ErrorKind::shape_mismatch, "solve_dense: incompatible shapes");
  }
  LinearSolve out;
  Eigen::PartialPivLU<MatrixXc> lu(A);
  // The norm estimator misses exactly vanishing pivots, so bound it by the
  // pivot ratio as well.
  const Eigen::VectorXd piv = lu.matrixLU().diagonal().cwiseAbs();
  const double ratio = piv.size() ? piv.minCoeff() / std::max(piv.maxCoeff(), 1e-300) : 1.0;
  out.rcond = std::min(lu.rcond(), ratio);
  if (!(out.rcond > 1e-12)) {
    throw Error(ErrorKind::singular_matrix,
                "condition estimate exceeds 1e12 (rcond = " + std::to_string(out.rcond) + ")");
  }
  out.x = lu.solve(b);
  const double bnorm = std::max(b.cwiseAbs().maxCoeff(), 1e-300);
  VectorXc r = b - A * out.x;
  out.residual = r.cwiseAbs().maxCoeff() / bnorm;
  while (out.residual > 1e-13 && out.refinements < 3) {
    out.x += lu.solve(r);
    r = b - A * out.x;
    const double next = r.cwiseAbs().maxCoeff() / bnorm;
    ++out.refinements;
    if (next >= out.residual) {
      out.residual = next;
      break;
    }
    out.residual = next;
  }
  return out;
}

QlnnSolution solve_qlnn(const PhysicalConfig& cfg, const TruncationSpec& trunc,
                        CouplingCache* cache) {
  require_supported_incidence(cfg);
  const Assembly as = assemble(cfg, trunc, cache);
  const int n = static_cast<int>(as.A_inc.size());
  const MatrixXc system = MatrixXc::Identity(n, n) - as.M;
  const LinearSolve ls = solve_dense(system, as.A_inc);
  QlnnSolution out;
  out.A = CoeffGrid::from_vec(ls.x, trunc.N);
  out.A_inc = as.A_inc;
  out.Q_used = as.Q_used;
  out.rcond = ls.rcond;
  out.residual = ls.residual;
  return out;
}

CoeffGrid solve(const PhysicalConfig& cfg, const TruncationSpec& trunc) {
  return solve_qlnn(cfg, trunc).A;
}

}  // namespace qlnn
