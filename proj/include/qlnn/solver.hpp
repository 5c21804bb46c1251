#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>

#include "qlnn/config.hpp"
#include "qlnn/kernel.hpp"
#include "qlnn/types.hpp"

namespace qlnn {

/// The forcing integrals are derived for waves arriving through the corner
/// quadrant. Throws ErrorKind::grazing_incidence on a lattice axis and
/// ErrorKind::invalid_input unless cos(theta) < 0 and sin(theta) < 0.
void require_supported_incidence(const PhysicalConfig& cfg);

/// True iff |p - m| <= 1 and |q - n| <= 1.
bool neighbor_set_contains(int p, int q, int m, int n);

/// Zero on the nearest-neighbour block, H0(ks |R_pq - R_mn|) elsewhere.
Complex compute_M2(int p, int q, int mbar, int nbar, const PhysicalConfig& cfg);

/// (1/2 pi i) \oint M(z)^{p+1} (z^{-q-1} - z^{q+1}) / (L2(z) (1 - zeta z)) dz
/// for |zeta| = 1, with the pole at z = 1/zeta treated as outside.
Complex inner_integral_I1(int p, int q, Complex zeta, const PhysicalConfig& cfg,
                          const TruncationSpec& trunc);

/// Full double-integral form regardless of T.
Complex compute_M1_full(int m, int n, int p, int q, const PhysicalConfig& cfg,
                        const TruncationSpec& trunc);
/// Single-integral large-index form.
Complex compute_M1_asymptotic(int m, int n, int p, int q, const PhysicalConfig& cfg,
                              const TruncationSpec& trunc);
/// Asymptotic form when max(m, n, p, q) > T, full form otherwise.
Complex compute_M1(int m, int n, int p, int q, const PhysicalConfig& cfg,
                   const TruncationSpec& trunc);

/// Incident forcing term of the reduced system for coefficient (m, n).
Complex compute_A_inc(int m, int n, const PhysicalConfig& cfg, const TruncationSpec& trunc);

/// Coupling matrix M = M1 M2 on the (N+1)^2 outer indices, vectorized with
/// i = n (N+1) + m.
struct Coupling {
  MatrixXc M;
  int Q_used = 0;
};

struct Assembly {
  MatrixXc M;
  VectorXc A_inc;
  int Q_used = 0;
};

/// Coupling matrices are independent of the incident angle; keyed on
/// (k, s, a, monopole, N, P, T, Q settings).
class CouplingCache {
 public:
  std::shared_ptr<const Coupling> get(const PhysicalConfig& cfg, const TruncationSpec& trunc);
  void clear();
  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::unordered_map<std::string, std::shared_ptr<const Coupling>> entries_;
};

Coupling assemble_coupling(const PhysicalConfig& cfg, const TruncationSpec& trunc);
VectorXc assemble_A_inc(const PhysicalConfig& cfg, const TruncationSpec& trunc,
                        int* Q_used = nullptr);
Assembly assemble(const PhysicalConfig& cfg, const TruncationSpec& trunc,
                  CouplingCache* cache = nullptr);

struct LinearSolve {
  VectorXc x;
  double rcond = 0.0;
  double residual = 0.0;  // ||A x - b||_inf / ||b||_inf
  int refinements = 0;
};

/// Dense LU with iterative refinement. Throws ErrorKind::singular_matrix when
/// the condition estimate exceeds 1e12.
LinearSolve solve_dense(const MatrixXc& A, const VectorXc& b);

struct QlnnSolution {
  CoeffGrid A;
  VectorXc A_inc;
  int Q_used = 0;
  double rcond = 0.0;
  double residual = 0.0;
};

QlnnSolution solve_qlnn(const PhysicalConfig& cfg, const TruncationSpec& trunc,
                        CouplingCache* cache = nullptr);
CoeffGrid solve(const PhysicalConfig& cfg, const TruncationSpec& trunc);

}  // namespace qlnn
