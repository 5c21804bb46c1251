#include "qlnn/baselines.hpp"

#include <cmath>

#include "qlnn/kernel.hpp"
#include "qlnn/solver.hpp"
#include "qlnn/special_functions.hpp"

namespace qlnn {

MatrixXc foldy_matrix(const PhysicalConfig& cfg, int N) {
  cfg.validate();
  if (N < 0) throw Error(ErrorKind::invalid_input, "N must be non-negative");
  const Complex C = monopole_constant(cfg);
  MatrixXc H(N + 1, N + 1);
  for (int dn = 0; dn <= N; ++dn) {
    for (int dm = 0; dm <= N; ++dm) {
      H(dm, dn) = (dm == 0 && dn == 0)
                      ? C
                      : hankel1_0(cfg.k * cfg.s * std::sqrt(double(dm) * dm + double(dn) * dn));
    }
  }
  const int n = (N + 1) * (N + 1);
  MatrixXc A(n, n);
  for (int q = 0; q <= N; ++q) {
    for (int p = 0; p <= N; ++p) {
      const int row = CoeffGrid::index(p, q, N);
      for (int nn = 0; nn <= N; ++nn) {
        for (int m = 0; m <= N; ++m) {
          A(row, CoeffGrid::index(m, nn, N)) = H(std::abs(p - m), std::abs(q - nn));
        }
      }
    }
  }
  return A;
}

VectorXc foldy_forcing(const PhysicalConfig& cfg, int N) {
  VectorXc f((N + 1) * (N + 1));
  const double c = std::cos(cfg.theta_inc), s = std::sin(cfg.theta_inc);
  for (int q = 0; q <= N; ++q) {
    for (int p = 0; p <= N; ++p) {
      f(CoeffGrid::index(p, q, N)) = -std::exp(-kI * (cfg.k * cfg.s * (p * c + q * s)));
    }
  }
  return f;
}

CoeffGrid direct_foldy_solve(const PhysicalConfig& cfg, int N) {
  const LinearSolve ls = solve_dense(foldy_matrix(cfg, N), foldy_forcing(cfg, N));
  return CoeffGrid::from_vec(ls.x, N);
}

LscSystem lsc_system(const PhysicalConfig& cfg, int N, const LscSpec& lsc) {
  cfg.validate();
  if (N < 0) throw Error(ErrorKind::invalid_input, "N must be non-negative");
  if (lsc.n_colloc < 3) throw Error(ErrorKind::invalid_input, "n_colloc must be at least 3");
  const int cols = (N + 1) * (N + 1);
  const int rows = cols * lsc.n_colloc;
  LscSystem sys;
  sys.matrix.resize(rows, cols);
  sys.rhs.resize(rows);
  const double c = std::cos(cfg.theta_inc), s = std::sin(cfg.theta_inc);
  for (int b = 0; b < cols; ++b) {
    const double bx = cfg.s * (b % (N + 1));
    const double by = cfg.s * (b / (N + 1));
    for (int t = 0; t < lsc.n_colloc; ++t) {
      const double phi = 2.0 * kPi * t / lsc.n_colloc;
      const double x = bx + cfg.a * std::cos(phi);
      const double y = by + cfg.a * std::sin(phi);
      const int row = b * lsc.n_colloc + t;
      sys.rhs(row) = -std::exp(-kI * (cfg.k * (x * c + y * s)));
      for (int col = 0; col < cols; ++col) {
        const double dx = x - cfg.s * (col % (N + 1));
        const double dy = y - cfg.s * (col / (N + 1));
        sys.matrix(row, col) = hankel1_0(cfg.k * std::hypot(dx, dy));
      }
    }
  }
  return sys;
}

VectorXc least_squares(const MatrixXc& matrix, const VectorXc& rhs) {
  if (matrix.rows() != rhs.size() || matrix.rows() < matrix.cols()) {
    throw Error(ErrorKind::shape_mismatch, "least squares needs rows >= cols and matching rhs");
  }
  Eigen::ColPivHouseholderQR<MatrixXc> qr(matrix);
  if (qr.rank() < matrix.cols()) {
    throw Error(ErrorKind::rank_deficient, "collocation matrix is rank deficient");
  }
  return qr.solve(rhs);
}

CoeffGrid lsc_solve(const PhysicalConfig& cfg, int N, const LscSpec& lsc) {
  const LscSystem sys = lsc_system(cfg, N, lsc);
  return CoeffGrid::from_vec(least_squares(sys.matrix, sys.rhs), N);
}

}  // namespace qlnn
