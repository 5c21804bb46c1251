#pragma once

#include "qlnn/config.hpp"
#include "qlnn/types.hpp"

namespace qlnn {

/// Dense solve of the truncated Foldy system on 0 <= p, q <= N.
CoeffGrid direct_foldy_solve(const PhysicalConfig& cfg, int N);

/// The truncated Foldy matrix itself, rows and columns in CoeffGrid order.
MatrixXc foldy_matrix(const PhysicalConfig& cfg, int N);
/// Right-hand side -exp(-i k s (p cos theta + q sin theta)).
VectorXc foldy_forcing(const PhysicalConfig& cfg, int N);

struct LscSpec {
  int n_colloc = 16;  // equiangular points per boundary, starting at angle 0
};

struct LscSystem {
  MatrixXc matrix;  // H0(k |r_c - R_mn|)
  VectorXc rhs;     // -incident field at r_c
};

LscSystem lsc_system(const PhysicalConfig& cfg, int N, const LscSpec& lsc);

/// Column-pivoted QR least squares. Throws ErrorKind::rank_deficient on rank loss.
VectorXc least_squares(const MatrixXc& matrix, const VectorXc& rhs);

/// Least-squares fit of monopole amplitudes to zero total field on every
/// boundary. Throws ErrorKind::rank_deficient when the column-pivoted QR
/// detects rank loss.
CoeffGrid lsc_solve(const PhysicalConfig& cfg, int N, const LscSpec& lsc = {});

}  // namespace qlnn
