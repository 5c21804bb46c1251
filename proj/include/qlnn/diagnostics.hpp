#pragma once

#include <string>
#include <vector>

#include "qlnn/baselines.hpp"
#include "qlnn/config.hpp"
#include "qlnn/types.hpp"

namespace qlnn {

enum class Method { qlnn, direct, lsc };

const char* to_string(Method method);
Method parse_method(const std::string& name);

/// Coefficients from any of the three solvers; trunc.N sets the grid size.
CoeffGrid run_method(const PhysicalConfig& cfg, const TruncationSpec& trunc, Method method,
                     const LscSpec& lsc = {});

/// |LHS - RHS| of the truncated Foldy system at every (p, q).
Eigen::MatrixXd system_residual(const CoeffGrid& A, const PhysicalConfig& cfg);

/// max over m < n of |A_mn - A_nm|.
double symmetry_defect(const CoeffGrid& A);

enum class PathKind { row, column, diagonal };

/// row r: (p, r); column c: (c, p); diagonal: (alpha p, beta p).
struct DecayPath {
  PathKind kind = PathKind::diagonal;
  int index = 0;
  int alpha = 1, beta = 1;
};

/// |A| along the path, p = 0, 1, ... while the point stays in the grid.
std::vector<double> decay_profile(const CoeffGrid& A, const DecayPath& path);

/// Least-squares slope of log(values[p]) against p for p in [p_lo, p_hi].
double log_slope(const std::vector<double>& values, int p_lo, int p_hi);

struct ComparisonReport {
  std::string method_a, method_b;
  Eigen::MatrixXd abs_diff;
  double max_diff = 0.0;
  double interior_max_diff = 0.0;  // indices <= N/2
};

/// Throws ErrorKind::shape_mismatch when the grids differ in size.
ComparisonReport compare(const CoeffGrid& a, const CoeffGrid& b, const std::string& label_a,
                         const std::string& label_b);

struct TruncationSweep {
  std::vector<int> Ns;
  std::vector<std::vector<double>> profiles;  // diagonal |A_pp| per N
  /// For consecutive N: max over p <= min(10, N_prev) of the relative change.
  std::vector<double> changes;
};

/// Ns must be ascending. `base` supplies Q, T and P policy for QLNN runs.
TruncationSweep truncation_sweep(const PhysicalConfig& cfg, const std::vector<int>& Ns,
                                 Method method, const TruncationSpec& base = {});

}  // namespace qlnn
