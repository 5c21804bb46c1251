#pragma once

#include <vector>

#include "qlnn/config.hpp"
#include "qlnn/types.hpp"

namespace qlnn {

/// exp(-i k (x cos theta + y sin theta)).
Complex incident_field(double x, double y, const PhysicalConfig& cfg);

/// sum A_mn H0(k |r - R_mn|); throws ErrorKind::singular_input at a centre.
Complex scattered_field(double x, double y, const CoeffGrid& A, const PhysicalConfig& cfg);

/// |g|^2 + Re g with g = A_mn / (field exciting scatterer (m, n)).
Eigen::MatrixXd energy_defect(const CoeffGrid& A, const PhysicalConfig& cfg);

struct FieldGridSpec {
  double x_min = -1.0, x_max = 2.0;
  double y_min = -1.0, y_max = 2.0;
  int nx = 200, ny = 200;
};

/// Samples at x_i = x_min + i dx; values(i, j) at (x_i, y_j). Points closer
/// than a/2 to a scatterer centre hold NaN.
struct FieldGrid {
  std::vector<double> xs, ys;
  MatrixXc values;
};

FieldGrid sample_total_field(const CoeffGrid& A, const PhysicalConfig& cfg,
                             const FieldGridSpec& spec);

}  // namespace qlnn
