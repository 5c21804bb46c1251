#include "qlnn/config.hpp"

#include <cmath>

namespace qlnn {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid_input";
    case ErrorKind::domain: return "domain";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::grazing_incidence: return "grazing_incidence";
    case ErrorKind::singular_input: return "singular_input";
    case ErrorKind::inconsistent_residue: return "inconsistent_residue";
    case ErrorKind::quadrature_nonconvergence: return "quadrature_nonconvergence";
    case ErrorKind::singular_matrix: return "singular_matrix";
    case ErrorKind::rank_deficient: return "rank_deficient";
    case ErrorKind::shape_mismatch: return "shape_mismatch";
    case ErrorKind::config_mismatch: return "config_mismatch";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

const char* to_string(MonopoleChoice choice) {
  switch (choice) {
    case MonopoleChoice::hankel: return "hankel";
    case MonopoleChoice::log_form: return "log_form";
    case MonopoleChoice::ratio: return "ratio";
  }
  return "unknown";
}

MonopoleChoice parse_monopole(const std::string& name) {
  if (name == "hankel") return MonopoleChoice::hankel;
  if (name == "log_form") return MonopoleChoice::log_form;
  if (name == "ratio") return MonopoleChoice::ratio;
  throw Error(ErrorKind::invalid_input, "unknown monopole choice '" + name + "'");
}

void PhysicalConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorKind::invalid_input, std::string(name) + " must be positive and finite");
    }
  };
  positive(k, "k");
  positive(s, "s");
  positive(a, "a");
  if (!(a < 0.5 * s)) throw Error(ErrorKind::invalid_input, "radius a must be below s/2");
  if (!std::isfinite(theta_inc)) throw Error(ErrorKind::invalid_input, "theta must be finite");
}

Complex PhysicalConfig::z_c() const { return std::exp(-kI * (k * s * std::cos(theta_inc))); }
Complex PhysicalConfig::z_s() const { return std::exp(-kI * (k * s * std::sin(theta_inc))); }

int TruncationSpec::inner() const {
  return P >= 0 ? P : static_cast<int>(std::ceil(1.2 * N - 1e-12));
}

void TruncationSpec::validate() const {
  if (N < 2) throw Error(ErrorKind::invalid_input, "N must be at least 2");
  if (inner() < N) throw Error(ErrorKind::invalid_input, "P must be at least N");
  if (T < 1) throw Error(ErrorKind::invalid_input, "T must be positive");
  if (Q < 64 || Q % 2 != 0) throw Error(ErrorKind::invalid_input, "Q must be even and >= 64");
  if (Q_max < Q) throw Error(ErrorKind::invalid_input, "Q_max must be >= Q");
  if (!(quad_tol > 0.0)) throw Error(ErrorKind::invalid_input, "quad_tol must be positive");
}

VectorXc CoeffGrid::vec() const {
  return Eigen::Map<const VectorXc>(values.data(), values.size());
}

CoeffGrid CoeffGrid::from_vec(const VectorXc& x, int N) {
  if (x.size() != (N + 1) * (N + 1)) {
    throw Error(ErrorKind::shape_mismatch, "vector length does not match (N+1)^2");
  }
  CoeffGrid g(N);
  g.values = Eigen::Map<const MatrixXc>(x.data(), N + 1, N + 1);
  return g;
}

}  // namespace qlnn
