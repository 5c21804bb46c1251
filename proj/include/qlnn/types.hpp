#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qlnn {

using Complex = std::complex<double>;
using VectorXc = Eigen::VectorXcd;
using MatrixXc = Eigen::MatrixXcd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kEulerGamma = 0.577215664901532860606512090082402431;
inline constexpr Complex kI{0.0, 1.0};

/// Failure categories surfaced by the library. The CLI maps input errors
/// (invalid_input, domain, grazing_incidence, shape_mismatch, config_mismatch,
/// io) to exit status 2 and computational failures to 1.
enum class ErrorKind {
  invalid_input,
  domain,
  degenerate,
  grazing_incidence,
  singular_input,
  inconsistent_residue,
  quadrature_nonconvergence,
  singular_matrix,
  rank_deficient,
  shape_mismatch,
  config_mismatch,
  io,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qlnn
