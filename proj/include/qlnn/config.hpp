#pragma once

#include <string>

#include "qlnn/types.hpp"

namespace qlnn {

/// Self-interaction constant of a Foldy point scatterer.
enum class MonopoleChoice {
  hankel,    // H0(ka)
  log_form,  // (2i/pi)(ln(ka/2) + gamma) + 1
  ratio,     // H0(ka) / J0(ka)
};

const char* to_string(MonopoleChoice choice);
MonopoleChoice parse_monopole(const std::string& name);

struct PhysicalConfig {
  double k = 2.0 * kPi;
  double s = 0.1;
  double a = 0.001;
  double theta_inc = -0.75 * kPi;
  MonopoleChoice monopole = MonopoleChoice::hankel;

  /// Throws ErrorKind::invalid_input unless k, s, a > 0 and a < s/2.
  void validate() const;
  /// Point-scatterer model is questionable once ka exceeds 0.1.
  bool foldy_warning() const { return k * a > 0.1; }

  Complex z_c() const;  // exp(-i k s cos(theta))
  Complex z_s() const;  // exp(-i k s sin(theta))
};

struct TruncationSpec {
  int N = 24;
  int P = -1;  // inner truncation; negative means ceil(1.2 N)
  int T = 30;  // asymptotic switch for M1
  int Q = 512;
  int Q_max = 4096;
  double quad_tol = 1e-10;
  bool adaptive = true;  // doubling gate on the assembled quantities

  int inner() const;
  void validate() const;
};

/// (N+1) x (N+1) coefficients A_mn stored with m as the row index. Eigen's
/// column-major layout then gives the vectorization i = n (N+1) + m.
struct CoeffGrid {
  int N = 0;
  MatrixXc values;

  CoeffGrid() = default;
  explicit CoeffGrid(int n) : N(n), values(MatrixXc::Zero(n + 1, n + 1)) {}

  static int index(int m, int n, int N) { return n * (N + 1) + m; }

  Complex& operator()(int m, int n) { return values(m, n); }
  Complex operator()(int m, int n) const { return values(m, n); }

  VectorXc vec() const;
  static CoeffGrid from_vec(const VectorXc& x, int N);
};

}  // namespace qlnn
