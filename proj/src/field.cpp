#include "qlnn/field.hpp"

#include <cmath>
#include <limits>

#include "qlnn/kernel.hpp"
#include "qlnn/special_functions.hpp"

namespace qlnn {

Complex incident_field(double x, double y, const PhysicalConfig& cfg) {
  return std::exp(-kI * (cfg.k * (x * std::cos(cfg.theta_inc) + y * std::sin(cfg.theta_inc))));
}

Complex scattered_field(double x, double y, const CoeffGrid& A, const PhysicalConfig& cfg) {
  Complex sum = 0.0;
  for (int n = 0; n <= A.N; ++n) {
    for (int m = 0; m <= A.N; ++m) {
      const double r = std::hypot(x - m * cfg.s, y - n * cfg.s);
      if (r < 1e-14 * cfg.s) {
        throw Error(ErrorKind::singular_input, "field requested at a scatterer centre");
      }
      if (A(m, n) != Complex(0.0)) sum += A(m, n) * hankel1_0(cfg.k * r);
    }
  }
  return sum;
}

Eigen::MatrixXd energy_defect(const CoeffGrid& A, const PhysicalConfig& cfg) {
  const int N = A.N;
  MatrixXc H(N + 1, N + 1);
  for (int dn = 0; dn <= N; ++dn) {
    for (int dm = 0; dm <= N; ++dm) {
      if (dm == 0 && dn == 0) {
        H(0, 0) = 0.0;
        continue;
      }
      H(dm, dn) = hankel1_0(cfg.k * cfg.s * std::sqrt(double(dm) * dm + double(dn) * dn));
    }
  }
  Eigen::MatrixXd out(N + 1, N + 1);
  for (int n = 0; n <= N; ++n) {
    for (int m = 0; m <= N; ++m) {
      Complex phi = incident_field(m * cfg.s, n * cfg.s, cfg);
      for (int q = 0; q <= N; ++q) {
        for (int p = 0; p <= N; ++p) phi += A(p, q) * H(std::abs(m - p), std::abs(n - q));
      }
      if (std::abs(phi) < 1e-14) {
        throw Error(ErrorKind::singular_input, "exciting field vanishes at a scatterer");
      }
      const Complex g = A(m, n) / phi;
      out(m, n) = std::norm(g) + g.real();
    }
  }
  return out;
}

FieldGrid sample_total_field(const CoeffGrid& A, const PhysicalConfig& cfg,
                             const FieldGridSpec& spec) {
  if (spec.nx < 1 || spec.ny < 1) throw Error(ErrorKind::invalid_input, "empty field grid");
  FieldGrid out;
  auto axis = [](double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    return v;
  };
  out.xs = axis(spec.x_min, spec.x_max, spec.nx);
  out.ys = axis(spec.y_min, spec.y_max, spec.ny);
  out.values.resize(spec.nx, spec.ny);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int i = 0; i < spec.nx; ++i) {
    for (int j = 0; j < spec.ny; ++j) {
      const double x = out.xs[i], y = out.ys[j];
      const double mx = std::round(x / cfg.s), my = std::round(y / cfg.s);
      const bool near_centre = mx >= 0 && my >= 0 && mx <= A.N && my <= A.N &&
                               std::hypot(x - mx * cfg.s, y - my * cfg.s) < 0.5 * cfg.a;
      out.values(i, j) =
          near_centre ? Complex(nan, nan) : incident_field(x, y, cfg) + scattered_field(x, y, A, cfg);
    }
  }
  return out;
}

}  // namespace qlnn
