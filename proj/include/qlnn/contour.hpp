#pragma once

#include <functional>
#include <vector>

#include "qlnn/config.hpp"
#include "qlnn/types.hpp"

namespace qlnn {

/// Equispaced nodes z_j = exp(i (2 pi j / Q + rotation)) on the unit circle.
/// weights_j = z_j / Q, so that sum w_j f(z_j) approximates (1/2 pi i) \oint f dz.
struct ContourSpec {
  int Q = 0;
  double rotation = 0.0;
  VectorXc nodes;
  VectorXc weights;

  /// Throws ErrorKind::invalid_input unless Q >= 64 and Q is even.
  static ContourSpec make(int Q, double rotation = 0.0);
  double spacing() const { return 2.0 * kPi / Q; }
};

Complex integrate(const VectorXc& fsamples, const ContourSpec& spec);

enum class PoleSide { inside, outside };

struct PoleRecord {
  Complex location;
  Complex residue;
  PoleSide side;
};

/// integrate(f - sum r_k / (z - p_k)) + sum_{inside} r_k. If a pole lands on
/// a node the contour is rotated by half a node spacing first.
Complex integrate_with_pole_removal(const std::function<Complex(Complex)>& f,
                                    const std::vector<PoleRecord>& poles,
                                    const ContourSpec& spec, bool check_residues = true);

struct IncidentPoles {
  PoleRecord z_c, inv_z_c, z_s, inv_z_s;
};

/// Sides follow the small positive Im(k) limit. Residues are left at zero.
/// Throws ErrorKind::grazing_incidence when cos or sin of the angle vanishes.
IncidentPoles classify_incident_poles(const PhysicalConfig& cfg);

/// Distance from angle x to the nearest node of a lattice of spacing h,
/// in units of h (so in [0, 1/2]).
double lattice_distance(double x, double h);

/// Rotation in [0, h) maximizing the smallest lattice distance to the given
/// angles.
double choose_rotation(int Q, const std::vector<double>& hazard_angles);

/// Runs eval(Q) for Q, 2Q, ... until the relative change measured by `norm`
/// drops below tol. Throws ErrorKind::quadrature_nonconvergence past Q_max.
template <class T, class Eval, class Norm>
T converge_doubling(Eval eval, Norm norm, int Q, int Q_max, double tol, int* Q_used = nullptr) {
  T prev = eval(Q);
  if (2 * Q > Q_max) {
    if (Q_used) *Q_used = Q;
    return prev;
  }
  for (int q = 2 * Q; q <= Q_max; q *= 2) {
    T next = eval(q);
    const double scale = norm(next);
    const double change = norm(next - prev);
    if (change <= tol * (scale > 0 ? scale : 1.0)) {
      if (Q_used) *Q_used = q;
      return next;
    }
    prev = std::move(next);
  }
  throw Error(ErrorKind::quadrature_nonconvergence,
              "quadrature did not converge by Q = " + std::to_string(Q_max));
}

}  // namespace qlnn
