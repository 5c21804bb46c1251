#include "qlnn/contour.hpp"

#include <algorithm>
#include <cmath>

namespace qlnn {

ContourSpec ContourSpec::make(int Q, double rotation) {
  if (Q < 64 || Q % 2 != 0) {
    throw Error(ErrorKind::invalid_input, "contour needs an even number of nodes >= 64");
  }
  ContourSpec spec;
  spec.Q = Q;
  spec.rotation = rotation;
  spec.nodes.resize(Q);
  for (int j = 0; j < Q; ++j) {
    spec.nodes(j) = std::polar(1.0, 2.0 * kPi * j / Q + rotation);
  }
  spec.weights = spec.nodes / static_cast<double>(Q);
  return spec;
}

Complex integrate(const VectorXc& fsamples, const ContourSpec& spec) {
  if (fsamples.size() != spec.Q) {
    throw Error(ErrorKind::shape_mismatch, "sample count does not match the contour");
  }
  return spec.weights.cwiseProduct(fsamples).sum();
}

double lattice_distance(double x, double h) {
  double r = std::fmod(x / h, 1.0);
  if (r < 0) r += 1.0;
  return std::min(r, 1.0 - r);
}

double choose_rotation(int Q, const std::vector<double>& hazard_angles) {
  const double h = 2.0 * kPi / Q;
  if (hazard_angles.empty()) return 0.0;
  constexpr int kTrials = 256;
  double best = 0.0;
  double best_score = -1.0;
  for (int t = 0; t < kTrials; ++t) {
    const double phi = h * t / kTrials;
    double score = 0.5;
    for (double a : hazard_angles) score = std::min(score, lattice_distance(a - phi, h));
    if (score > best_score + 1e-15) {
      best_score = score;
      best = phi;
    }
  }
  return best;
}

Complex integrate_with_pole_removal(const std::function<Complex(Complex)>& f,
                                    const std::vector<PoleRecord>& poles,
                                    const ContourSpec& spec, bool check_residues) {
  const ContourSpec* use = &spec;
  ContourSpec rotated;
  const double h = spec.spacing();
  for (const auto& p : poles) {
    if (std::abs(std::abs(p.location) - 1.0) < 1e-12 &&
        lattice_distance(std::arg(p.location) - spec.rotation, h) < 1e-6) {
      std::vector<double> angles;
      for (const auto& q : poles) angles.push_back(std::arg(q.location));
      rotated = ContourSpec::make(spec.Q, choose_rotation(spec.Q, angles));
      use = &rotated;
      break;
    }
  }

  if (check_residues) {
    for (const auto& p : poles) {
      if (std::abs(p.residue) == 0.0) continue;
      std::vector<int> order(use->Q);
      for (int j = 0; j < use->Q; ++j) order[j] = j;
      std::partial_sort(order.begin(), order.begin() + 4, order.end(), [&](int a, int b) {
        return std::abs(use->nodes(a) - p.location) < std::abs(use->nodes(b) - p.location);
      });
      for (int i = 0; i < 4; ++i) {
        const Complex z = use->nodes(order[i]);
        const Complex est = (z - p.location) * f(z);
        if (std::abs(est - p.residue) > 0.1 * std::abs(p.residue)) {
          throw Error(ErrorKind::inconsistent_residue,
                      "supplied residue disagrees with the integrand near the pole");
        }
      }
    }
  }

  VectorXc samples(use->Q);
  for (int j = 0; j < use->Q; ++j) {
    const Complex z = use->nodes(j);
    Complex v = f(z);
    for (const auto& p : poles) v -= p.residue / (z - p.location);
    samples(j) = v;
  }
  Complex total = integrate(samples, *use);
  for (const auto& p : poles) {
    if (p.side == PoleSide::inside) total += p.residue;
  }
  return total;
}

IncidentPoles classify_incident_poles(const PhysicalConfig& cfg) {
  const double c = std::cos(cfg.theta_inc);
  const double s = std::sin(cfg.theta_inc);
  constexpr double kGrazing = 1e-12;
  if (std::abs(c) < kGrazing || std::abs(s) < kGrazing) {
    throw Error(ErrorKind::grazing_incidence,
                "incident direction parallel to a lattice axis: pole on the contour");
  }
  // With k -> k + i0, |z_c| = exp(Im(k) s cos(theta)) < 1 iff cos(theta) < 0.
  const PoleSide zc_side = c < 0 ? PoleSide::inside : PoleSide::outside;
  const PoleSide zs_side = s < 0 ? PoleSide::inside : PoleSide::outside;
  auto flip = [](PoleSide side) {
    return side == PoleSide::inside ? PoleSide::outside : PoleSide::inside;
  };
  const Complex zc = cfg.z_c();
  const Complex zs = cfg.z_s();
  IncidentPoles out;
  out.z_c = {zc, 0.0, zc_side};
  out.inv_z_c = {1.0 / zc, 0.0, flip(zc_side)};
  out.z_s = {zs, 0.0, zs_side};
  out.inv_z_s = {1.0 / zs, 0.0, flip(zs_side)};
  return out;
}

}  // namespace qlnn
