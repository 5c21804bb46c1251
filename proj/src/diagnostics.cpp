#include "qlnn/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "qlnn/solver.hpp"

namespace qlnn {

const char* to_string(Method method) {
  switch (method) {
    case Method::qlnn: return "qlnn";
    case Method::direct: return "direct";
    case Method::lsc: return "lsc";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  if (name == "qlnn") return Method::qlnn;
  if (name == "direct") return Method::direct;
  if (name == "lsc") return Method::lsc;
  throw Error(ErrorKind::invalid_input, "unknown method '" + name + "'");
}

CoeffGrid run_method(const PhysicalConfig& cfg, const TruncationSpec& trunc, Method method,
                     const LscSpec& lsc) {
  switch (method) {
    case Method::qlnn: return solve(cfg, trunc);
    case Method::direct: return direct_foldy_solve(cfg, trunc.N);
    case Method::lsc: return lsc_solve(cfg, trunc.N, lsc);
  }
  throw Error(ErrorKind::invalid_input, "unknown method");
}

Eigen::MatrixXd system_residual(const CoeffGrid& A, const PhysicalConfig& cfg) {
  const VectorXc r = foldy_matrix(cfg, A.N) * A.vec() - foldy_forcing(cfg, A.N);
  return CoeffGrid::from_vec(r, A.N).values.cwiseAbs();
}

double symmetry_defect(const CoeffGrid& A) {
  return (A.values - A.values.transpose()).cwiseAbs().maxCoeff();
}

std::vector<double> decay_profile(const CoeffGrid& A, const DecayPath& path) {
  auto in_range = [&](int v) { return v >= 0 && v <= A.N; };
  if (path.kind != PathKind::diagonal && !in_range(path.index)) {
    throw Error(ErrorKind::invalid_input, "decay path index outside the grid");
  }
  if (path.kind == PathKind::diagonal && (path.alpha < 0 || path.beta < 0 ||
                                          (path.alpha == 0 && path.beta == 0))) {
    throw Error(ErrorKind::invalid_input, "diagonal path needs non-negative, non-zero slopes");
  }
  std::vector<double> out;
  for (int p = 0;; ++p) {
    int m = 0, n = 0;
    switch (path.kind) {
      case PathKind::row: m = p; n = path.index; break;
      case PathKind::column: m = path.index; n = p; break;
      case PathKind::diagonal: m = path.alpha * p; n = path.beta * p; break;
    }
    if (!in_range(m) || !in_range(n)) break;
    out.push_back(std::abs(A(m, n)));
  }
  return out;
}

double log_slope(const std::vector<double>& values, int p_lo, int p_hi) {
  if (p_lo < 0 || p_hi >= static_cast<int>(values.size()) || p_hi <= p_lo) {
    throw Error(ErrorKind::invalid_input, "log_slope: bad fit range");
  }
  const int n = p_hi - p_lo + 1;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int p = p_lo; p <= p_hi; ++p) {
    const double y = std::log(values[p]);
    sx += p;
    sy += y;
    sxx += double(p) * p;
    sxy += p * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ComparisonReport compare(const CoeffGrid& a, const CoeffGrid& b, const std::string& label_a,
                         const std::string& label_b) {
  if (a.N != b.N) throw Error(ErrorKind::shape_mismatch, "coefficient grids differ in size");
  ComparisonReport rep;
  rep.method_a = label_a;
  rep.method_b = label_b;
  rep.abs_diff = (a.values - b.values).cwiseAbs();
  rep.max_diff = rep.abs_diff.maxCoeff();
  const int h = a.N / 2 + 1;
  rep.interior_max_diff = rep.abs_diff.topLeftCorner(h, h).maxCoeff();
  return rep;
}

TruncationSweep truncation_sweep(const PhysicalConfig& cfg, const std::vector<int>& Ns,
                                 Method method, const TruncationSpec& base) {
  if (!std::is_sorted(Ns.begin(), Ns.end())) {
    throw Error(ErrorKind::invalid_input, "truncation sweep needs ascending N");
  }
  TruncationSweep sw;
  sw.Ns = Ns;
  for (int N : Ns) {
    TruncationSpec t = base;
    t.N = N;
    t.P = -1;
    sw.profiles.push_back(decay_profile(run_method(cfg, t, method), {}));
  }
  for (std::size_t i = 1; i < sw.profiles.size(); ++i) {
    const auto& prev = sw.profiles[i - 1];
    const auto& next = sw.profiles[i];
    const int pmax = std::min<int>(10, static_cast<int>(prev.size()) - 1);
    double worst = 0.0;
    for (int p = 0; p <= pmax; ++p) worst = std::max(worst, std::abs(next[p] - prev[p]) / prev[p]);
    sw.changes.push_back(worst);
  }
  return sw;
}

}  // namespace qlnn
