#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "qlnn/diagnostics.hpp"
#include "qlnn/field.hpp"
#include "qlnn/io.hpp"
#include "qlnn/solver.hpp"
#include "qlnn/verification.hpp"

using namespace qlnn;
using nlohmann::json;

namespace {

struct Flags {
  std::optional<double> k, s, a, theta;
  std::optional<int> N, P, T, Q;
  std::optional<std::string> method, monopole;
  std::optional<int> n_colloc;
  std::string config_path;
  std::string out = "qlnn_out";
  unsigned seed = 12345;
};

struct RunConfig {
  PhysicalConfig physical;
  TruncationSpec truncation;
  Method method = Method::qlnn;
  LscSpec lsc;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--k", f.k, "wavenumber (radians per unit length)");
  cmd->add_option("--s", f.s, "lattice spacing");
  cmd->add_option("--a", f.a, "scatterer radius");
  cmd->add_option("--theta", f.theta, "incidence angle (radians)");
  cmd->add_option("--N", f.N, "grid truncation");
  cmd->add_option("--P", f.P, "inner truncation (default ceil(1.2 N))");
  cmd->add_option("--T", f.T, "asymptotic switch index");
  cmd->add_option("--Q", f.Q, "initial contour nodes");
  cmd->add_option("--method", f.method, "qlnn | direct | lsc");
  cmd->add_option("--monopole", f.monopole, "hankel | log_form | ratio");
  cmd->add_option("--n-colloc", f.n_colloc, "collocation points per scatterer (lsc)");
  cmd->add_option("--config", f.config_path, "key=value file; flags override it");
  cmd->add_option("--out", f.out, "output path prefix");
  cmd->add_option("--seed", f.seed, "seed for sampled verification points");
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used == v.size()) return x;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::invalid_input, "config key '" + key + "': not a number: " + v);
}

int to_int(const std::string& key, const std::string& v) {
  const double x = to_double(key, v);
  if (x != static_cast<int>(x)) {
    throw Error(ErrorKind::invalid_input, "config key '" + key + "': not an integer: " + v);
  }
  return static_cast<int>(x);
}

RunConfig resolve(const Flags& f) {
  Flags merged;
  if (!f.config_path.empty()) {
    for (const auto& [key, v] : read_config_file(f.config_path)) {
      if (key == "k") merged.k = to_double(key, v);
      else if (key == "s") merged.s = to_double(key, v);
      else if (key == "a") merged.a = to_double(key, v);
      else if (key == "theta") merged.theta = to_double(key, v);
      else if (key == "N") merged.N = to_int(key, v);
      else if (key == "P") merged.P = to_int(key, v);
      else if (key == "T") merged.T = to_int(key, v);
      else if (key == "Q") merged.Q = to_int(key, v);
      else if (key == "n_colloc") merged.n_colloc = to_int(key, v);
      else if (key == "method") merged.method = v;
      else if (key == "monopole") merged.monopole = v;
      else throw Error(ErrorKind::invalid_input, "unknown config key '" + key + "'");
    }
  }
  auto take = [](auto& dst, const auto& flag) {
    if (flag) dst = flag;
  };
  take(merged.k, f.k);
  take(merged.s, f.s);
  take(merged.a, f.a);
  take(merged.theta, f.theta);
  take(merged.N, f.N);
  take(merged.P, f.P);
  take(merged.T, f.T);
  take(merged.Q, f.Q);
  take(merged.n_colloc, f.n_colloc);
  take(merged.method, f.method);
  take(merged.monopole, f.monopole);

  RunConfig rc;
  if (merged.k) rc.physical.k = *merged.k;
  if (merged.s) rc.physical.s = *merged.s;
  if (merged.a) rc.physical.a = *merged.a;
  if (merged.theta) rc.physical.theta_inc = *merged.theta;
  if (merged.monopole) rc.physical.monopole = parse_monopole(*merged.monopole);
  if (merged.N) rc.truncation.N = *merged.N;
  if (merged.P) rc.truncation.P = *merged.P;
  if (merged.T) rc.truncation.T = *merged.T;
  if (merged.Q) {
    rc.truncation.Q = *merged.Q;
    rc.truncation.Q_max = std::max(rc.truncation.Q_max, *merged.Q);
  }
  if (merged.method) rc.method = parse_method(*merged.method);
  if (merged.n_colloc) rc.lsc.n_colloc = *merged.n_colloc;
  rc.physical.validate();
  rc.truncation.validate();
  if (rc.lsc.n_colloc < 3) throw Error(ErrorKind::invalid_input, "n_colloc must be at least 3");
  return rc;
}

json metadata(const std::string& command, const RunConfig& rc, const Flags& f) {
  json j;
  j["command"] = command;
  j["physical"] = to_json(rc.physical);
  j["truncation"] = to_json(rc.truncation);
  j["method"] = to_string(rc.method);
  j["hash"] = config_hash(rc.physical);
  j["seed"] = f.seed;
  j["foldy_warning"] = rc.physical.foldy_warning();
  if (rc.method == Method::lsc) j["n_colloc"] = rc.lsc.n_colloc;
  return j;
}

std::string meta_path_for(const std::string& csv) {
  std::filesystem::path p(csv);
  p.replace_extension(".json");
  return p.string();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_solve(const Flags& f) {
  const auto t0 = std::chrono::steady_clock::now();
  const RunConfig rc = resolve(f);
  json meta = metadata("solve", rc, f);

  CoeffGrid A;
  if (rc.method == Method::qlnn) {
    const QlnnSolution sol = solve_qlnn(rc.physical, rc.truncation);
    A = sol.A;
    meta["Q_used"] = sol.Q_used;
    meta["rcond"] = sol.rcond;
    meta["linear_residual"] = sol.residual;
  } else {
    A = run_method(rc.physical, rc.truncation, rc.method, rc.lsc);
    meta["Q_used"] = nullptr;
  }
  const Eigen::MatrixXd res = system_residual(A, rc.physical);
  const int inner = std::max(A.N - 1, 1);
  meta["system_residual_max"] = res.maxCoeff();
  meta["system_residual_interior_max"] = res.topLeftCorner(inner, inner).maxCoeff();
  meta["symmetry_defect"] = symmetry_defect(A);
  meta["wall_time_s"] = seconds_since(t0);

  const std::string csv = f.out + ".csv";
  write_coeff_csv(csv, A);
  meta["coefficients"] = csv;
  write_json(f.out + ".json", meta);
  std::cout << meta.dump(2) << '\n';
  return 0;
}

int cmd_field(const Flags& f, const std::string& coeff_path, const FieldGridSpec& grid) {
  const auto t0 = std::chrono::steady_clock::now();
  const RunConfig rc = resolve(f);
  const json source = read_json(meta_path_for(coeff_path));
  const std::string want = config_hash(rc.physical);
  if (!source.contains("hash") || source["hash"] != want) {
    throw Error(ErrorKind::config_mismatch,
                "coefficient metadata hash " + source.value("hash", std::string("<none>")) +
                    " does not match the configuration hash " + want);
  }
  if (grid.nx < 1 || grid.ny < 1 || !(grid.x_max >= grid.x_min) || !(grid.y_max >= grid.y_min)) {
    throw Error(ErrorKind::invalid_input, "field grid needs nx, ny >= 1 and ordered bounds");
  }
  const CoeffGrid A = read_coeff_csv(coeff_path);
  const FieldGrid field = sample_total_field(A, rc.physical, grid);

  json meta = metadata("field", rc, f);
  meta["method"] = source.value("method", std::string("unknown"));
  meta["truncation"]["N"] = A.N;
  meta["coefficients"] = coeff_path;
  meta["grid"] = {{"x_min", grid.x_min}, {"x_max", grid.x_max}, {"y_min", grid.y_min},
                  {"y_max", grid.y_max}, {"nx", grid.nx},       {"ny", grid.ny}};
  int masked = 0;
  for (Eigen::Index i = 0; i < field.values.size(); ++i) {
    if (std::isnan(field.values.data()[i].real())) ++masked;
  }
  meta["masked_points"] = masked;
  meta["energy_defect_max"] = energy_defect(A, rc.physical).maxCoeff();
  meta["wall_time_s"] = seconds_since(t0);

  const std::string csv = f.out + ".csv";
  write_field_csv(csv, field);
  meta["field"] = csv;
  write_json(f.out + ".json", meta);
  std::cout << meta.dump(2) << '\n';
  return 0;
}

std::string label_for(const std::string& csv) {
  try {
    const json m = read_json(meta_path_for(csv));
    if (m.contains("method")) return m["method"].get<std::string>();
  } catch (const Error&) {
  }
  return std::filesystem::path(csv).stem().string();
}

int cmd_compare(const Flags& f, const std::string& path_a, const std::string& path_b) {
  const auto t0 = std::chrono::steady_clock::now();
  const CoeffGrid a = read_coeff_csv(path_a);
  const CoeffGrid b = read_coeff_csv(path_b);
  const ComparisonReport r = compare(a, b, label_for(path_a), label_for(path_b));
  const std::string csv = f.out + ".csv";
  write_matrix_csv(csv, r.abs_diff);
  json meta = {{"command", "compare"},
               {"a", path_a},
               {"b", path_b},
               {"method_a", r.method_a},
               {"method_b", r.method_b},
               {"N", a.N},
               {"max_diff", r.max_diff},
               {"interior_max_diff", r.interior_max_diff},
               {"abs_diff", csv},
               {"wall_time_s", seconds_since(t0)}};
  write_json(f.out + ".json", meta);
  std::cout << meta.dump(2) << '\n';
  return 0;
}

int cmd_verify(const Flags& f, const std::string& suite) {
  const auto t0 = std::chrono::steady_clock::now();
  const RunConfig rc = resolve(f);
  const int fe_N = f.N ? rc.truncation.N : 30;
  const int energy_N = f.N ? rc.truncation.N : 12;
  std::vector<std::pair<std::string, std::vector<CheckResult>>> runs;
  const bool all = suite == "all";
  if (all || suite == "kernel") runs.emplace_back("kernel", verify_kernel(rc.physical, f.seed));
  if (all || suite == "appendix_c") {
    runs.emplace_back("appendix_c", verify_appendix_c(rc.physical, f.seed));
  }
  if (all || suite == "functional_eq") {
    runs.emplace_back("functional_eq", verify_functional_eq(rc.physical, fe_N, f.seed));
  }
  if (all || suite == "energy") runs.emplace_back("energy", verify_energy(rc.physical, energy_N));
  if (runs.empty()) throw Error(ErrorKind::invalid_input, "unknown suite '" + suite + "'");

  json meta = metadata("verify", rc, f);
  meta["suite"] = suite;
  meta["truncation"]["N"] = fe_N;
  meta["energy_N"] = energy_N;
  bool passed = true;
  json checks = json::array();
  for (const auto& [name, results] : runs) {
    for (const auto& c : results) {
      checks.push_back({{"suite", name},
                        {"name", c.name},
                        {"value", c.value},
                        {"threshold", c.threshold},
                        {"passed", c.passed},
                        {"detail", c.detail}});
      passed = passed && c.passed;
    }
  }
  meta["checks"] = checks;
  meta["passed"] = passed;
  meta["wall_time_s"] = seconds_since(t0);
  write_json(f.out + ".json", meta);
  std::cout << meta.dump(2) << '\n';
  return passed ? 0 : 1;
}

bool is_input_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input:
    case ErrorKind::domain:
    case ErrorKind::grazing_incidence:
    case ErrorKind::shape_mismatch:
    case ErrorKind::config_mismatch:
    case ErrorKind::io:
      return true;
    default:
      return false;
  }
}

int report_error(const std::string& kind, const std::string& message, int code) {
  const json err = {{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}};
  std::cerr << err.dump() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quarter-lattice multiple scattering solver"};
  app.require_subcommand(1);

  Flags f;
  auto* solve_cmd = app.add_subcommand("solve", "compute scattering coefficients");
  add_common(solve_cmd, f);

  auto* field_cmd = app.add_subcommand("field", "sample the total field from coefficients");
  add_common(field_cmd, f);
  std::string coeff_path;
  FieldGridSpec grid;
  field_cmd->add_option("--coeff", coeff_path, "coefficient CSV written by solve")->required();
  field_cmd->add_option("--x-min", grid.x_min);
  field_cmd->add_option("--x-max", grid.x_max);
  field_cmd->add_option("--y-min", grid.y_min);
  field_cmd->add_option("--y-max", grid.y_max);
  field_cmd->add_option("--nx", grid.nx);
  field_cmd->add_option("--ny", grid.ny);

  auto* compare_cmd = app.add_subcommand("compare", "difference of two coefficient files");
  std::string path_a, path_b;
  compare_cmd->add_option("a", path_a, "first coefficient CSV")->required();
  compare_cmd->add_option("b", path_b, "second coefficient CSV")->required();
  compare_cmd->add_option("--out", f.out, "output path prefix");

  auto* verify_cmd = app.add_subcommand("verify", "run numerical verification suites");
  add_common(verify_cmd, f);
  std::string suite = "all";
  verify_cmd->add_option("--suite", suite, "kernel | appendix_c | functional_eq | energy | all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("invalid_input", e.what(), 2);
  }

  try {
    if (*solve_cmd) return cmd_solve(f);
    if (*field_cmd) return cmd_field(f, coeff_path, grid);
    if (*compare_cmd) return cmd_compare(f, path_a, path_b);
    if (*verify_cmd) return cmd_verify(f, suite);
  } catch (const Error& e) {
    return report_error(to_string(e.kind()), e.what(), is_input_error(e.kind()) ? 2 : 1);
  } catch (const std::exception& e) {
    return report_error("internal", e.what(), 1);
  }
  return 2;
}
