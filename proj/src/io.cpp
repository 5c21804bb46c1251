#include "qlnn/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qlnn {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::io, "cannot open '" + path + "' for writing");
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open '" + path + "'");
  return in;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string config_hash(const PhysicalConfig& cfg) {
  const std::string text = "k=" + fmt17(cfg.k) + ";s=" + fmt17(cfg.s) + ";a=" + fmt17(cfg.a) +
                           ";theta=" + fmt17(cfg.theta_inc) +
                           ";monopole=" + to_string(cfg.monopole);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::json to_json(const PhysicalConfig& cfg) {
  return {{"k", cfg.k},
          {"s", cfg.s},
          {"a", cfg.a},
          {"theta", cfg.theta_inc},
          {"monopole", to_string(cfg.monopole)},
          {"hash", config_hash(cfg)}};
}

nlohmann::json to_json(const TruncationSpec& trunc) {
  return {{"N", trunc.N},       {"P", trunc.inner()},        {"T", trunc.T},
          {"Q", trunc.Q},       {"Q_max", trunc.Q_max},      {"quad_tol", trunc.quad_tol},
          {"adaptive", trunc.adaptive}};
}

void write_coeff_csv(const std::string& path, const CoeffGrid& A) {
  auto out = open_out(path);
  out << "m,n,re,im\n";
  for (int n = 0; n <= A.N; ++n) {
    for (int m = 0; m <= A.N; ++m) {
      out << m << ',' << n << ',' << fmt17(A(m, n).real()) << ',' << fmt17(A(m, n).imag())
          << '\n';
    }
  }
}

CoeffGrid read_coeff_csv(const std::string& path) {
  auto in = open_in(path);
  std::string line;
  std::getline(in, line);
  if (trim(line) != "m,n,re,im") throw Error(ErrorKind::io, "'" + path + "': bad header");
  struct Row {
    int m, n;
    double re, im;
  };
  std::vector<Row> rows;
  int nmax = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    Row r;
    if (std::sscanf(line.c_str(), "%d,%d,%lf,%lf", &r.m, &r.n, &r.re, &r.im) != 4) {
      throw Error(ErrorKind::io, "'" + path + "': malformed row '" + line + "'");
    }
    nmax = std::max({nmax, r.m, r.n});
    rows.push_back(r);
  }
  if (static_cast<int>(rows.size()) != (nmax + 1) * (nmax + 1)) {
    throw Error(ErrorKind::shape_mismatch, "'" + path + "': row count is not (N+1)^2");
  }
  CoeffGrid A(nmax);
  for (const auto& r : rows) A(r.m, r.n) = Complex(r.re, r.im);
  return A;
}

void write_field_csv(const std::string& path, const FieldGrid& grid) {
  auto out = open_out(path);
  out << "x,y,re,im\n";
  for (std::size_t j = 0; j < grid.ys.size(); ++j) {
    for (std::size_t i = 0; i < grid.xs.size(); ++i) {
      const Complex v = grid.values(i, j);
      out << fmt17(grid.xs[i]) << ',' << fmt17(grid.ys[j]) << ','
          << (std::isnan(v.real()) ? "nan" : fmt17(v.real())) << ','
          << (std::isnan(v.imag()) ? "nan" : fmt17(v.imag())) << '\n';
    }
  }
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& values) {
  auto out = open_out(path);
  out << "m,n,value\n";
  for (int n = 0; n < values.cols(); ++n) {
    for (int m = 0; m < values.rows(); ++m) out << m << ',' << n << ',' << fmt17(values(m, n)) << '\n';
  }
}

void write_json(const std::string& path, const nlohmann::json& doc) {
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
}

nlohmann::json read_json(const std::string& path) {
  auto in = open_in(path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::io, "'" + path + "': " + e.what());
  }
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  auto in = open_in(path);
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::invalid_input,
                  path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

}  // namespace qlnn
