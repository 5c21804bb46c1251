#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <json.hpp>

#include "qlnn/config.hpp"
#include "qlnn/field.hpp"
#include "qlnn/types.hpp"

namespace qlnn {

/// FNV-1a over a canonical text form of the physical parameters, as 16 hex digits.
std::string config_hash(const PhysicalConfig& cfg);

nlohmann::json to_json(const PhysicalConfig& cfg);
nlohmann::json to_json(const TruncationSpec& trunc);

/// Columns m, n, re, im with a header row, %.17g values.
void write_coeff_csv(const std::string& path, const CoeffGrid& A);
CoeffGrid read_coeff_csv(const std::string& path);

/// Columns x, y, re, im; masked points are written as nan.
void write_field_csv(const std::string& path, const FieldGrid& grid);

/// Columns m, n, value.
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& values);

void write_json(const std::string& path, const nlohmann::json& doc);
nlohmann::json read_json(const std::string& path);

/// Flat key=value lines; '#' starts a comment.
std::map<std::string, std::string> read_config_file(const std::string& path);

}  // namespace qlnn
