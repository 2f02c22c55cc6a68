#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "vibronic/wigner.hpp"

/// Field files: a JSON document {"metadata": {...}, "data": [...]} with one
/// record per grid point in sample order (real part fastest), and a CSV with
/// the same columns. Every number in the data section is printed with 17
/// significant digits, so a re-parsed file reproduces the doubles exactly.
namespace vibronic::cli {

struct FieldMetadata {
  std::string kind;  ///< "exact" or "sampled"
  std::string config_hash;
  nlohmann::json extra = nlohmann::json::object();
};

std::string field_to_json(const WignerField& field, const FieldMetadata& metadata);
std::string field_to_csv(const WignerField& field);

struct LoadedField {
  WignerField field;
  nlohmann::json metadata;
};

/// Throws ErrorCode::config_parse on malformed files and
/// ErrorCode::grid_mismatch when the record count disagrees with the grid.
LoadedField parse_field_json(const std::string& text);
LoadedField read_field_json(const std::string& path);

nlohmann::json grid_to_json(const PhaseSpaceGrid& grid);
PhaseSpaceGrid grid_from_json(const nlohmann::json& node);

/// %.17g
std::string format_double(double value);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace vibronic::cli
