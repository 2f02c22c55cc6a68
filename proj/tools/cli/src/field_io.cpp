#include "vibronic/cli/field_io.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace vibronic::cli {
namespace {

using nlohmann::json;

constexpr const char* kColumns[] = {"re_alpha", "im_alpha", "w11",       "w22",       "re_w12",
                                    "im_w12",   "se_w11",   "se_w22",    "se_re_w12", "se_im_w12",
                                    "leakage"};

std::array<double, 11> row_values(const WignerSample& s) {
  const WignerStderr se = s.stderr.value_or(WignerStderr{});
  return {s.alpha.real(), s.alpha.imag(), s.w(0, 0).real(), s.w(1, 1).real(),
          s.w(0, 1).real(), s.w(0, 1).imag(), se.w11, se.w22, se.re_w12, se.im_w12,
          s.leakage_bound};
}

[[noreturn]] void malformed(const std::string& message) {
  throw Error(ErrorCode::config_parse, "malformed field file: " + message);
}

double number(const json& record, const char* key) {
  if (!record.contains(key)) malformed(std::string("record lacks '") + key + "'");
  const json& v = record.at(key);
  if (!v.is_number()) malformed(std::string("'") + key + "' is not a number");
  return v.get<double>();
}

}  // namespace

std::string format_double(double value) { return fmt::format("{:.17g}", value); }

json grid_to_json(const PhaseSpaceGrid& g) {
  return {{"re_min", g.re_min}, {"re_max", g.re_max}, {"n_re", g.n_re},
          {"im_min", g.im_min}, {"im_max", g.im_max}, {"n_im", g.n_im}};
}

PhaseSpaceGrid grid_from_json(const json& node) {
  PhaseSpaceGrid g;
  try {
    g.re_min = node.at("re_min").get<double>();
    g.re_max = node.at("re_max").get<double>();
    g.n_re = node.at("n_re").get<Index>();
    g.im_min = node.at("im_min").get<double>();
    g.im_max = node.at("im_max").get<double>();
    g.n_im = node.at("n_im").get<Index>();
  } catch (const json::exception& e) {
    malformed(std::string("bad grid: ") + e.what());
  }
  g.validate();
  return g;
}

std::string field_to_json(const WignerField& field, const FieldMetadata& metadata) {
  json meta = metadata.extra;
  meta["kind"] = metadata.kind;
  meta["config_hash"] = metadata.config_hash;
  meta["grid"] = grid_to_json(field.grid);
  meta["has_stderr"] = !field.samples.empty() && field.samples.front().stderr.has_value();

  std::string out = "{\n\"metadata\": " + meta.dump(2) + ",\n\"data\": [\n";
  for (std::size_t k = 0; k < field.samples.size(); ++k) {
    const auto values = row_values(field.samples[k]);
    out += "{";
    for (std::size_t c = 0; c < values.size(); ++c) {
      out += fmt::format("{}\"{}\": {}", c ? ", " : "", kColumns[c], format_double(values[c]));
    }
    out += k + 1 < field.samples.size() ? "},\n" : "}\n";
  }
  out += "]\n}\n";
  return out;
}

std::string field_to_csv(const WignerField& field) {
  std::string out;
  for (std::size_t c = 0; c < std::size(kColumns); ++c) out += fmt::format("{}{}", c ? "," : "", kColumns[c]);
  out += "\n";
  for (const WignerSample& s : field.samples) {
    const auto values = row_values(s);
    for (std::size_t c = 0; c < values.size(); ++c) out += fmt::format("{}{}", c ? "," : "", format_double(values[c]));
    out += "\n";
  }
  return out;
}

LoadedField parse_field_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    malformed(e.what());
  }
  if (!doc.is_object() || !doc.contains("metadata") || !doc.contains("data")) {
    malformed("expected 'metadata' and 'data'");
  }
  LoadedField out;
  out.metadata = doc.at("metadata");
  if (!out.metadata.contains("grid")) malformed("metadata lacks 'grid'");
  out.field.grid = grid_from_json(out.metadata.at("grid"));
  const bool has_stderr = out.metadata.value("has_stderr", false);

  const json& data = doc.at("data");
  if (!data.is_array()) malformed("'data' is not an array");
  if (static_cast<Index>(data.size()) != out.field.grid.size()) {
    throw Error(ErrorCode::grid_mismatch,
                fmt::format("field file has {} records for a grid of {}", data.size(),
                            out.field.grid.size()));
  }
  out.field.samples.reserve(data.size());
  for (const json& r : data) {
    WignerSample s;
    s.alpha = {number(r, "re_alpha"), number(r, "im_alpha")};
    s.w(0, 0) = number(r, "w11");
    s.w(1, 1) = number(r, "w22");
    s.w(0, 1) = {number(r, "re_w12"), number(r, "im_w12")};
    s.w(1, 0) = std::conj(s.w(0, 1));
    if (has_stderr) {
      s.stderr = WignerStderr{number(r, "se_w11"), number(r, "se_w22"), number(r, "se_re_w12"),
                              number(r, "se_im_w12")};
    }
    s.leakage_bound = number(r, "leakage");
    out.field.samples.push_back(s);
  }
  return out;
}

LoadedField read_field_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::config_parse, "cannot open field file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_field_json(buffer.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::invalid_argument, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorCode::invalid_argument, "failed writing '" + path + "'");
}

}  // namespace vibronic::cli
