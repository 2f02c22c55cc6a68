#include "vibronic/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <vector>

#include <fmt/format.h>

namespace vibronic::cli {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) {
  throw Error(ErrorCode::config_parse, message);
}

void require_keys(const json& object, const std::string& where,
                  std::initializer_list<const char*> allowed) {
  if (!object.is_object()) fail(where + " must be an object");
  for (const auto& item : object.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return item.key() == k; });
    if (!known) fail("unknown key '" + item.key() + "' in " + where);
  }
}

template <typename T>
void read(const json& object, const char* key, T& out, const std::string& where) {
  if (!object.contains(key)) return;
  try {
    out = object.at(key).get<T>();
  } catch (const json::exception&) {
    fail(fmt::format("{}.{} has the wrong type", where, key));
  }
}

Eigen::MatrixXcd read_matrix(const json& node, const std::string& where) {
  require_keys(node, where, {"re", "im"});
  if (!node.contains("re")) fail(where + ".re is required");
  std::vector<std::vector<double>> re, im;
  try {
    re = node.at("re").get<std::vector<std::vector<double>>>();
    if (node.contains("im")) im = node.at("im").get<std::vector<std::vector<double>>>();
  } catch (const json::exception&) {
    fail(where + " must hold arrays of numbers");
  }
  const Index rows = static_cast<Index>(re.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rows, rows);
  for (Index r = 0; r < rows; ++r) {
    const auto& row = re[static_cast<std::size_t>(r)];
    if (static_cast<Index>(row.size()) != rows) fail(where + " must be square");
    for (Index c = 0; c < rows; ++c) m(r, c).real(row[static_cast<std::size_t>(c)]);
  }
  if (!im.empty()) {
    if (static_cast<Index>(im.size()) != rows) fail(where + ".im shape differs from .re");
    for (Index r = 0; r < rows; ++r) {
      const auto& row = im[static_cast<std::size_t>(r)];
      if (static_cast<Index>(row.size()) != rows) fail(where + ".im shape differs from .re");
      for (Index c = 0; c < rows; ++c) m(r, c).imag(row[static_cast<std::size_t>(c)]);
    }
  }
  return m;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

double to_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail("cannot parse " + what + " from '" + s + "'");
  }
}

}  // namespace

const char* to_string(SamplingMode mode) noexcept {
  return mode == SamplingMode::trajectory ? "trajectory" : "fast_analytic";
}

const char* to_string(TrialAllocation allocation) noexcept {
  return allocation == TrialAllocation::per_element ? "per_element" : "per_variant";
}

SamplingMode parse_mode(const std::string& text) {
  if (text == "fast_analytic") return SamplingMode::fast_analytic;
  if (text == "trajectory") return SamplingMode::trajectory;
  fail("mode must be fast_analytic or trajectory, got '" + text + "'");
}

PhaseSpaceGrid parse_grid(const std::string& text) {
  const std::vector<std::string> parts = split(text, ',');
  if (parts.size() != 6) fail("grid needs re_min,re_max,n_re,im_min,im_max,n_im");
  PhaseSpaceGrid g;
  g.re_min = to_double(parts[0], "re_min");
  g.re_max = to_double(parts[1], "re_max");
  g.n_re = static_cast<Index>(to_double(parts[2], "n_re"));
  g.im_min = to_double(parts[3], "im_min");
  g.im_max = to_double(parts[4], "im_max");
  g.n_im = static_cast<Index>(to_double(parts[5], "n_im"));
  return g;
}

Complex parse_complex(const std::string& text) {
  const std::vector<std::string> parts = split(text, ',');
  if (parts.size() == 1) return {to_double(parts[0], "real part"), 0.0};
  if (parts.size() == 2) return {to_double(parts[0], "real part"), to_double(parts[1], "imaginary part")};
  fail("complex value must be 're' or 're,im', got '" + text + "'");
}

DriveConfig RunConfig::drive() const {
  DriveConfig d;
  d.rabi_magnitude = 1.0;
  d.phase = phase;
  d.lamb_dicke = eta;
  return d;
}

SamplerConfig RunConfig::sampler() const {
  SamplerConfig s;
  s.trials = trials;
  s.master_seed = master_seed;
  s.mode = mode;
  s.allocation = allocation;
  s.parallel = true;
  s.threads = threads;
  return s;
}

ScheduleOptions RunConfig::schedule_options() const {
  return {tomography.leakage_budget, tomography.p_max, tomography.k_cap};
}

void RunConfig::validate() const {
  try {
    grid.validate();
    drive().validate();
  } catch (const Error& e) {
    fail(e.what());
  }
  if (!(rabi_hz > 0.0)) fail("drive.rabi_hz must be positive");
  if (trials < 1) fail("sampler.trials must be >= 1");
  if (tomography.fock_count < 0) fail("tomography.M must be >= 0");
  if (!(tomography.leakage_budget > 0.0 && tomography.leakage_budget < 1.0)) {
    fail("tomography.leakage_budget must lie in (0, 1)");
  }
  if (tomography.p_max < 1) fail("tomography.p_max must be >= 1");
  if (tomography.k_cap < 1) fail("tomography.k_cap must be >= 1");
  if (!(tomography.tail > 0.0 && tomography.tail < 1.0)) fail("tomography.tail must lie in (0, 1)");
  if (n_max != 0 && n_max < 2) fail("n_max must be 0 (automatic) or >= 2");
  if (state.kind == StateKind::product && state.file.empty()) fail("state.file is required");
  if (!output.json && !output.csv) fail("output.formats must name json and/or csv");
}

RunConfig parse_config(const json& doc) {
  RunConfig c;
  require_keys(doc, "config",
               {"state", "grid", "drive", "tomography", "sampler", "output", "n_max", "threads"});

  if (doc.contains("state")) {
    const json& s = doc.at("state");
    require_keys(s, "state", {"type", "beta_re", "beta_im", "file"});
    std::string type = "cat";
    read(s, "type", type, "state");
    if (type == "cat") {
      if (s.contains("file")) fail("state.file only applies to type 'product'");
      double re = c.state.beta.real(), im = c.state.beta.imag();
      read(s, "beta_re", re, "state");
      read(s, "beta_im", im, "state");
      c.state.beta = {re, im};
    } else if (type == "product") {
      if (s.contains("beta_re") || s.contains("beta_im")) fail("state.beta_* only applies to type 'cat'");
      c.state.kind = StateKind::product;
      read(s, "file", c.state.file, "state");
    } else {
      fail("state.type must be 'cat' or 'product'");
    }
  }
  if (doc.contains("grid")) {
    const json& g = doc.at("grid");
    require_keys(g, "grid", {"re_min", "re_max", "n_re", "im_min", "im_max", "n_im"});
    read(g, "re_min", c.grid.re_min, "grid");
    read(g, "re_max", c.grid.re_max, "grid");
    read(g, "n_re", c.grid.n_re, "grid");
    read(g, "im_min", c.grid.im_min, "grid");
    read(g, "im_max", c.grid.im_max, "grid");
    read(g, "n_im", c.grid.n_im, "grid");
  }
  if (doc.contains("drive")) {
    const json& d = doc.at("drive");
    require_keys(d, "drive", {"rabi_hz", "phase", "eta"});
    read(d, "rabi_hz", c.rabi_hz, "drive");
    read(d, "phase", c.phase, "drive");
    read(d, "eta", c.eta, "drive");
  }
  if (doc.contains("tomography")) {
    const json& t = doc.at("tomography");
    require_keys(t, "tomography", {"M", "leakage_budget", "p_max", "k_cap", "tail"});
    read(t, "M", c.tomography.fock_count, "tomography");
    read(t, "leakage_budget", c.tomography.leakage_budget, "tomography");
    read(t, "p_max", c.tomography.p_max, "tomography");
    read(t, "k_cap", c.tomography.k_cap, "tomography");
    read(t, "tail", c.tomography.tail, "tomography");
  }
  if (doc.contains("sampler")) {
    const json& s = doc.at("sampler");
    require_keys(s, "sampler", {"trials", "master_seed", "mode", "allocation"});
    read(s, "trials", c.trials, "sampler");
    read(s, "master_seed", c.master_seed, "sampler");
    std::string mode = to_string(c.mode);
    read(s, "mode", mode, "sampler");
    c.mode = parse_mode(mode);
    std::string allocation = to_string(c.allocation);
    read(s, "allocation", allocation, "sampler");
    if (allocation == "per_variant") {
      c.allocation = TrialAllocation::per_variant;
    } else if (allocation == "per_element") {
      c.allocation = TrialAllocation::per_element;
    } else {
      fail("sampler.allocation must be per_variant or per_element");
    }
  }
  if (doc.contains("output")) {
    const json& o = doc.at("output");
    require_keys(o, "output", {"directory", "formats"});
    read(o, "directory", c.output.directory, "output");
    if (o.contains("formats")) {
      std::vector<std::string> formats;
      read(o, "formats", formats, "output");
      c.output.json = c.output.csv = false;
      for (const auto& f : formats) {
        if (f == "json") {
          c.output.json = true;
        } else if (f == "csv") {
          c.output.csv = true;
        } else {
          fail("unknown output format '" + f + "'");
        }
      }
    }
  }
  read(doc, "n_max", c.n_max, "config");
  read(doc, "threads", c.threads, "config");
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    fail("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

json to_json(const RunConfig& c) {
  json state;
  if (c.state.kind == StateKind::cat) {
    state = {{"type", "cat"}, {"beta_re", c.state.beta.real()}, {"beta_im", c.state.beta.imag()}};
  } else {
    state = {{"type", "product"}, {"file", c.state.file}};
  }
  std::vector<std::string> formats;
  if (c.output.json) formats.emplace_back("json");
  if (c.output.csv) formats.emplace_back("csv");
  return {
      {"state", state},
      {"grid",
       {{"re_min", c.grid.re_min}, {"re_max", c.grid.re_max}, {"n_re", c.grid.n_re},
        {"im_min", c.grid.im_min}, {"im_max", c.grid.im_max}, {"n_im", c.grid.n_im}}},
      {"drive", {{"rabi_hz", c.rabi_hz}, {"phase", c.phase}, {"eta", c.eta}}},
      {"tomography",
       {{"M", c.tomography.fock_count},
        {"leakage_budget", c.tomography.leakage_budget},
        {"p_max", c.tomography.p_max},
        {"k_cap", c.tomography.k_cap},
        {"tail", c.tomography.tail}}},
      {"sampler",
       {{"trials", c.trials},
        {"master_seed", c.master_seed},
        {"mode", to_string(c.mode)},
        {"allocation", to_string(c.allocation)}}},
      {"output", {{"directory", c.output.directory}, {"formats", formats}}},
      {"n_max", c.n_max},
      {"threads", c.threads},
  };
}

std::string config_hash(const RunConfig& config) {
  json doc = to_json(config);
  doc.erase("output");
  doc.erase("threads");
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : doc.dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

Index resolve_dimension(const RunConfig& config, double state_amplitude) {
  if (config.n_max != 0) return config.n_max;
  return std::max<Index>(kDefaultDimension,
                         GuardBand::required_dimension(state_amplitude + config.grid.max_amplitude()));
}

PreparedState prepare_state(const RunConfig& config) {
  if (config.state.kind == StateKind::cat) {
    const double amplitude = std::abs(config.state.beta);
    return {make_cat_state(config.state.beta, resolve_dimension(config, amplitude)), amplitude};
  }

  std::ifstream in(config.state.file);
  if (!in) fail("cannot open product-state file '" + config.state.file + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    fail("product-state file is not valid JSON: " + std::string(e.what()));
  }
  require_keys(doc, "product-state file", {"rho", "sigma"});
  if (!doc.contains("rho") || !doc.contains("sigma")) fail("product-state file needs rho and sigma");
  const Eigen::MatrixXcd rho_small = read_matrix(doc.at("rho"), "rho");
  const Eigen::MatrixXcd sigma = read_matrix(doc.at("sigma"), "sigma");
  if (sigma.rows() != 2) fail("sigma must be 2x2");
  if (rho_small.rows() < 2) fail("rho must be at least 2x2");

  double mean = 0.0;
  for (Index n = 0; n < rho_small.rows(); ++n) mean += static_cast<double>(n) * rho_small(n, n).real();
  const double amplitude = std::sqrt(std::max(0.0, mean));
  const Index n_max = std::max(resolve_dimension(config, amplitude), rho_small.rows());
  FockOperator rho = FockOperator::Zero(n_max, n_max);
  rho.topLeftCorner(rho_small.rows(), rho_small.cols()) = rho_small;
  return {make_product_state(rho, sigma), amplitude};
}

}  // namespace vibronic::cli
