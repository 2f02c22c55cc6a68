#include "vibronic/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <ostream>

#include <fmt/format.h>

#include "vibronic/cli/field_io.hpp"

namespace vibronic::cli {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string output_path(const RunConfig& config, const std::string& name) {
  return (std::filesystem::path(config.output.directory) / name).string();
}

void prepare_output(const RunConfig& config) {
  std::error_code ec;
  std::filesystem::create_directories(config.output.directory, ec);
  if (ec) {
    throw Error(ErrorCode::invalid_argument,
                "cannot create output directory '" + config.output.directory + "': " + ec.message());
  }
}

// Internal times are in units of 1/|Omega| with |Omega| = 2 pi rabi_hz.
double to_seconds(const RunConfig& config, double internal) {
  return internal / (2.0 * kPi * config.rabi_hz);
}

json schedules_to_json(const RunConfig& config, const SampleRun& run) {
  const DriveConfig drive = config.drive();
  json filters = json::array();
  for (const CycleSchedule& s : run.bank.filters) {
    double filter_time = 0.0;
    for (const double tau : s.taus) filter_time += tau;
    filters.push_back({
        {"m", s.target_m},
        {"k", s.cycles()},
        {"multipliers", s.multipliers},
        {"leakage", s.leakage},
        {"rabi_frequency_rad_per_s",
         rabi_frequency(drive, s.target_m) * 2.0 * kPi * config.rabi_hz},
        {"tau1_pi_s", to_seconds(config, first_pulse_duration(drive, s.target_m, Tau1Variant::pi))},
        {"tau1_half_pi_s",
         to_seconds(config, first_pulse_duration(drive, s.target_m, Tau1Variant::half_pi))},
        {"filter_duration_s", to_seconds(config, filter_time)},
    });
  }
  return {{"n_stat", run.bank.n_stat},
          {"leakage_budget", config.tomography.leakage_budget},
          {"p_max", config.tomography.p_max},
          {"k_cap", config.tomography.k_cap},
          {"filters", filters}};
}

int report_error(const Error& e, std::ostream& err) {
  err << "error: " << e.what() << "\n";
  return e.code() == ErrorCode::schedule_infeasible ? kExitInfeasible : kExitUsage;
}

}  // namespace

ExactRun run_exact(const RunConfig& config) {
  config.validate();
  ExactRun run;
  const PreparedState prepared = prepare_state(config);
  run.n_max = prepared.state.dimension();
  run.field = exact_field(prepared.state, config.grid, config.threads);
  run.marginal = integrate_field(run.field);
  return run;
}

SampleRun run_sample(const RunConfig& config) {
  config.validate();
  SampleRun run;
  const PreparedState prepared = prepare_state(config);
  const VibronicDensity& state = prepared.state;
  run.n_max = state.dimension();
  require_guard_band(prepared.amplitude + config.grid.max_amplitude(), run.n_max, "sample");

  const auto schedule_start = Clock::now();
  run.fock_count = config.tomography.fock_count > 0
                       ? config.tomography.fock_count
                       : fock_cutoff_over_grid(state, config.grid, config.tomography.tail,
                                               config.threads);
  run.bank = build_schedule_bank(config.drive(), run.fock_count, run.n_max,
                                 config.schedule_options());
  run.schedule_seconds = seconds_since(schedule_start);

  const auto sampling_start = Clock::now();
  run.sampled = sample_grid(state, config.grid, config.drive(), run.bank, config.sampler());
  run.sampling_seconds = seconds_since(sampling_start);
  return run;
}

std::string exact_field_json(const RunConfig& config, const ExactRun& run) {
  FieldMetadata meta{"exact", config_hash(config), {{"n_max", run.n_max}}};
  return field_to_json(run.field, meta);
}

std::string sampled_field_json(const RunConfig& config, const SampleRun& run) {
  FieldMetadata meta{"sampled",
                     config_hash(config),
                     {{"n_max", run.n_max},
                      {"M", run.fock_count},
                      {"master_seed", config.master_seed},
                      {"mode", to_string(config.mode)},
                      {"trials_per_setting", config.sampler().trials_per_setting()}}};
  return field_to_json(run.sampled.field, meta);
}

CompareReport compare_fields(const WignerField& exact, const WignerField& sampled) {
  if (!(exact.grid == sampled.grid) || exact.samples.size() != sampled.samples.size()) {
    throw Error(ErrorCode::grid_mismatch, "exact and sampled fields use different grids");
  }
  CompareReport report;
  const char* names[] = {"w11", "w22", "re_w12", "im_w12"};
  const std::size_t count = exact.samples.size();
  report.pass = true;
  for (std::size_t c = 0; c < 4; ++c) {
    ComponentReport& r = report.components[c];
    r.name = names[c];
    std::size_t in3 = 0, in4 = 0;
    for (std::size_t k = 0; k < count; ++k) {
      const WignerSample& e = exact.samples[k];
      const WignerSample& s = sampled.samples[k];
      const WignerStderr se = s.stderr.value_or(WignerStderr{});
      double diff = 0.0, sigma = 0.0;
      switch (c) {
        case 0: diff = s.w(0, 0).real() - e.w(0, 0).real(); sigma = se.w11; break;
        case 1: diff = s.w(1, 1).real() - e.w(1, 1).real(); sigma = se.w22; break;
        case 2: diff = s.w(0, 1).real() - e.w(0, 1).real(); sigma = se.re_w12; break;
        default: diff = s.w(0, 1).imag() - e.w(0, 1).imag(); sigma = se.im_w12; break;
      }
      const double err = std::abs(diff);
      r.max_abs_error = std::max(r.max_abs_error, err);
      r.mean_abs_error += err;
      r.mean_stderr += sigma;
      if (err <= 3.0 * sigma) ++in3;
      if (err <= 4.0 * sigma) ++in4;
    }
    const double n = static_cast<double>(std::max<std::size_t>(count, 1));
    r.mean_abs_error /= n;
    r.mean_stderr /= n;
    r.within_3sigma = static_cast<double>(in3) / n;
    r.within_4sigma = static_cast<double>(in4) / n;
    r.pass = r.within_4sigma >= 0.95 && r.mean_abs_error <= 2.0 * r.mean_stderr;
    report.pass = report.pass && r.pass;
  }
  return report;
}

json to_json(const CompareReport& report) {
  json components = json::array();
  for (const ComponentReport& r : report.components) {
    components.push_back({{"component", r.name},
                          {"max_abs_error", r.max_abs_error},
                          {"mean_abs_error", r.mean_abs_error},
                          {"mean_stderr", r.mean_stderr},
                          {"within_3sigma", r.within_3sigma},
                          {"within_4sigma", r.within_4sigma},
                          {"pass", r.pass}});
  }
  return {{"pass", report.pass},
          {"thresholds", {{"within_4sigma_min", 0.95}, {"mean_error_over_stderr_max", 2.0}}},
          {"components", components}};
}

int cmd_exact(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const auto start = Clock::now();
    const ExactRun run = run_exact(config);
    prepare_output(config);
    if (config.output.json) write_text_file(output_path(config, "exact_field.json"), exact_field_json(config, run));
    if (config.output.csv) write_text_file(output_path(config, "exact_field.csv"), field_to_csv(run.field));

    const ElectronicMarginal& m = run.marginal;
    const json marginal = {
        {"sigma",
         {{"re", {{m.sigma(0, 0).real(), m.sigma(0, 1).real()}, {m.sigma(1, 0).real(), m.sigma(1, 1).real()}}},
          {"im", {{m.sigma(0, 0).imag(), m.sigma(0, 1).imag()}, {m.sigma(1, 0).imag(), m.sigma(1, 1).imag()}}}}},
        {"quadrature_error", m.quadrature_error},
        {"edge_ratio", m.edge_ratio},
        {"coverage_ok", m.coverage_ok},
        {"warning", m.warning},
        {"n_max", run.n_max},
        {"config_hash", config_hash(config)},
    };
    write_text_file(output_path(config, "marginal.json"), marginal.dump(2) + "\n");
    out << fmt::format("exact field: {} points, N_max {}, {:.2f} s\n", run.field.samples.size(),
                       run.n_max, seconds_since(start));
    out << fmt::format("electronic marginal: s11 {:.6f}  s22 {:.6f}  s21 {:.6e}{:+.6e}i  (quadrature error {:.1e})\n",
                       m.sigma(0, 0).real(), m.sigma(1, 1).real(), m.sigma(1, 0).real(),
                       m.sigma(1, 0).imag(), m.quadrature_error);
    if (!m.coverage_ok) err << "warning: " << m.warning << "\n";
    return kExitOk;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

int cmd_sample(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const auto start = Clock::now();
    const SampleRun run = run_sample(config);
    prepare_output(config);
    if (config.output.json) {
      write_text_file(output_path(config, "sampled_field.json"), sampled_field_json(config, run));
    }
    if (config.output.csv) {
      write_text_file(output_path(config, "sampled_field.csv"), field_to_csv(run.sampled.field));
    }
    write_text_file(output_path(config, "schedules.json"), schedules_to_json(config, run).dump(2) + "\n");

    int max_k = 0;
    for (const CycleSchedule& s : run.bank.filters) max_k = std::max(max_k, s.cycles());
    const DriveConfig drive = config.drive();
    const json manifest = {
        {"config", to_json(config)},
        {"config_hash", config_hash(config)},
        {"master_seed", config.master_seed},
        {"mode", to_string(config.mode)},
        {"allocation", to_string(config.allocation)},
        {"trials_per_setting", config.sampler().trials_per_setting()},
        {"n_max", run.n_max},
        {"M", run.fock_count},
        {"max_cycles", max_k},
        {"rng", "splitmix64 counter streams keyed by (master_seed, grid_index, m, variant, phase_index)"},
        {"pulse_durations",
         {{"rabi_hz", config.rabi_hz},
          {"omega_rad_per_s", 2.0 * kPi * config.rabi_hz},
          {"tau1_pi_m0_s", to_seconds(config, first_pulse_duration(drive, 0, Tau1Variant::pi))},
          {"tau1_half_pi_m0_s", to_seconds(config, first_pulse_duration(drive, 0, Tau1Variant::half_pi))}}},
        {"timings_s",
         {{"schedules", run.schedule_seconds},
          {"sampling", run.sampling_seconds},
          {"total", seconds_since(start)}}},
    };
    write_text_file(output_path(config, "manifest.json"), manifest.dump(2) + "\n");
    out << fmt::format("sampled field: {} points, M {}, up to {} cycles, {} trials per setting, {:.2f} s\n",
                       run.sampled.field.samples.size(), run.fock_count, max_k,
                       config.sampler().trials_per_setting(), seconds_since(start));
    return kExitOk;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

int cmd_compare(const std::string& exact_path, const std::string& sampled_path,
                const std::string& report_path, std::ostream& out, std::ostream& err) {
  try {
    const LoadedField exact = read_field_json(exact_path);
    const LoadedField sampled = read_field_json(sampled_path);
    const CompareReport report = compare_fields(exact.field, sampled.field);
    out << fmt::format("{:<8} {:>12} {:>12} {:>12} {:>9} {:>9}\n", "comp", "max|err|",
                       "mean|err|", "mean se", "<=3se", "<=4se");
    for (const ComponentReport& r : report.components) {
      out << fmt::format("{:<8} {:>12.4e} {:>12.4e} {:>12.4e} {:>9.3f} {:>9.3f} {}\n", r.name,
                         r.max_abs_error, r.mean_abs_error, r.mean_stderr, r.within_3sigma,
                         r.within_4sigma, r.pass ? "ok" : "FAIL");
    }
    out << (report.pass ? "PASS\n" : "FAIL\n");
    if (!report_path.empty()) write_text_file(report_path, to_json(report).dump(2) + "\n");
    return report.pass ? kExitOk : kExitCompareFailed;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

}  // namespace vibronic::cli
