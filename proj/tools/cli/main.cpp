#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "vibronic/cli/commands.hpp"

namespace {

using namespace vibronic;
using namespace vibronic::cli;

struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<long> trials;
  std::optional<std::string> grid;
  std::optional<std::string> beta;
  std::optional<double> eta;
  std::optional<std::string> out_dir;
  std::optional<std::string> mode;
  std::optional<unsigned> threads;
};

void add_run_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "JSON run configuration");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--trials", o.trials, "trials per probe setting");
  cmd->add_option("--grid", o.grid, "re_min,re_max,n_re,im_min,im_max,n_im");
  cmd->add_option("--beta", o.beta, "cat amplitude: re or re,im");
  cmd->add_option("--eta", o.eta, "Lamb-Dicke parameter");
  cmd->add_option("--out-dir", o.out_dir, "output directory");
  cmd->add_option("--mode", o.mode, "fast_analytic or trajectory");
  cmd->add_option("--threads", o.threads, "worker threads (0 = all cores)");
}

RunConfig resolve(const Overrides& o) {
  RunConfig c = o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
  if (o.seed) c.master_seed = *o.seed;
  if (o.trials) c.trials = *o.trials;
  if (o.grid) c.grid = parse_grid(*o.grid);
  if (o.beta) {
    c.state.kind = StateKind::cat;
    c.state.beta = parse_complex(*o.beta);
  }
  if (o.eta) c.eta = *o.eta;
  if (o.out_dir) c.output.directory = *o.out_dir;
  if (o.mode) c.mode = parse_mode(*o.mode);
  if (o.threads) c.threads = *o.threads;
  c.validate();
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wigner-function-matrix reconstruction for a trapped two-level ion"};
  app.require_subcommand(1);

  Overrides exact_opts, sample_opts;
  CLI::App* exact = app.add_subcommand("exact", "evaluate the exact Wigner-function matrix on a grid");
  add_run_options(exact, exact_opts);
  CLI::App* sample = app.add_subcommand("sample", "simulate the probe experiment and reconstruct");
  add_run_options(sample, sample_opts);

  std::string exact_file, sampled_file, report_file;
  CLI::App* compare = app.add_subcommand("compare", "compare a sampled field with the exact one");
  compare->add_option("exact_file", exact_file, "exact field JSON")->required();
  compare->add_option("sampled_file", sampled_file, "sampled field JSON")->required();
  compare->add_option("--report", report_file, "write the report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*exact) return cmd_exact(resolve(exact_opts), std::cout, std::cerr);
    if (*sample) return cmd_sample(resolve(sample_opts), std::cout, std::cerr);
    return cmd_compare(exact_file, sampled_file, report_file, std::cout, std::cerr);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::schedule_infeasible ? kExitInfeasible : kExitUsage;
  }
}
