// msched: convergence runs and scheduler sweeps.
//
//   msched converge --config run.cfg [--seed U64] [--out PATH]
//   msched sweep    --config sweep.cfg [--seed U64] [--out PATH] [--workers N]
//
// Exit codes: 0 success, 2 configuration error, 3 runtime error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "msched/harness.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kRuntimeError = 3;

int workers_from_env() {
  const char* env = std::getenv("MSCHED_WORKERS");
  if (!env || !*env) return 0;
  try {
    return std::stoi(env);
  } catch (const std::exception&) {
    throw msched::harness::ConfigError(0, std::string("MSCHED_WORKERS is not an integer: '") + env + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grover-inspired QRL scheduling simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  std::optional<int> workers;

  auto* converge = app.add_subcommand("converge", "Train one agent and log validation reward per epoch");
  auto* sweep = app.add_subcommand("sweep", "Compare schedulers across users, antennas or SNR");
  for (auto* sub : {converge, sweep}) {
    sub->add_option("--config", config_path, "Experiment config file")->required();
    sub->add_option("--seed", seed, "Override the config seed");
    sub->add_option("--out", out_path, "CSV output path (JSON mirror written alongside)");
    sub->add_option("--workers", workers, "Worker threads, 0 for all cores (default: MSCHED_WORKERS or all cores)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kConfigError;
  }

  using namespace msched::harness;
  ExperimentSpec spec;
  int n_workers = 0;
  try {
    spec = load_config(config_path);
    if (seed) spec.seed = *seed;
    n_workers = workers ? *workers : workers_from_env();
    if (n_workers < 0) throw ConfigError(0, "worker count must be non-negative, got " + std::to_string(n_workers));
    if (converge->parsed() && spec.axis != SweepAxis::Epochs) {
      throw ConfigError(0, "converge needs axis=epochs; this config sweeps " + std::string(to_string(spec.axis)));
    }
    if (sweep->parsed() && spec.axis == SweepAxis::Epochs) {
      throw ConfigError(0, "sweep needs a users, antennas or snr axis");
    }
  } catch (const ConfigError& e) {
    std::cerr << "msched: " << e.what() << '\n';
    return kConfigError;
  }

  if (out_path.empty()) out_path = converge->parsed() ? "converge.csv" : "sweep.csv";
  try {
    const auto rows = converge->parsed() ? run_convergence(spec) : run_sweep(spec, n_workers);
    const auto json = write_results(out_path, rows);
    std::cerr << "msched: wrote " << rows.size() << " rows to " << out_path << " and " << json.string() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "msched: " << e.what() << '\n';
    return kRuntimeError;
  }
  return 0;
}
