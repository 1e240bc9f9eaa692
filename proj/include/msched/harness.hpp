#pragma once

// Experiment configuration, convergence runs and parameter sweeps.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "msched/qrl.hpp"

namespace msched::harness {

enum class SweepAxis { Epochs, Users, Antennas, Snr };
enum class Method { Exhaustive, Greedy, Qrl, Random };  // output order

std::string_view to_string(SweepAxis axis);
std::string_view to_string(Method method);

// Line-precise configuration diagnostics. line() is 0 for whole-file checks.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

struct ExperimentSpec {
  SweepAxis axis = SweepAxis::Epochs;
  std::vector<double> axis_values;  // strictly increasing; empty for Epochs

  // Base point; the sweep axis overrides one of these per grid point.
  int users = 6;
  int antennas = 16;
  int array_rows = 0;  // 0: derived from antennas
  int array_cols = 0;
  double snr_db = 20.0;
  double rician_k = 3.0;
  double corr_coeff = 0.5;

  qrl::TrainConfig train;  // channel part is filled per grid point
  std::vector<Method> methods{Method::Exhaustive, Method::Greedy, Method::Qrl, Method::Random};
  int realizations = 20;
  std::uint64_t seed = 1;

  bool has(Method m) const;

  // Channel config for one grid point and realization seed.
  chanmod::ChannelConfig channel_config(int users, int antennas, double snr_db, std::uint64_t seed) const;
};

// Whitespace-separated key=value pairs, '#' to end of line is a comment.
// Unknown keys, malformed values and infeasible combinations throw
// ConfigError.
ExperimentSpec parse_config(std::string_view text);
ExperimentSpec load_config(const std::filesystem::path& path);

// Default grid for a sweep axis.
std::vector<double> default_axis_values(SweepAxis axis);

struct ResultRow {
  std::string method;
  int users = 0;
  int antennas = 0;
  double snr_db = 0.0;
  int epoch = -1;  // -1 for sweep summaries
  double mean_sum_rate = 0.0;
  double std_sum_rate = 0.0;
  double pf_value = 0.0;
  std::uint64_t seed = 0;
};

inline constexpr std::string_view kCsvHeader =
    "method,T,A,snr_db,epoch,mean_sum_rate,std_sum_rate,pf_value,seed";

// One row per epoch of a single QRL training run.
std::vector<ResultRow> run_convergence(const ExperimentSpec& spec);

// Rows for every (method, axis value), sorted by method then axis value.
// `workers` <= 0 picks the hardware concurrency.
std::vector<ResultRow> run_sweep(const ExperimentSpec& spec, int workers = 1);

void write_csv(std::ostream& os, const std::vector<ResultRow>& rows);
void write_json(std::ostream& os, const std::vector<ResultRow>& rows);

// Writes `path` as CSV and the JSON mirror next to it; returns the JSON path.
// Throws std::runtime_error naming the path on I/O failure.
std::filesystem::path write_results(const std::filesystem::path& path, const std::vector<ResultRow>& rows);

}  // namespace msched::harness
