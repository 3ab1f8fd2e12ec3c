#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ssfm/bandwidth_search.hpp"
#include "ssfm/scenario.hpp"

namespace ssfm {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScenarioResult {
  double nsd_without_lpf = 0.0;
  double nsd_with_lpf = 0.0;
  double chosen_fraction = 1.0;
  int overflowed_without = 0;
  int overflowed_with = 0;
  int n_seeds = 0;
  SamplingGrid reference_grid;
  SamplingGrid candidate_grid;
  std::optional<BandwidthSweep> sweep;  // set when the fraction was optimized

  bool all_seeds_overflowed() const { return n_seeds > 0 && overflowed_with == n_seeds; }
};

ScenarioResult run_scenario(const Scenario& scenario, int threads = 1);
ScenarioResult run_prepared(const PreparedScenario& prepared, int threads = 1);

struct SweepResult {
  std::string axis_name;
  std::vector<double> axis_values;
  std::vector<double> nsd_without_lpf;
  std::vector<double> nsd_with_lpf;
  std::vector<double> chosen_fractions;
  int overflow_warnings = 0;        // overflowed seed runs across the sweep
  bool any_point_overflowed = false;  // some point lost every seed
};

Scenario with_axis_value(const Scenario& base, Axis axis, double value);

// One run_scenario per axis value. A bandwidth axis holds each value as a
// fixed filter fraction and reuses one set of benchmark outputs.
SweepResult sweep(Axis axis, const Scenario& base, std::span<const double> values, int threads = 1);

std::string format_csv(const SweepResult& result);
void emit_csv(const SweepResult& result, const std::filesystem::path& path);

// Columns t_ps, re, im.
std::string format_trace_csv(const Waveform& w);
void write_trace_csv(const Waveform& w, const std::filesystem::path& path);

struct ReproduceOptions {
  bool desk_scale = false;
  std::optional<std::vector<std::uint64_t>> seeds;
  int threads = 1;
};

struct ReproduceReport {
  std::vector<std::filesystem::path> files;
  std::vector<SweepResult> results;
  bool any_point_overflowed = false;
};

// Runs every experiment of a preset and writes <out_dir>/<experiment>.csv.
// fig2 also writes time-domain traces for the first seed.
ReproduceReport reproduce(std::string_view preset, const std::filesystem::path& out_dir,
                          const ReproduceOptions& options);

}  // namespace ssfm
