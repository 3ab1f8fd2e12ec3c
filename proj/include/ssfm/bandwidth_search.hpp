#pragma once

#include <span>
#include <vector>

#include "ssfm/scenario.hpp"

namespace ssfm {

// Benchmark outputs and candidate launch fields for every seed of a scenario.
// Built once, then shared by every filter fraction evaluated against it.
struct PreparedScenario {
  Scenario scenario;
  std::vector<Waveform> benchmarks;
  std::vector<Waveform> candidate_inputs;
};

PreparedScenario prepare_scenario(const Scenario& scenario, int threads = 1);

struct FractionResult {
  double mean_nsd = 0.0;     // +inf if any seed overflowed
  int overflowed_seeds = 0;
};

// Per-seed NSD of the candidate at one filter fraction; +inf on overflow.
double candidate_nsd(const PreparedScenario& prepared, std::size_t seed_index, double filter_fraction);

// Seed-averaged NSD for each fraction. Averages accumulate in seed order.
std::vector<FractionResult> evaluate_fractions(const PreparedScenario& prepared, std::span<const double> fractions,
                                               int threads = 1);

struct BandwidthSweep {
  std::vector<double> fractions;
  std::vector<double> nsd_values;
  std::vector<int> overflowed_seeds;
  double best_fraction = 1.0;
  double best_nsd = 0.0;
};

// Argmin over nsd_values, ties resolved toward the larger fraction.
BandwidthSweep summarize_sweep(std::vector<double> fractions, std::vector<FractionResult> results);

void validate_search_fractions(std::span<const double> fractions);

BandwidthSweep sweep_bandwidth(const PreparedScenario& prepared, std::span<const double> fractions, int threads = 1);
BandwidthSweep sweep_bandwidth(const Scenario& scenario, std::span<const double> fractions, int threads = 1);

}  // namespace ssfm
