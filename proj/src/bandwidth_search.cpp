#include "ssfm/bandwidth_search.hpp"

#include <cmath>
#include <limits>

#include "ssfm/metrics.hpp"
#include "ssfm/parallel.hpp"

namespace ssfm {

PreparedScenario prepare_scenario(const Scenario& scenario, int threads) {
  scenario.validate();
  PreparedScenario out{scenario, {}, {}};
  const std::size_t n = scenario.seeds.size();
  out.benchmarks.resize(n, Waveform{{}, scenario.benchmark_grid(), 0.0});
  out.candidate_inputs.resize(n, Waveform{{}, scenario.candidate_grid(), 0.0});
  const SamplingGrid candidate_grid = scenario.candidate_grid();

  parallel_for(n, threads, [&](std::size_t i) {
    const SymbolSequence symbols = gen_symbols(scenario.seeds[i], scenario.n_symbols);
    out.benchmarks[i] =
        benchmark_output(symbols, scenario.launch, scenario.fiber, scenario.benchmark_spp, scenario.benchmark_dz);
    out.candidate_inputs[i] = shape_pulse(symbols, candidate_grid, scenario.launch);
  });
  return out;
}

double candidate_nsd(const PreparedScenario& prepared, std::size_t seed_index, double filter_fraction) {
  const Scenario& s = prepared.scenario;
  const SsfmConfig cfg = SsfmConfig::for_span(s.fiber, s.candidate_dz, filter_fraction);
  try {
    const Waveform output = propagate(prepared.candidate_inputs.at(seed_index), s.fiber, cfg);
    return nsd(prepared.benchmarks.at(seed_index), output).nsd;
  } catch (const NumericalOverflow&) {
    return std::numeric_limits<double>::infinity();
  }
}

std::vector<FractionResult> evaluate_fractions(const PreparedScenario& prepared, std::span<const double> fractions,
                                               int threads) {
  const std::size_t n_seeds = prepared.benchmarks.size();
  std::vector<double> per_run(fractions.size() * n_seeds, 0.0);
  parallel_for(per_run.size(), threads, [&](std::size_t item) {
    per_run[item] = candidate_nsd(prepared, item % n_seeds, fractions[item / n_seeds]);
  });

  std::vector<FractionResult> out(fractions.size());
  for (std::size_t f = 0; f < fractions.size(); ++f) {
    double sum = 0.0;
    for (std::size_t s = 0; s < n_seeds; ++s) {
      const double v = per_run[f * n_seeds + s];
      if (std::isinf(v)) ++out[f].overflowed_seeds;
      sum += v;
    }
    out[f].mean_nsd = sum / static_cast<double>(n_seeds);
  }
  return out;
}

BandwidthSweep summarize_sweep(std::vector<double> fractions, std::vector<FractionResult> results) {
  BandwidthSweep out;
  out.fractions = std::move(fractions);
  for (const auto& r : results) {
    out.nsd_values.push_back(r.mean_nsd);
    out.overflowed_seeds.push_back(r.overflowed_seeds);
  }
  out.best_nsd = std::numeric_limits<double>::infinity();
  out.best_fraction = out.fractions.empty() ? 1.0 : out.fractions.back();
  for (std::size_t i = 0; i < out.fractions.size(); ++i) {
    if (out.nsd_values[i] <= out.best_nsd) {
      out.best_nsd = out.nsd_values[i];
      out.best_fraction = out.fractions[i];
    }
  }
  return out;
}

void validate_search_fractions(std::span<const double> fractions) {
  if (fractions.empty()) throw std::invalid_argument("sweep_bandwidth: no fractions given");
  bool has_unity = false;
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    if (!(fractions[i] > 0.0 && fractions[i] <= 1.0))
      throw std::invalid_argument("sweep_bandwidth: fractions must lie in (0, 1]");
    if (i > 0 && !(fractions[i] > fractions[i - 1]))
      throw std::invalid_argument("sweep_bandwidth: fractions must be strictly ascending");
    has_unity = has_unity || fractions[i] == 1.0;
  }
  if (!has_unity) throw std::invalid_argument("sweep_bandwidth: fractions must contain 1.0");
}

BandwidthSweep sweep_bandwidth(const PreparedScenario& prepared, std::span<const double> fractions, int threads) {
  validate_search_fractions(fractions);
  return summarize_sweep({fractions.begin(), fractions.end()}, evaluate_fractions(prepared, fractions, threads));
}

BandwidthSweep sweep_bandwidth(const Scenario& scenario, std::span<const double> fractions, int threads) {
  validate_search_fractions(fractions);
  return sweep_bandwidth(prepare_scenario(scenario, threads), fractions, threads);
}

}  // namespace ssfm
