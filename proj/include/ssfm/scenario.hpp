#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ssfm/engine.hpp"

namespace ssfm {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// One benchmark-versus-candidate comparison over a seed set.
struct Scenario {
  std::string name = "custom";
  FiberParams fiber;
  LaunchSpec launch;
  int candidate_spp = 16;
  double candidate_dz = 0.1;               // km
  std::optional<double> filter_fraction;   // empty: optimize over search_fractions
  int n_symbols = 256;
  std::vector<std::uint64_t> seeds;
  int benchmark_spp = kBenchmarkSamplesPerSymbol;
  double benchmark_dz = kBenchmarkStepKm;  // km
  std::vector<double> search_fractions;

  void validate() const;
  SamplingGrid candidate_grid() const;
  SamplingGrid benchmark_grid() const;
};

// 0.50 ... 1.00 in 1% steps.
std::vector<double> default_search_fractions();
// Inclusive grid lo, lo+step, ..., hi, values snapped to 1e-9. Always ends at hi.
std::vector<double> fraction_grid(double lo, double hi, double step);

// "n" means seeds 0..n-1; otherwise a comma-separated list.
std::vector<std::uint64_t> parse_seeds(std::string_view text);

// `key = value` lines, `#` starts a comment. Keys absent from the text keep
// the values of `base`. Units: ps, km, dBm, GBd.
Scenario parse_scenario(std::istream& in, Scenario base = {});
Scenario load_scenario(const std::string& path, Scenario base = {});
std::string format_scenario(const Scenario& s);

enum class Axis { distance, power, time_discretization, bandwidth };

Axis parse_axis(std::string_view text);
std::string_view axis_column_name(Axis axis);
std::string_view axis_cli_name(Axis axis);

struct Experiment {
  std::string name;
  Scenario base;
  Axis axis = Axis::distance;
  std::vector<double> values;
};

inline const std::vector<std::string> kPresetNames = {"fig2", "fig3a", "fig3b", "fig3c", "fig3d"};

// Figure presets. fig3d yields one experiment per curve.
std::vector<Experiment> preset_experiments(std::string_view name, bool desk_scale);

}  // namespace ssfm
