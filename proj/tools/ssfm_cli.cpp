// Command-line front end for the SSFM simulator and experiment harness.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "ssfm/harness.hpp"
#include "ssfm/metrics.hpp"

namespace {

enum ExitCode : int { kOk = 0, kInvalidConfig = 2, kOverflow = 3, kIoError = 4 };

struct CommonOptions {
  std::string config;
  std::string preset;
  std::string seeds;
  std::string out;
  bool desk_scale = false;
  int threads = 1;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool with_preset = true) {
  cmd->add_option("--config", o.config, "Scenario file (key = value lines)");
  if (with_preset) cmd->add_option("--preset", o.preset, "Start from a figure preset (fig2, fig3a..fig3d)");
  cmd->add_option("--seeds", o.seeds, "Seed count n (seeds 0..n-1) or comma-separated list");
  cmd->add_option("--out", o.out, "Output path");
  cmd->add_flag("--desk-scale", o.desk_scale, "Fewer symbols, seeds and axis points");
  cmd->add_option("--threads", o.threads, "Worker threads, 0 = one per hardware thread")->check(CLI::NonNegativeNumber);
}

ssfm::Scenario build_scenario(const CommonOptions& o) {
  ssfm::Scenario base;
  if (!o.preset.empty()) {
    base = ssfm::preset_experiments(o.preset, o.desk_scale).front().base;
  } else {
    base.n_symbols = o.desk_scale ? 64 : 256;
    base.seeds = ssfm::parse_seeds(o.desk_scale ? "10" : "20");
    base.search_fractions = ssfm::default_search_fractions();
  }
  ssfm::Scenario s = o.config.empty() ? base : ssfm::load_scenario(o.config, base);
  if (!o.seeds.empty()) s.seeds = ssfm::parse_seeds(o.seeds);
  s.validate();
  return s;
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = text.substr(pos, comma - pos);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || !std::isfinite(v))
      throw ssfm::ConfigError("--values: cannot parse '" + item + "'");
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

void print_sweep(const ssfm::SweepResult& r) {
  std::fputs(ssfm::format_csv(r).c_str(), stdout);
  if (r.overflow_warnings > 0)
    std::fprintf(stderr, "warning: %d seed run(s) overflowed and count as infinite NSD\n", r.overflow_warnings);
}

int output_or_print(const ssfm::SweepResult& r, const std::string& out) {
  if (out.empty()) print_sweep(r);
  else {
    ssfm::emit_csv(r, out);
    if (r.overflow_warnings > 0)
      std::fprintf(stderr, "warning: %d seed run(s) overflowed and count as infinite NSD\n", r.overflow_warnings);
    std::printf("wrote %s\n", out.c_str());
  }
  return r.any_point_overflowed ? kOverflow : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Split-step Fourier fiber channel simulator with low-pass-filtered linear steps"};
  app.require_subcommand(1);

  CommonOptions propagate_opts;
  bool propagate_benchmark = false;
  std::optional<double> propagate_fraction;
  auto* propagate_cmd = app.add_subcommand("propagate", "Propagate one waveform and write its time-domain trace");
  add_common(propagate_cmd, propagate_opts);
  propagate_cmd->add_flag("--benchmark", propagate_benchmark, "Use the benchmark grid and step instead");
  propagate_cmd->add_option("--fraction", propagate_fraction, "Filter fraction of Ws/2 (default: scenario value or 1)");

  CommonOptions nsd_opts;
  auto* nsd_cmd = app.add_subcommand("nsd", "NSD of the candidate run against the benchmark run");
  add_common(nsd_cmd, nsd_opts);

  CommonOptions sweep_opts;
  std::string sweep_axis;
  std::string sweep_values;
  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep one scenario parameter");
  add_common(sweep_cmd, sweep_opts);
  sweep_cmd->add_option("--axis", sweep_axis, "distance | power | dt | bandwidth")
      ->required()
      ->check(CLI::IsMember({"distance", "power", "dt", "bandwidth"}));
  sweep_cmd->add_option("--values", sweep_values, "Comma-separated axis values (dt: samples per symbol)")->required();

  CommonOptions optimize_opts;
  auto* optimize_cmd = app.add_subcommand("optimize-bandwidth", "Grid-search the filter fraction");
  add_common(optimize_cmd, optimize_opts);

  CommonOptions reproduce_opts;
  std::string reproduce_target;
  auto* reproduce_cmd = app.add_subcommand("reproduce", "Run a figure preset and write CSV files");
  add_common(reproduce_cmd, reproduce_opts, false);
  reproduce_cmd->add_option("figure", reproduce_target, "fig2 | fig3a | fig3b | fig3c | fig3d")
      ->required()
      ->check(CLI::IsMember(ssfm::kPresetNames));

  CommonOptions show_opts;
  auto* show_cmd = app.add_subcommand("show-config", "Print the effective scenario file");
  add_common(show_cmd, show_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalidConfig;
  }

  try {
    if (*propagate_cmd) {
      const auto& o = propagate_opts;
      const ssfm::Scenario s = build_scenario(o);
      const auto symbols = ssfm::gen_symbols(s.seeds.front(), s.n_symbols);
      const ssfm::Waveform out = [&] {
        if (propagate_benchmark)
          return ssfm::benchmark_output(symbols, s.launch, s.fiber, s.benchmark_spp, s.benchmark_dz);
        const double fraction = propagate_fraction.value_or(s.filter_fraction.value_or(1.0));
        const auto input = ssfm::shape_pulse(symbols, s.candidate_grid(), s.launch);
        return ssfm::propagate(input, s.fiber, ssfm::SsfmConfig::for_span(s.fiber, s.candidate_dz, fraction));
      }();
      if (o.out.empty()) std::fputs(ssfm::format_trace_csv(out).c_str(), stdout);
      else ssfm::write_trace_csv(out, o.out);
      return kOk;
    }

    if (*nsd_cmd) {
      const ssfm::Scenario s = build_scenario(nsd_opts);
      const auto r = ssfm::run_scenario(s, nsd_opts.threads);
      std::printf("scenario          %s\n", s.name.c_str());
      std::printf("reference grid    %zu samples, dt = %.6g ps\n", r.reference_grid.n_samples(), r.reference_grid.dt());
      std::printf("candidate grid    %zu samples, dt = %.6g ps\n", r.candidate_grid.n_samples(), r.candidate_grid.dt());
      std::printf("seeds             %d\n", r.n_seeds);
      std::printf("nsd_without_lpf   %.15g\n", r.nsd_without_lpf);
      std::printf("nsd_with_lpf      %.15g\n", r.nsd_with_lpf);
      std::printf("filter_fraction   %.15g\n", r.chosen_fraction);
      if (r.overflowed_with + r.overflowed_without > 0)
        std::fprintf(stderr, "warning: %d seed run(s) overflowed\n", r.overflowed_with + r.overflowed_without);
      if (!nsd_opts.out.empty()) {
        ssfm::SweepResult row{"filter_fraction", {r.chosen_fraction}, {r.nsd_without_lpf}, {r.nsd_with_lpf},
                              {r.chosen_fraction}, 0, false};
        ssfm::emit_csv(row, nsd_opts.out);
      }
      return r.all_seeds_overflowed() ? kOverflow : kOk;
    }

    if (*sweep_cmd) {
      const ssfm::Scenario s = build_scenario(sweep_opts);
      const auto values = parse_values(sweep_values);
      const auto r = ssfm::sweep(ssfm::parse_axis(sweep_axis), s, values, sweep_opts.threads);
      return output_or_print(r, sweep_opts.out);
    }

    if (*optimize_cmd) {
      const ssfm::Scenario s = build_scenario(optimize_opts);
      const auto r = ssfm::sweep(ssfm::Axis::bandwidth, s, s.search_fractions, optimize_opts.threads);
      const int rc = output_or_print(r, optimize_opts.out);
      std::size_t best = 0;
      for (std::size_t i = 0; i < r.nsd_with_lpf.size(); ++i)
        if (r.nsd_with_lpf[i] <= r.nsd_with_lpf[best]) best = i;
      std::printf("best_fraction %.15g best_nsd %.15g\n", r.axis_values[best], r.nsd_with_lpf[best]);
      return rc;
    }

    if (*reproduce_cmd) {
      const auto& o = reproduce_opts;
      ssfm::ReproduceOptions options;
      options.desk_scale = o.desk_scale;
      options.threads = o.threads;
      if (!o.seeds.empty()) options.seeds = ssfm::parse_seeds(o.seeds);
      const std::filesystem::path out_dir = o.out.empty() ? std::filesystem::path("results") : std::filesystem::path(o.out);
      const auto report = ssfm::reproduce(reproduce_target, out_dir, options);
      for (const auto& f : report.files) std::printf("wrote %s\n", f.string().c_str());
      for (const auto& r : report.results)
        if (r.overflow_warnings > 0)
          std::fprintf(stderr, "warning: %d seed run(s) overflowed in %s sweep\n", r.overflow_warnings,
                       r.axis_name.c_str());
      return report.any_point_overflowed ? kOverflow : kOk;
    }

    if (*show_cmd) {
      std::fputs(ssfm::format_scenario(build_scenario(show_opts)).c_str(), stdout);
      return kOk;
    }
  } catch (const ssfm::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kIoError;
  } catch (const std::ios_base::failure& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kIoError;
  } catch (const ssfm::NumericalOverflow& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kOverflow;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInvalidConfig;
  }
  return kOk;
}
