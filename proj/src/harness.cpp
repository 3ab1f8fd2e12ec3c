#include "ssfm/harness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "ssfm/metrics.hpp"

namespace ssfm {
namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace

ScenarioResult run_prepared(const PreparedScenario& prepared, int threads) {
  const Scenario& s = prepared.scenario;
  ScenarioResult out{0.0, 0.0, 1.0, 0, 0, static_cast<int>(s.seeds.size()), s.benchmark_grid(), s.candidate_grid(),
                     std::nullopt};

  if (!s.filter_fraction) {
    BandwidthSweep bw = sweep_bandwidth(prepared, s.search_fractions, threads);
    const auto unity = bw.fractions.size() - 1;  // 1.0 closes the validated grid
    out.nsd_without_lpf = bw.nsd_values[unity];
    out.overflowed_without = bw.overflowed_seeds[unity];
    for (std::size_t i = 0; i < bw.fractions.size(); ++i) {
      if (bw.fractions[i] == bw.best_fraction) out.overflowed_with = bw.overflowed_seeds[i];
    }
    out.nsd_with_lpf = bw.best_nsd;
    out.chosen_fraction = bw.best_fraction;
    out.sweep = std::move(bw);
    return out;
  }

  const double fraction = *s.filter_fraction;
  std::vector<double> fractions{fraction};
  if (fraction != 1.0) fractions.push_back(1.0);
  const auto results = evaluate_fractions(prepared, fractions, threads);
  out.nsd_with_lpf = results[0].mean_nsd;
  out.overflowed_with = results[0].overflowed_seeds;
  out.nsd_without_lpf = results.back().mean_nsd;
  out.overflowed_without = results.back().overflowed_seeds;
  out.chosen_fraction = fraction;
  return out;
}

ScenarioResult run_scenario(const Scenario& scenario, int threads) {
  return run_prepared(prepare_scenario(scenario, threads), threads);
}

Scenario with_axis_value(const Scenario& base, Axis axis, double value) {
  Scenario s = base;
  switch (axis) {
    case Axis::distance:
      s.fiber.span_length = value;
      break;
    case Axis::power:
      s.launch.power_dbm = value;
      break;
    case Axis::time_discretization:
      if (value != std::round(value)) throw ConfigError("dt axis values are samples per symbol and must be integers");
      s.candidate_spp = static_cast<int>(value);
      break;
    case Axis::bandwidth:
      s.filter_fraction = value;
      break;
  }
  s.validate();
  return s;
}

SweepResult sweep(Axis axis, const Scenario& base, std::span<const double> values, int threads) {
  SweepResult out;
  out.axis_name = std::string(axis_column_name(axis));
  const int n_seeds = static_cast<int>(base.seeds.size());

  auto record = [&](double value, double without, double with, double fraction, int ovf_without, int ovf_with) {
    out.axis_values.push_back(value);
    out.nsd_without_lpf.push_back(without);
    out.nsd_with_lpf.push_back(with);
    out.chosen_fractions.push_back(fraction);
    out.overflow_warnings += ovf_without + ovf_with;
    if (ovf_with == n_seeds || ovf_without == n_seeds) out.any_point_overflowed = true;
  };

  if (axis == Axis::bandwidth) {
    if (values.empty()) return out;
    for (double v : values) with_axis_value(base, axis, v);
    std::vector<double> fractions(values.begin(), values.end());
    fractions.push_back(1.0);
    const PreparedScenario prepared = prepare_scenario(base, threads);
    const auto results = evaluate_fractions(prepared, fractions, threads);
    const auto& unity = results.back();
    for (std::size_t i = 0; i < values.size(); ++i)
      record(values[i], unity.mean_nsd, results[i].mean_nsd, values[i], unity.overflowed_seeds,
             results[i].overflowed_seeds);
    return out;
  }

  for (double v : values) {
    const ScenarioResult r = run_scenario(with_axis_value(base, axis, v), threads);
    record(v, r.nsd_without_lpf, r.nsd_with_lpf, r.chosen_fraction, r.overflowed_without, r.overflowed_with);
  }
  return out;
}

std::string format_csv(const SweepResult& result) {
  std::string out = result.axis_name + ",nsd_without_lpf,nsd_with_lpf,chosen_fraction\n";
  for (std::size_t i = 0; i < result.axis_values.size(); ++i) {
    out += num(result.axis_values[i]) + ',' + num(result.nsd_without_lpf[i]) + ',' + num(result.nsd_with_lpf[i]) +
           ',' + num(result.chosen_fractions[i]) + '\n';
  }
  return out;
}

void emit_csv(const SweepResult& result, const std::filesystem::path& path) { write_file(path, format_csv(result)); }

std::string format_trace_csv(const Waveform& w) {
  std::string out = "t_ps,re,im\n";
  for (std::size_t i = 0; i < w.samples.size(); ++i)
    out += num(w.grid.time(i)) + ',' + num(w.samples[i].real()) + ',' + num(w.samples[i].imag()) + '\n';
  return out;
}

void write_trace_csv(const Waveform& w, const std::filesystem::path& path) { write_file(path, format_trace_csv(w)); }

namespace {

void write_fig2_traces(const Experiment& e, const SweepResult& result, const std::filesystem::path& out_dir,
                       ReproduceReport& report) {
  const Scenario& base = e.base;
  const SymbolSequence symbols = gen_symbols(base.seeds.front(), base.n_symbols);
  const Waveform reference =
      benchmark_output(symbols, base.launch, base.fiber, base.benchmark_spp, base.benchmark_dz);
  auto emit = [&](const Waveform& w, const std::string& name) {
    const auto path = out_dir / name;
    write_trace_csv(w, path);
    report.files.push_back(path);
  };
  emit(reference, e.name + "_trace_benchmark.csv");

  for (std::size_t i = 0; i < result.axis_values.size(); ++i) {
    const int spp = static_cast<int>(result.axis_values[i]);
    const SamplingGrid grid = make_grid(base.n_symbols, spp, base.launch.symbol_time_ps());
    const Waveform input = shape_pulse(symbols, grid, base.launch);
    const std::string stem = e.name + "_trace_spp" + std::to_string(spp);
    try {
      emit(propagate(input, base.fiber, SsfmConfig::for_span(base.fiber, base.candidate_dz, 1.0)), stem + ".csv");
      emit(propagate(input, base.fiber, SsfmConfig::for_span(base.fiber, base.candidate_dz, result.chosen_fractions[i])),
           stem + "_lpf.csv");
    } catch (const NumericalOverflow&) {
      report.any_point_overflowed = true;
    }
  }
}

}  // namespace

ReproduceReport reproduce(std::string_view preset, const std::filesystem::path& out_dir,
                          const ReproduceOptions& options) {
  auto experiments = preset_experiments(preset, options.desk_scale);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + out_dir.string() + "': " + ec.message());

  ReproduceReport report;
  for (auto& e : experiments) {
    if (options.seeds) e.base.seeds = *options.seeds;
    e.base.validate();
    SweepResult result = sweep(e.axis, e.base, e.values, options.threads);
    const auto path = out_dir / (e.name + ".csv");
    emit_csv(result, path);
    report.files.push_back(path);
    report.any_point_overflowed = report.any_point_overflowed || result.any_point_overflowed;
    if (preset == "fig2") write_fig2_traces(e, result, out_dir, report);
    report.results.push_back(std::move(result));
  }
  return report;
}

}  // namespace ssfm
