#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "ssfm/signal.hpp"

namespace ssfm {

// Physical constants of one fiber span, in ps / km / W units.
struct FiberParams {
  double alpha = 0.0;         // field-power attenuation [1/km]
  double beta2 = -21.7;       // group-velocity dispersion [ps^2/km]
  double gamma = 1.27;        // Kerr nonlinearity [1/(W km)]
  double span_length = 1000;  // [km]

  void validate() const;
};

// Numerical scheme: n_seg segments of length dz, low-pass filter edge at
// filter_fraction * Ws/2 (1.0 is the all-pass, unfiltered scheme).
struct SsfmConfig {
  double dz = 0.1;
  int n_seg = 1;
  double filter_fraction = 1.0;

  // Picks n_seg = round(Z / dz) and snaps dz to Z / n_seg.
  static SsfmConfig for_span(const FiberParams& fiber, double step_km, double filter_fraction = 1.0);
  void validate(const FiberParams& fiber) const;
};

struct LinearMultiplier {
  ComplexVector values;
  std::size_t passband_bins = 0;  // bins whose exponential was evaluated
};

class NumericalOverflow : public std::runtime_error {
 public:
  NumericalOverflow(int segment, const std::string& what)
      : std::runtime_error(what), segment_(segment) {}
  int segment() const { return segment_; }

 private:
  int segment_;
};

// Highest |signed bin| that passes a filter at filter_fraction * Ws/2.
// The edge is inclusive.
long filter_edge_bin(const SamplingGrid& grid, double filter_fraction);

// exp(-alpha dz / 2) * exp(2j pi^2 f^2 beta2 dz).
Complex linear_phase_factor(double f, const FiberParams& fiber, double dz);

// Filtered linear step. Stopband bins are set to zero without evaluating
// their exponential.
LinearMultiplier linear_multiplier(const SamplingGrid& grid, const FiberParams& fiber, const SsfmConfig& cfg);

// All-pass linear step of the unfiltered scheme, evaluated on every bin.
LinearMultiplier traditional_multiplier(const SamplingGrid& grid, const FiberParams& fiber, double dz);

Waveform nonlinear_step(Waveform w, double gamma, double dz);
void apply_nonlinear_step(std::span<Complex> samples, double gamma, double dz);

// n_seg segments of nonlinear step then linear step. Throws NumericalOverflow
// with the 0-based segment index if the field stops being finite.
Waveform propagate(const Waveform& w, const FiberParams& fiber, const SsfmConfig& cfg);

// Same loop driven by traditional_multiplier.
Waveform propagate_traditional(const Waveform& w, const FiberParams& fiber, int n_seg);

inline constexpr int kBenchmarkSamplesPerSymbol = 30;
inline constexpr double kBenchmarkStepKm = 0.1;

Waveform benchmark_output(const SymbolSequence& symbols, const LaunchSpec& launch, const FiberParams& fiber,
                          int samples_per_symbol = kBenchmarkSamplesPerSymbol,
                          double step_km = kBenchmarkStepKm);

}  // namespace ssfm
