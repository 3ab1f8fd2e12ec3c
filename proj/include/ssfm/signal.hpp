#pragma once

#include <cstdint>
#include <vector>

#include "ssfm/fft.hpp"

namespace ssfm {

// Uniform discretization of one simulation run. Times in ps, rates in 1/ps.
// The time window spans n_symbols symbol slots and wraps cyclically.
class SamplingGrid {
 public:
  SamplingGrid(int n_symbols, int samples_per_symbol, double symbol_time_ps);

  int n_symbols() const { return n_symbols_; }
  int samples_per_symbol() const { return samples_per_symbol_; }
  std::size_t n_samples() const { return static_cast<std::size_t>(n_symbols_) * samples_per_symbol_; }
  double symbol_time() const { return symbol_time_; }
  double dt() const { return symbol_time_ / samples_per_symbol_; }
  double sampling_rate() const { return samples_per_symbol_ / symbol_time_; }
  double duration() const { return n_symbols_ * symbol_time_; }

  // Signed DFT index of storage slot k, in [-n/2, n/2). Slot n/2 maps to -n/2
  // and carries the shared +-Nyquist component.
  long signed_bin(std::size_t k) const;
  // Frequency of storage slot k in 1/ps.
  double frequency(std::size_t k) const;
  double time(std::size_t i) const { return static_cast<double>(i) * dt(); }

  bool same_duration(const SamplingGrid& other) const;

  friend bool operator==(const SamplingGrid&, const SamplingGrid&) = default;

 private:
  int n_symbols_;
  int samples_per_symbol_;
  double symbol_time_;
};

SamplingGrid make_grid(int n_symbols, int samples_per_symbol, double symbol_time_ps);

double dbm_to_watts(double p_dbm);

// The 16 canonical 16-QAM points, {+-1, +-3} x {+-1, +-3} / sqrt(10).
// Index bits 0-1 select the in-phase level, bits 2-3 the quadrature level.
Complex qam16_point(unsigned index);

struct SymbolSequence {
  std::uint64_t seed = 0;
  std::vector<Complex> symbols;

  int n_symbols() const { return static_cast<int>(symbols.size()); }
};

SymbolSequence gen_symbols(std::uint64_t seed, int n_symbols);

struct LaunchSpec {
  double power_dbm = 0.0;
  double rolloff = 0.1;
  double baud_rate = 10e9;  // symbols/s

  double symbol_time_ps() const { return 1e12 / baud_rate; }
};

// Complex baseband field in sqrt(W), bound to its grid and fiber position.
struct Waveform {
  ComplexVector samples;
  SamplingGrid grid;
  double z_position = 0.0;  // km

  double energy() const;        // sum |a|^2 dt, in W*ps
  double mean_power() const;    // W
  bool all_finite() const;
};

// Raised-cosine amplitude spectrum, unit gain in the flat band.
double raised_cosine_spectrum(double f, double symbol_time, double rolloff);

Waveform shape_pulse(const SymbolSequence& symbols, const SamplingGrid& grid, const LaunchSpec& launch);

// Trigonometric interpolation onto a grid of the same duration.
Waveform resample_bandlimited(const Waveform& w, const SamplingGrid& target);

}  // namespace ssfm
