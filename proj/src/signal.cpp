#include "ssfm/signal.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace ssfm {

SamplingGrid::SamplingGrid(int n_symbols, int samples_per_symbol, double symbol_time_ps)
    : n_symbols_(n_symbols), samples_per_symbol_(samples_per_symbol), symbol_time_(symbol_time_ps) {
  if (n_symbols < 1) throw std::invalid_argument("grid: n_symbols must be >= 1");
  if (samples_per_symbol < 2) throw std::invalid_argument("grid: samples_per_symbol must be >= 2");
  if (!(symbol_time_ps > 0.0) || !std::isfinite(symbol_time_ps))
    throw std::invalid_argument("grid: symbol time must be positive and finite");
  if (n_samples() % 2 != 0)
    throw std::invalid_argument("grid: n_symbols * samples_per_symbol must be even, got " +
                                std::to_string(n_samples()));
}

long SamplingGrid::signed_bin(std::size_t k) const {
  const auto n = n_samples();
  return k < n / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
}

double SamplingGrid::frequency(std::size_t k) const {
  return static_cast<double>(signed_bin(k)) / duration();
}

bool SamplingGrid::same_duration(const SamplingGrid& other) const {
  const double a = duration();
  const double b = other.duration();
  return std::abs(a - b) <= 1e-12 * std::max(a, b);
}

SamplingGrid make_grid(int n_symbols, int samples_per_symbol, double symbol_time_ps) {
  return SamplingGrid(n_symbols, samples_per_symbol, symbol_time_ps);
}

double dbm_to_watts(double p_dbm) { return std::pow(10.0, (p_dbm - 30.0) / 10.0); }

Complex qam16_point(unsigned index) {
  static constexpr double levels[4] = {-3.0, -1.0, 1.0, 3.0};
  const double norm = 1.0 / std::sqrt(10.0);
  return {levels[index & 3u] * norm, levels[(index >> 2) & 3u] * norm};
}

SymbolSequence gen_symbols(std::uint64_t seed, int n_symbols) {
  if (n_symbols < 1) throw std::invalid_argument("gen_symbols: n_symbols must be >= 1");
  // Top four bits of each draw pick the point; std distributions are not
  // portable across standard libraries, raw engine output is.
  std::mt19937_64 engine(seed);
  SymbolSequence out;
  out.seed = seed;
  out.symbols.reserve(static_cast<std::size_t>(n_symbols));
  for (int i = 0; i < n_symbols; ++i) out.symbols.push_back(qam16_point(static_cast<unsigned>(engine() >> 60)));
  return out;
}

double Waveform::energy() const {
  double sum = 0.0;
  for (const auto& x : samples) sum += std::norm(x);
  return sum * grid.dt();
}

double Waveform::mean_power() const {
  double sum = 0.0;
  for (const auto& x : samples) sum += std::norm(x);
  return sum / static_cast<double>(samples.size());
}

bool Waveform::all_finite() const {
  for (const auto& x : samples)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
  return true;
}

double raised_cosine_spectrum(double f, double symbol_time, double rolloff) {
  const double af = std::abs(f);
  const double f_lo = (1.0 - rolloff) / (2.0 * symbol_time);
  const double f_hi = (1.0 + rolloff) / (2.0 * symbol_time);
  if (af < f_lo) return 1.0;
  if (af > f_hi) return 0.0;
  if (rolloff == 0.0) return 0.5;
  return 0.5 * (1.0 + std::cos(std::numbers::pi * symbol_time / rolloff * (af - f_lo)));
}

Waveform shape_pulse(const SymbolSequence& symbols, const SamplingGrid& grid, const LaunchSpec& launch) {
  if (symbols.n_symbols() != grid.n_symbols())
    throw std::invalid_argument("shape_pulse: grid holds " + std::to_string(grid.n_symbols()) +
                                " symbols, sequence has " + std::to_string(symbols.n_symbols()));
  if (!(launch.rolloff >= 0.0 && launch.rolloff <= 1.0))
    throw std::invalid_argument("shape_pulse: rolloff must lie in [0, 1]");
  const double power_w = dbm_to_watts(launch.power_dbm);
  if (!std::isfinite(power_w)) throw std::invalid_argument("shape_pulse: launch power is not representable");

  // Impulse train filtered by the raised-cosine spectrum. Filtering on the DFT
  // grid is the cyclic convolution with the periodized pulse.
  const auto n = grid.n_samples();
  const auto spp = static_cast<std::size_t>(grid.samples_per_symbol());
  ComplexVector field(n, Complex{});
  for (std::size_t m = 0; m < symbols.symbols.size(); ++m) field[m * spp] = symbols.symbols[m];

  fft_forward(field);
  for (std::size_t k = 0; k < n; ++k)
    field[k] *= raised_cosine_spectrum(grid.frequency(k), grid.symbol_time(), launch.rolloff);
  fft_inverse(field);

  Waveform out{std::move(field), grid, 0.0};
  const double current = out.mean_power();
  if (current > 0.0) {
    const double scale = std::sqrt(power_w) / std::sqrt(current);
    for (auto& x : out.samples) x *= scale;
  }
  return out;
}

Waveform resample_bandlimited(const Waveform& w, const SamplingGrid& target) {
  if (!w.grid.same_duration(target))
    throw std::invalid_argument("resample_bandlimited: source spans " + std::to_string(w.grid.duration()) +
                                " ps, target spans " + std::to_string(target.duration()) + " ps");
  const std::size_t n = w.grid.n_samples();
  const std::size_t m = target.n_samples();
  if (n == m) return Waveform{w.samples, target, w.z_position};

  const ComplexVector spectrum = fft_forward_copy(w.samples);
  ComplexVector out(m, Complex{});
  const double scale = static_cast<double>(m) / static_cast<double>(n);

  if (m > n) {
    const std::size_t half = n / 2;
    for (std::size_t k = 0; k < half; ++k) out[k] = spectrum[k] * scale;
    for (std::size_t k = 1; k < half; ++k) out[m - k] = spectrum[n - k] * scale;
    // The source Nyquist bin stands for both +-n/2; split it evenly.
    const Complex nyquist = spectrum[half] * (0.5 * scale);
    out[half] = nyquist;
    out[m - half] = nyquist;
  } else {
    const std::size_t half = m / 2;
    for (std::size_t k = 0; k < half; ++k) out[k] = spectrum[k] * scale;
    for (std::size_t k = 1; k < half; ++k) out[m - k] = spectrum[n - k] * scale;
    // Both source bins +-m/2 land on the single target Nyquist bin.
    out[half] = (spectrum[half] + spectrum[n - half]) * scale;
  }

  fft_inverse(out);
  return Waveform{std::move(out), target, w.z_position};
}

}  // namespace ssfm
