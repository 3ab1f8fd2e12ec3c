#include "ssfm/engine.hpp"

#include <cmath>
#include <numbers>

namespace ssfm {

void FiberParams::validate() const {
  if (!std::isfinite(alpha) || !std::isfinite(beta2) || !std::isfinite(gamma) || !std::isfinite(span_length))
    throw std::invalid_argument("fiber: parameters must be finite");
  if (!(span_length > 0.0)) throw std::invalid_argument("fiber: span length must be positive");
}

SsfmConfig SsfmConfig::for_span(const FiberParams& fiber, double step_km, double filter_fraction) {
  fiber.validate();
  if (!(step_km > 0.0) || !std::isfinite(step_km)) throw std::invalid_argument("ssfm: step size must be positive");
  const double segments = std::round(fiber.span_length / step_km);
  SsfmConfig cfg;
  cfg.n_seg = segments < 1.0 ? 1 : static_cast<int>(segments);
  cfg.dz = fiber.span_length / cfg.n_seg;
  cfg.filter_fraction = filter_fraction;
  cfg.validate(fiber);
  return cfg;
}

void SsfmConfig::validate(const FiberParams& fiber) const {
  if (n_seg < 1) throw std::invalid_argument("ssfm: n_seg must be >= 1");
  if (!(dz > 0.0)) throw std::invalid_argument("ssfm: dz must be positive");
  if (std::abs(n_seg * dz - fiber.span_length) > 1e-12 * fiber.span_length)
    throw std::invalid_argument("ssfm: n_seg * dz does not cover the span");
  if (!(filter_fraction > 0.0 && filter_fraction <= 1.0))
    throw std::invalid_argument("ssfm: filter_fraction must lie in (0, 1]");
}

long filter_edge_bin(const SamplingGrid& grid, double filter_fraction) {
  const long half = static_cast<long>(grid.n_samples() / 2);
  // Relative slack absorbs representation error in fractions such as 0.8, so
  // an edge that is integral in exact arithmetic stays inclusive.
  const double edge = filter_fraction * static_cast<double>(half) * (1.0 + 1e-12);
  return std::min(half, static_cast<long>(std::floor(edge)));
}

Complex linear_phase_factor(double f, const FiberParams& fiber, double dz) {
  const double gain = std::exp(-0.5 * fiber.alpha * dz);
  const double phase = 2.0 * std::numbers::pi * std::numbers::pi * f * f * fiber.beta2 * dz;
  return std::polar(gain, phase);
}

LinearMultiplier linear_multiplier(const SamplingGrid& grid, const FiberParams& fiber, const SsfmConfig& cfg) {
  cfg.validate(fiber);
  const std::size_t n = grid.n_samples();
  const long edge = filter_edge_bin(grid, cfg.filter_fraction);

  LinearMultiplier out;
  out.values.assign(n, Complex{});
  for (std::size_t k = 0; k < n; ++k) {
    if (std::labs(grid.signed_bin(k)) > edge) continue;
    out.values[k] = linear_phase_factor(grid.frequency(k), fiber, cfg.dz);
    ++out.passband_bins;
  }
  return out;
}

LinearMultiplier traditional_multiplier(const SamplingGrid& grid, const FiberParams& fiber, double dz) {
  const std::size_t n = grid.n_samples();
  LinearMultiplier out;
  out.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.values[k] = linear_phase_factor(grid.frequency(k), fiber, dz);
  out.passband_bins = n;
  return out;
}

void apply_nonlinear_step(std::span<Complex> samples, double gamma, double dz) {
  // Spelled out in real arithmetic; complex operator* takes the slow
  // inf/nan-recovery path.
  const double scale = gamma * dz;
  for (auto& x : samples) {
    const double re = x.real();
    const double im = x.imag();
    const double phase = scale * (re * re + im * im);
    const double c = std::cos(phase);
    const double s = std::sin(phase);
    x = Complex(re * c - im * s, re * s + im * c);
  }
}

Waveform nonlinear_step(Waveform w, double gamma, double dz) {
  apply_nonlinear_step(w.samples, gamma, dz);
  return w;
}

namespace {

bool finite(std::span<const Complex> samples) {
  for (const auto& x : samples)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
  return true;
}

Waveform run_segments(const Waveform& w, const FiberParams& fiber, int n_seg, double dz,
                      const LinearMultiplier& multiplier) {
  if (w.z_position != 0.0) throw std::invalid_argument("propagate: input must be at z = 0");
  if (!finite(w.samples)) throw NumericalOverflow(-1, "propagate: input field is not finite");

  Waveform out = w;
  auto& field = out.samples;
  for (int seg = 0; seg < n_seg; ++seg) {
    apply_nonlinear_step(field, fiber.gamma, dz);
    fft_forward(field);
    for (std::size_t k = 0; k < field.size(); ++k) {
      const Complex a = field[k];
      const Complex h = multiplier.values[k];
      field[k] = Complex(a.real() * h.real() - a.imag() * h.imag(), a.real() * h.imag() + a.imag() * h.real());
    }
    fft_inverse(field);
    if (!finite(field))
      throw NumericalOverflow(seg, "propagate: non-finite field after segment " + std::to_string(seg));
  }
  out.z_position = fiber.span_length;
  return out;
}

}  // namespace

Waveform propagate(const Waveform& w, const FiberParams& fiber, const SsfmConfig& cfg) {
  fiber.validate();
  const LinearMultiplier multiplier = linear_multiplier(w.grid, fiber, cfg);
  return run_segments(w, fiber, cfg.n_seg, cfg.dz, multiplier);
}

Waveform propagate_traditional(const Waveform& w, const FiberParams& fiber, int n_seg) {
  fiber.validate();
  if (n_seg < 1) throw std::invalid_argument("propagate: n_seg must be >= 1");
  const double dz = fiber.span_length / n_seg;
  return run_segments(w, fiber, n_seg, dz, traditional_multiplier(w.grid, fiber, dz));
}

Waveform benchmark_output(const SymbolSequence& symbols, const LaunchSpec& launch, const FiberParams& fiber,
                          int samples_per_symbol, double step_km) {
  const SamplingGrid grid = make_grid(symbols.n_symbols(), samples_per_symbol, launch.symbol_time_ps());
  const Waveform input = shape_pulse(symbols, grid, launch);
  return propagate(input, fiber, SsfmConfig::for_span(fiber, step_km, 1.0));
}

}  // namespace ssfm
