#include "ssfm/metrics.hpp"

#include <cmath>
#include <string>

namespace ssfm {

double nsd_samples(std::span<const Complex> reference, std::span<const Complex> candidate) {
  if (reference.size() != candidate.size()) throw std::invalid_argument("nsd: sample counts differ");
  double diff = 0.0;
  double ref = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    diff += std::norm(reference[i] - candidate[i]);
    ref += std::norm(reference[i]);
  }
  if (!(ref > 0.0)) throw DegenerateInput("nsd: reference waveform has zero energy");
  // The common dt of the Riemann sums cancels.
  return diff / ref;
}

NsdReport nsd(const Waveform& reference, const Waveform& candidate) {
  if (!reference.grid.same_duration(candidate.grid))
    throw std::invalid_argument("nsd: reference spans " + std::to_string(reference.grid.duration()) +
                                " ps, candidate spans " + std::to_string(candidate.grid.duration()) + " ps");
  const double z_scale = std::max({1.0, std::abs(reference.z_position), std::abs(candidate.z_position)});
  if (std::abs(reference.z_position - candidate.z_position) > 1e-9 * z_scale)
    throw std::invalid_argument("nsd: waveforms are at different fiber positions");

  const Waveform aligned = resample_bandlimited(candidate, reference.grid);
  return NsdReport{nsd_samples(reference.samples, aligned.samples), reference.grid, candidate.grid,
                   reference.grid};
}

}  // namespace ssfm
