#pragma once

#include <stdexcept>

#include "ssfm/signal.hpp"

namespace ssfm {

class DegenerateInput : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct NsdReport {
  double nsd = 0.0;
  SamplingGrid reference_grid;
  SamplingGrid candidate_grid;
  SamplingGrid comparison_grid;
};

// Normalized square difference sum|a - a_hat|^2 / sum|a|^2, evaluated on the
// reference grid after trigonometric resampling of the candidate.
NsdReport nsd(const Waveform& reference, const Waveform& candidate);

// Same ratio for two sample vectors already on a common grid.
double nsd_samples(std::span<const Complex> reference, std::span<const Complex> candidate);

}  // namespace ssfm
