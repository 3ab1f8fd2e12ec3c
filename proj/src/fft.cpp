#include "ssfm/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace ssfm {
namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

struct PlanKey {
  std::size_t n;
  bool aligned;
  auto operator<=>(const PlanKey&) const = default;
};

// The FFTW planner is not thread-safe; fftw_execute_dft on a finished plan is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plans] : plans_) {
      fftw_destroy_plan(plans.forward);
      fftw_destroy_plan(plans.backward);
    }
  }

  const PlanPair& get(std::size_t n, bool aligned) {
    std::lock_guard lock(mutex_);
    const PlanKey key{n, aligned};
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;

    // FFTW_ESTIMATE leaves the buffers untouched and always yields the same
    // plan, so results are reproducible run to run.
    fftw_complex* buffer = fftw_alloc_complex(n);
    const unsigned flags = FFTW_ESTIMATE | (aligned ? 0u : FFTW_UNALIGNED);
    PlanPair plans;
    plans.forward = fftw_plan_dft_1d(static_cast<int>(n), buffer, buffer, FFTW_FORWARD, flags);
    plans.backward = fftw_plan_dft_1d(static_cast<int>(n), buffer, buffer, FFTW_BACKWARD, flags);
    fftw_free(buffer);
    if (!plans.forward || !plans.backward) throw std::runtime_error("fftw: planning failed");
    return plans_.emplace(key, plans).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<PlanKey, PlanPair> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

fftw_complex* as_fftw(std::span<Complex> data) {
  return reinterpret_cast<fftw_complex*>(data.data());
}

const PlanPair& plans_for(std::span<Complex> data) {
  const bool aligned = fftw_alignment_of(reinterpret_cast<double*>(data.data())) == 0;
  return cache().get(data.size(), aligned);
}

}  // namespace

void fft_forward(std::span<Complex> data) {
  if (data.empty()) return;
  const auto& plans = plans_for(data);
  fftw_execute_dft(plans.forward, as_fftw(data), as_fftw(data));
}

void fft_inverse(std::span<Complex> data) {
  if (data.empty()) return;
  const auto& plans = plans_for(data);
  fftw_execute_dft(plans.backward, as_fftw(data), as_fftw(data));
  const double scale = 1.0 / static_cast<double>(data.size());
  for (auto& x : data) x *= scale;
}

ComplexVector fft_forward_copy(std::span<const Complex> data) {
  ComplexVector out(data.begin(), data.end());
  fft_forward(out);
  return out;
}

ComplexVector fft_inverse_copy(std::span<const Complex> data) {
  ComplexVector out(data.begin(), data.end());
  fft_inverse(out);
  return out;
}

}  // namespace ssfm
