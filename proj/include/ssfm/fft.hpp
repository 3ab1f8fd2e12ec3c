#pragma once

#include <complex>
#include <cstddef>
#include <new>
#include <span>
#include <vector>

namespace ssfm {

using Complex = std::complex<double>;

// 64-byte aligned storage lets the transforms use FFTW's SIMD kernels.
template <class T>
struct AlignedAllocator {
  using value_type = T;
  static constexpr std::align_val_t alignment{64};

  AlignedAllocator() = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) { return static_cast<T*>(::operator new(n * sizeof(T), alignment)); }
  void deallocate(T* p, std::size_t) noexcept { ::operator delete(p, alignment); }

  template <class U>
  bool operator==(const AlignedAllocator<U>&) const noexcept { return true; }
};

using ComplexVector = std::vector<Complex, AlignedAllocator<Complex>>;

// In-place DFT over a contiguous complex buffer.
// Forward is unnormalized (exp(-j2pi kn/N)); inverse carries the 1/N factor.
// Plans are cached per length and shared; execution is safe from any thread.
// Unaligned buffers fall back to a scalar plan, which is slower but gives
// results of the same accuracy.
void fft_forward(std::span<Complex> data);
void fft_inverse(std::span<Complex> data);

ComplexVector fft_forward_copy(std::span<const Complex> data);
ComplexVector fft_inverse_copy(std::span<const Complex> data);

}  // namespace ssfm
