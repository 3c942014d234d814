#pragma once

// Thin wrapper around FFTW complex-to-complex transforms.
//
// Plans are created once per (dims, sign) with FFTW_ESTIMATE and cached
// process-wide; planning is guarded by a mutex (the FFTW planner is not
// thread-safe), execution uses the new-array interface on thread-local
// scratch buffers allocated with fftw_malloc so every execution sees the
// same SIMD alignment the plan was created with. Identical inputs produce
// bit-identical outputs regardless of which thread runs the transform.

#include <fftw3.h>

#include <array>
#include <complex>
#include <cstddef>
#include <map>
#include <mutex>
#include <new>
#include <stdexcept>
#include <vector>

namespace hwkb::detail {

class FftwBuffer {
 public:
  FftwBuffer() = default;
  explicit FftwBuffer(std::size_t n) { resize(n); }
  ~FftwBuffer() { fftw_free(ptr_); }

  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;

  void resize(std::size_t n) {
    if (n <= capacity_) return;
    fftw_free(ptr_);
    ptr_ = fftw_alloc_complex(n);
    if (ptr_ == nullptr) throw std::bad_alloc();
    capacity_ = n;
  }

  fftw_complex* data() { return ptr_; }

 private:
  fftw_complex* ptr_ = nullptr;
  std::size_t capacity_ = 0;
};

struct PlanKey {
  std::array<int, 3> dims;
  int rank;
  int sign;
  friend auto operator<=>(const PlanKey&, const PlanKey&) = default;
};

inline fftw_plan acquire_plan(const PlanKey& key, fftw_complex* in, fftw_complex* out) {
  static std::mutex mutex;
  static std::map<PlanKey, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  fftw_plan plan = fftw_plan_dft(key.rank, key.dims.data(), in, out, key.sign,
                                 FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
  if (plan == nullptr) throw std::runtime_error("fftw: plan creation failed");
  cache.emplace(key, plan);
  return plan;
}

// Unnormalized DFT, sign = FFTW_FORWARD (-1) or FFTW_BACKWARD (+1).
// `dims` are row-major extents per axis; `in` and `out` may alias.
inline void dft(int rank, const std::array<int, 3>& dims, int sign,
                const std::complex<double>* in, std::complex<double>* out) {
  std::size_t n = 1;
  for (int a = 0; a < rank; ++a) n *= static_cast<std::size_t>(dims[a]);

  thread_local FftwBuffer src, dst;
  src.resize(n);
  dst.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    src.data()[i][0] = in[i].real();
    src.data()[i][1] = in[i].imag();
  }

  fftw_plan plan = acquire_plan(PlanKey{dims, rank, sign}, src.data(), dst.data());
  fftw_execute_dft(plan, src.data(), dst.data());

  for (std::size_t i = 0; i < n; ++i)
    out[i] = std::complex<double>(dst.data()[i][0], dst.data()[i][1]);
}

}  // namespace hwkb::detail
