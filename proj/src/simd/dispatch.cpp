#include "rcmm/simd/kernels.hpp"

#include <atomic>
#include <cassert>
#include <cstdlib>
#include <string>

namespace rcmm::simd {

namespace {

bool cpu_supports(Backend b) noexcept {
  switch (b) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
#if defined(RCMM_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Backend::Neon:
#if defined(RCMM_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Backend detect() noexcept {
  if (const char* env = std::getenv("RCMM_SIMD")) {
    const std::string_view want{env};
    for (Backend b : {Backend::Scalar, Backend::Avx2, Backend::Neon})
      if (want == backend_name(b) && cpu_supports(b)) return b;
  }
  if (cpu_supports(Backend::Avx2)) return Backend::Avx2;
  if (cpu_supports(Backend::Neon)) return Backend::Neon;
  return Backend::Scalar;
}

std::atomic<Backend>& current() noexcept {
  static std::atomic<Backend> b{detect()};
  return b;
}

}  // namespace

std::string_view backend_name(Backend b) noexcept {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
  }
  return "unknown";
}

Backend active_backend() noexcept { return current().load(std::memory_order_relaxed); }

bool set_backend(Backend b) noexcept {
  if (!cpu_supports(b)) return false;
  current().store(b, std::memory_order_relaxed);
  return true;
}

std::vector<Backend> available_backends() {
  std::vector<Backend> out;
  for (Backend b : {Backend::Scalar, Backend::Avx2, Backend::Neon})
    if (cpu_supports(b)) out.push_back(b);
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  assert(a.size() == b.size());
  switch (active_backend()) {
#if defined(RCMM_HAVE_AVX2)
    case Backend::Avx2: return avx2::dot(a.data(), b.data(), a.size());
#endif
#if defined(RCMM_HAVE_NEON)
    case Backend::Neon: return neon::dot(a.data(), b.data(), a.size());
#endif
    default: return scalar::dot(a.data(), b.data(), a.size());
  }
}

double dot_reversed(std::span<const double> a, std::span<const double> b) noexcept {
  assert(a.size() == b.size());
  switch (active_backend()) {
#if defined(RCMM_HAVE_AVX2)
    case Backend::Avx2: return avx2::dot_reversed(a.data(), b.data(), a.size());
#endif
#if defined(RCMM_HAVE_NEON)
    case Backend::Neon: return neon::dot_reversed(a.data(), b.data(), a.size());
#endif
    default: return scalar::dot_reversed(a.data(), b.data(), a.size());
  }
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) noexcept {
  assert(x.size() == y.size());
  switch (active_backend()) {
#if defined(RCMM_HAVE_AVX2)
    case Backend::Avx2: avx2::axpy(alpha, x.data(), y.data(), x.size()); return;
#endif
#if defined(RCMM_HAVE_NEON)
    case Backend::Neon: neon::axpy(alpha, x.data(), y.data(), x.size()); return;
#endif
    default: scalar::axpy(alpha, x.data(), y.data(), x.size());
  }
}

}  // namespace rcmm::simd
