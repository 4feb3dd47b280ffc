#pragma once

// Inner-loop primitives shared by the kernel algebra and the solver.
//
// Every primitive has a scalar reference implementation and, where the
// target supports it, an AVX2+FMA (x86-64) or NEON (aarch64) variant. The
// variant is chosen once at startup from the CPU features; the environment
// variable RCMM_SIMD=scalar|avx2|neon forces a backend (ignored when the
// requested backend is unavailable). Results of the vector variants differ
// from the scalar ones only by summation order and fused multiply-add.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace rcmm::simd {

enum class Backend { Scalar, Avx2, Neon };

std::string_view backend_name(Backend b) noexcept;

/// Backend currently used by the dispatched entry points below.
Backend active_backend() noexcept;

/// Switch the dispatched backend. Returns false (and changes nothing) if the
/// backend is not compiled in or not supported by this CPU.
bool set_backend(Backend b) noexcept;

/// Backends usable on this machine, Scalar first.
std::vector<Backend> available_backends();

/// sum_i a[i] * b[i]; requires a.size() == b.size().
double dot(std::span<const double> a, std::span<const double> b) noexcept;

/// sum_i a[i] * b[n-1-i]; requires a.size() == b.size() == n.
double dot_reversed(std::span<const double> a, std::span<const double> b) noexcept;

/// y[i] += alpha * x[i]; requires x.size() == y.size().
void axpy(double alpha, std::span<const double> x, std::span<double> y) noexcept;

// Per-backend entry points, exposed for equivalence tests and benchmarks.
namespace scalar {
double dot(const double* a, const double* b, std::size_t n) noexcept;
double dot_reversed(const double* a, const double* b, std::size_t n) noexcept;
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept;
}  // namespace scalar

#if defined(RCMM_HAVE_AVX2)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n) noexcept;
double dot_reversed(const double* a, const double* b, std::size_t n) noexcept;
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept;
}  // namespace avx2
#endif

#if defined(RCMM_HAVE_NEON)
namespace neon {
double dot(const double* a, const double* b, std::size_t n) noexcept;
double dot_reversed(const double* a, const double* b, std::size_t n) noexcept;
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept;
}  // namespace neon
#endif

}  // namespace rcmm::simd
