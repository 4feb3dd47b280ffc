#include "rcmm/fode.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rcmm {

namespace {

// Lanczos coefficients for g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos(double x) {
  // Gamma(x) for x >= 0.5.
  const double z = x - 1.0;
  double s = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) s += kLanczos[i] / (z + static_cast<double>(i));
  const double t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * s;
}

}  // namespace

double gamma_fn(double x) {
  if (!(x > 0.0)) throw std::domain_error("gamma_fn: argument must be positive");
  if (x == std::floor(x) && x <= 171.0) {
    double f = 1.0;
    for (double k = 2.0; k < x; k += 1.0) f *= k;
    return f;
  }
  if (x < 0.5) return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos(1.0 - x));
  return lanczos(x);
}

FodeKernelSpec::FodeKernelSpec(double a, Mesh m) : alpha(a), mesh(std::move(m)) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0, 1]");
}

ArrayKernel fode_kernel(const FodeKernelSpec& spec) {
  const Mesh& m = spec.mesh;
  const std::size_t N = m.steps();
  ArrayKernel a(N);
  if (spec.alpha == 1.0) {
    for (std::size_t n = 1; n <= N; ++n)
      for (std::size_t k = 0; k < n; ++k) a(n, k) = m.tau(n - k);
    return a;
  }
  const double g = gamma_fn(spec.alpha + 1.0);
  const auto t = m.points();
  for (std::size_t n = 1; n <= N; ++n) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t j = n - k;
      a(n, k) = (std::pow(t[n] - t[j - 1], spec.alpha) - std::pow(t[n] - t[j], spec.alpha)) / g;
    }
  }
  return a;
}

ArrayKernel fode_beta_kernel(const FodeKernelSpec& spec) {
  const Mesh& m = spec.mesh;
  const std::size_t N = m.steps();
  const auto t = m.points();
  ArrayKernel b(N);
  for (std::size_t n = 1; n <= N; ++n) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t j = n - k;
      b(n, k) = std::pow(t[n] - t[j - 1], spec.alpha) - std::pow(t[n - 1] - t[j - 1], spec.alpha);
    }
  }
  return b;
}

StepSizeBound step_size_bound(const FodeKernelSpec& spec, double lipschitz) {
  if (lipschitz < 0.0) throw std::invalid_argument("Lipschitz constant must be nonnegative");
  const double g = gamma_fn(spec.alpha + 1.0);
  double sup = 0.0;
  for (double tau : spec.mesh.step_sizes()) sup = std::max(sup, std::pow(tau, spec.alpha) / g);
  return {sup, lipschitz * sup < 1.0};
}

}  // namespace rcmm
