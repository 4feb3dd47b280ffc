#pragma once

// Averaged-integral kernel for the Caputo fractional ODE D^alpha u = f(t, u),
// written as u(t) = u_0 + (1/Gamma(alpha)) int_0^t (t-s)^(alpha-1) f(s, u(s)) ds.

#include "rcmm/array_kernel.hpp"
#include "rcmm/mesh.hpp"

namespace rcmm {

/// Gamma function for x > 0. Exact for integer x <= 171; otherwise the
/// Lanczos approximation with g = 7 and nine coefficients, with the
/// reflection formula below x = 0.5 (relative error ~1e-15 on (0, 3]).
/// Throws std::domain_error for x <= 0 or NaN.
double gamma_fn(double x);

struct FodeKernelSpec {
  double alpha;  // in (0, 1]
  Mesh mesh;

  /// Throws std::invalid_argument unless 0 < alpha <= 1.
  FodeKernelSpec(double alpha, Mesh mesh);
};

/// a^n_{n-j} = ((t_n - t_{j-1})^alpha - (t_n - t_j)^alpha) / Gamma(alpha + 1),
/// the exact integral of (t_n - s)^(alpha-1) / Gamma(alpha) over [t_{j-1}, t_j].
/// For alpha == 1 the entries are the step sizes tau_j.
ArrayKernel fode_kernel(const FodeKernelSpec& spec);

/// beta^n_{n-j} = (t_n - t_{j-1})^alpha - (t_{n-1} - t_{j-1})^alpha, which equals
/// Gamma(alpha + 1) L^(-1) (*) A (*) L for the kernel above (t_0 convention for
/// n = 1: beta^1_0 = t_1^alpha).
ArrayKernel fode_beta_kernel(const FodeKernelSpec& spec);

struct StepSizeBound {
  double sup_diagonal;  // sup_j a^j_0 = tau_j^alpha / Gamma(alpha + 1)
  bool satisfied;       // M * sup_diagonal < 1
};

/// Unique-solvability condition M sup_j a^j_0 < 1 for a Lipschitz constant M >= 0.
StepSizeBound step_size_bound(const FodeKernelSpec& spec, double lipschitz);

}  // namespace rcmm
