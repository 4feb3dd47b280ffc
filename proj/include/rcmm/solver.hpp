#pragma once

// Implicit stepper for the discrete Volterra equation
//
//   u_n = h(t_n) + sum_{j=1..n} a^n_{n-j} f(t_j, u_j),   n = 1..N,
//
// with u_0 = h(t_0). At step n the history part c_n is summed once and the
// scalar equation u - a^n_0 f(t_n, u) - c_n = 0 is solved by safeguarded
// Newton.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rcmm/array_kernel.hpp"
#include "rcmm/mesh.hpp"
#include "rcmm/property_report.hpp"

namespace rcmm {

/// Right-hand side f(t, u) with an optional analytic du-derivative.
struct Rhs {
  std::function<double(double t, double u)> value;
  std::function<double(double t, double u)> du;  // empty: central differences
};

struct Problem {
  ArrayKernel kernel;
  Mesh mesh;
  std::vector<double> h;  // h(t_0), ..., h(t_N)
  Rhs f;
  std::optional<double> lipschitz;  // M >= 0 when known

  /// Validates kernel rows == mesh steps, h length == N+1 and M >= 0.
  Problem(ArrayKernel kernel, Mesh mesh, std::vector<double> h, Rhs f, std::optional<double> lipschitz = {});
};

/// h(t_n) = c for every grid point.
std::vector<double> constant_signal(const Mesh& mesh, double c);

struct SolveOptions {
  double rel_tol = 1e-14;         // |g(u)| <= rel_tol * max(1, |u|)
  std::size_t max_iterations = 200;
  std::size_t max_doublings = 64;  // bracket growth limit
};

struct StepDiagnostics {
  std::size_t iterations = 0;
  double residual = 0.0;  // |u_n - a^n_0 f(t_n, u_n) - c_n|
  double margin = 1.0;    // 1 - M a^n_0 (M given or estimated)
};

struct Trajectory {
  std::vector<double> t;
  std::vector<double> u;                 // u_0..u_N
  std::vector<StepDiagnostics> steps;    // steps[n-1] for n = 1..N
  std::vector<std::string> warnings;     // SolvabilityWarning messages
  double lipschitz_used = 0.0;
  bool lipschitz_estimated = false;
};

/// Throws NonConvergence when a scalar solve exceeds its iteration budget or
/// no sign change is found; ShapeError/InvalidMesh via Problem.
Trajectory solve(const Problem& problem, const SolveOptions& opts = {});

/// max_n |u_n - h_n - (A (*) f(u))_n| for n = 1..N.
double trajectory_defect(const Problem& problem, const Trajectory& traj);

struct OrderingReport {
  double min_gap = 0.0;                      // min_n (u1_n - u2_n)
  std::optional<std::size_t> first_violation;  // first n with gap < -tol
  double tolerance = 0.0;
  /// True when h1 - h2 is constant and >= 0 on the grid, the case in which
  /// the comparison hypothesis is known to hold for every lambda.
  bool hypothesis_verified = false;
  bool ordered() const noexcept { return !first_violation.has_value(); }
};

struct Comparison {
  Trajectory first;
  Trajectory second;
  OrderingReport ordering;
};

/// Solves the problem with signals h1 and h2 and reports whether u1 >= u2.
/// `tol` is absolute; when not given, 1e-12 * max(1, max|u|).
Comparison compare_solutions(const Problem& problem, const std::vector<double>& h1,
                             const std::vector<double>& h2, const SolveOptions& opts = {},
                             std::optional<double> tol = {});

/// Ordering of two already computed trajectories (same grid).
OrderingReport ordering_report(const Trajectory& upper, const Trajectory& lower, double tol);

enum class Direction { Constant, Nondecreasing, Nonincreasing, NotMonotone };
const char* direction_name(Direction d) noexcept;

struct MonotonicityReport {
  PropertyReport report;
  Direction direction = Direction::Constant;
};

/// v_n = u_{n+1} - u_n; monotone iff all v_n >= -tol or all v_n <= tol.
/// The direction is fixed by the first increment exceeding tol in magnitude;
/// the witness is the first increment of the opposite sign (n = step index).
MonotonicityReport monotonicity_report(const Trajectory& traj, double tol);

/// Trajectory CSV: header `n,t,u,iters,residual`, one row per grid point
/// (row n = 0 has iters = 0, residual = 0).
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

}  // namespace rcmm
