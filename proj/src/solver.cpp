#include "rcmm/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "rcmm/errors.hpp"
#include "rcmm/simd/kernels.hpp"
#include "rcmm/text_io.hpp"

namespace rcmm {

Problem::Problem(ArrayKernel k, Mesh m, std::vector<double> hs, Rhs rhs, std::optional<double> M)
    : kernel(std::move(k)), mesh(std::move(m)), h(std::move(hs)), f(std::move(rhs)), lipschitz(M) {
  if (kernel.rows() != mesh.steps())
    throw ShapeError("kernel has " + std::to_string(kernel.rows()) + " rows but mesh has " +
                     std::to_string(mesh.steps()) + " steps");
  if (h.size() != mesh.steps() + 1) throw ShapeError("signal must have one value per grid point");
  if (!f.value) throw std::invalid_argument("right-hand side is empty");
  if (lipschitz && *lipschitz < 0.0) throw std::invalid_argument("Lipschitz constant must be nonnegative");
}

std::vector<double> constant_signal(const Mesh& mesh, double c) { return std::vector<double>(mesh.steps() + 1, c); }

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double derivative(const Rhs& f, double t, double u) {
  if (f.du) return f.du(t, u);
  const double h = std::cbrt(kEps) * std::max(1.0, std::abs(u));
  return (f.value(t, u + h) - f.value(t, u - h)) / (2.0 * h);
}

struct ScalarSolve {
  double u;
  double residual;
  std::size_t iterations;
};

// Root of g(u) = u - a0 f(t, u) - c, starting from `guess`.
ScalarSolve solve_step(const Rhs& f, double t, double a0, double c, double guess, const SolveOptions& opts,
                       std::size_t step) {
  const auto g = [&](double u) { return u - a0 * f.value(t, u) - c; };
  const auto tol = [&](double u) { return opts.rel_tol * std::max(1.0, std::abs(u)); };
  std::size_t it = 0;

  double u = guess;
  double gu = g(u);
  if (std::abs(gu) <= tol(u)) return {u, std::abs(gu), it};

  // Plain Newton while it keeps reducing |g|.
  bool need_bracket = false;
  while (it < opts.max_iterations) {
    ++it;
    const double dg = 1.0 - a0 * derivative(f, t, u);
    if (!(std::abs(dg) > 0.0) || !std::isfinite(dg)) {
      need_bracket = true;
      break;
    }
    const double step_u = gu / dg;
    const double un = u - step_u;
    const double gn = g(un);
    if (!std::isfinite(gn) || std::abs(gn) >= std::abs(gu)) {
      // Stalled at roundoff: accept; otherwise fall back to bracketing.
      if (std::abs(step_u) <= 4.0 * kEps * std::max(std::abs(u), std::abs(c))) return {u, std::abs(gu), it};
      need_bracket = true;
      break;
    }
    u = un;
    gu = gn;
    if (std::abs(gu) <= tol(u)) {
      // One polishing step if it helps.
      const double dg2 = 1.0 - a0 * derivative(f, t, u);
      if (std::abs(dg2) > 0.0 && std::isfinite(dg2)) {
        const double up = u - gu / dg2;
        const double gp = g(up);
        if (std::isfinite(gp) && std::abs(gp) < std::abs(gu)) {
          u = up;
          gu = gp;
        }
      }
      return {u, std::abs(gu), it};
    }
  }
  if (!need_bracket)
    throw NonConvergence("step " + std::to_string(step) + ": Newton exceeded " + std::to_string(opts.max_iterations) +
                         " iterations");

  // Symmetric bracket growth around the continuation guess.
  const double base = std::max(1e-8, std::abs(guess));
  double lo = guess, hi = guess, glo = g(guess), ghi = glo;
  bool found = false;
  for (std::size_t d = 0; d < opts.max_doublings; ++d) {
    const double w = base * std::ldexp(1.0, static_cast<int>(d));
    lo = guess - w;
    hi = guess + w;
    glo = g(lo);
    ghi = g(hi);
    if (std::signbit(glo) != std::signbit(ghi) || glo == 0.0 || ghi == 0.0) {
      found = true;
      break;
    }
  }
  if (!found) throw NonConvergence("step " + std::to_string(step) + ": no sign change found for the scalar solve");

  // Newton inside the bracket, bisection when Newton leaves it.
  u = 0.5 * (lo + hi);
  gu = g(u);
  while (it < opts.max_iterations) {
    ++it;
    if (std::abs(gu) <= tol(u)) return {u, std::abs(gu), it};
    if (std::signbit(gu) == std::signbit(glo)) {
      lo = u;
      glo = gu;
    } else {
      hi = u;
      ghi = gu;
    }
    const double dg = 1.0 - a0 * derivative(f, t, u);
    double un = u - gu / dg;
    if (!(un > std::min(lo, hi) && un < std::max(lo, hi)) || !std::isfinite(un)) un = 0.5 * (lo + hi);
    if (un == u) return {u, std::abs(gu), it};
    u = un;
    gu = g(u);
  }
  throw NonConvergence("step " + std::to_string(step) + ": scalar solve exceeded " +
                       std::to_string(opts.max_iterations) + " iterations");
}

// max |df/du| sampled on [lo, hi] widened by 50% of its width.
double estimate_lipschitz(const Rhs& f, double t, double lo, double hi) {
  const double w = std::max(hi - lo, 1e-8);
  const double a = lo - 0.5 * w;
  const double b = hi + 0.5 * w;
  constexpr int kSamples = 33;
  double m = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const double u = a + (b - a) * i / (kSamples - 1);
    m = std::max(m, std::abs(derivative(f, t, u)));
  }
  return m;
}

}  // namespace

Trajectory solve(const Problem& p, const SolveOptions& opts) {
  const std::size_t N = p.mesh.steps();
  Trajectory tr;
  tr.t.assign(p.mesh.points().begin(), p.mesh.points().end());
  tr.u.resize(N + 1);
  tr.steps.resize(N);
  tr.u[0] = p.h[0];
  tr.lipschitz_estimated = !p.lipschitz.has_value();
  tr.lipschitz_used = p.lipschitz.value_or(0.0);

  std::vector<double> fvals(N, 0.0);  // f(t_j, u_j), j = 1..N
  double umin = tr.u[0], umax = tr.u[0];
  std::size_t first_violation = 0;
  for (std::size_t n = 1; n <= N; ++n) {
    const auto row = p.kernel.row(n);
    const double a0 = row[0];
    if (!(a0 > 0.0)) throw std::invalid_argument("kernel diagonal must be positive (row " + std::to_string(n) + ")");
    // c_n = h(t_n) + sum_{j=1..n-1} a^n_{n-j} f_j
    const double c = p.h[n] + simd::dot_reversed(row.subspan(1), std::span<const double>(fvals).first(n - 1));
    const double tn = tr.t[n];
    const auto s = solve_step(p.f, tn, a0, c, tr.u[n - 1], opts, n);
    tr.u[n] = s.u;
    fvals[n - 1] = p.f.value(tn, s.u);

    umin = std::min(umin, s.u);
    umax = std::max(umax, s.u);
    double M = tr.lipschitz_used;
    if (tr.lipschitz_estimated) {
      M = std::max(M, estimate_lipschitz(p.f, tn, umin, umax));
      tr.lipschitz_used = M;
    }
    tr.steps[n - 1] = {s.iterations, s.residual, 1.0 - M * a0};
    if (M * a0 >= 1.0 && first_violation == 0) first_violation = n;
  }
  if (first_violation) {
    tr.warnings.push_back("SolvabilityWarning: M * a^n_0 >= 1 first at n=" + std::to_string(first_violation) +
                          " (M=" + format_double(tr.lipschitz_used) +
                          (tr.lipschitz_estimated ? ", estimated)" : ")"));
  }
  return tr;
}

double trajectory_defect(const Problem& p, const Trajectory& tr) {
  const std::size_t N = p.mesh.steps();
  std::vector<double> fv(N);
  for (std::size_t j = 1; j <= N; ++j) fv[j - 1] = p.f.value(tr.t[j], tr.u[j]);
  double d = 0.0;
  for (std::size_t n = 1; n <= N; ++n) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += p.kernel(n, k) * fv[n - k - 1];
    d = std::max(d, std::abs(tr.u[n] - p.h[n] - s));
  }
  return d;
}

OrderingReport ordering_report(const Trajectory& upper, const Trajectory& lower, double tol) {
  if (upper.u.size() != lower.u.size()) throw ShapeError("trajectories have different lengths");
  OrderingReport r;
  r.tolerance = tol;
  r.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < upper.u.size(); ++n) {
    const double gap = upper.u[n] - lower.u[n];
    r.min_gap = std::min(r.min_gap, gap);
    if (gap < -tol && !r.first_violation) r.first_violation = n;
  }
  return r;
}

Comparison compare_solutions(const Problem& p, const std::vector<double>& h1, const std::vector<double>& h2,
                             const SolveOptions& opts, std::optional<double> tol) {
  Problem p1 = p;
  p1.h = h1;
  Problem p2 = p;
  p2.h = h2;
  if (h1.size() != p.h.size() || h2.size() != p.h.size()) throw ShapeError("signal length mismatch");
  Comparison c{solve(p1, opts), solve(p2, opts), {}};
  double umax = 1.0;
  for (double v : c.first.u) umax = std::max(umax, std::abs(v));
  for (double v : c.second.u) umax = std::max(umax, std::abs(v));
  c.ordering = ordering_report(c.first, c.second, tol.value_or(1e-12 * umax));

  const double gamma0 = h1[0] - h2[0];
  bool constant = gamma0 >= 0.0;
  for (std::size_t n = 0; n < h1.size() && constant; ++n) constant = (h1[n] - h2[n]) == gamma0;
  c.ordering.hypothesis_verified = constant;
  return c;
}

const char* direction_name(Direction d) noexcept {
  switch (d) {
    case Direction::Constant: return "constant";
    case Direction::Nondecreasing: return "nondecreasing";
    case Direction::Nonincreasing: return "nonincreasing";
    case Direction::NotMonotone: return "not-monotone";
  }
  return "unknown";
}

MonotonicityReport monotonicity_report(const Trajectory& tr, double tol) {
  const std::size_t steps = tr.u.empty() ? 0 : tr.u.size() - 1;
  MonotonicityReport out{PropertyReport::pass("monotone", tol, steps), Direction::Constant};
  int sign = 0;
  for (std::size_t n = 0; n < steps; ++n) {
    const double v = tr.u[n + 1] - tr.u[n];
    if (sign == 0) {
      if (v > tol) sign = 1;
      else if (v < -tol) sign = -1;
      continue;
    }
    if ((sign > 0 && v < -tol) || (sign < 0 && v > tol)) {
      out.report = PropertyReport::fail("monotone", tol, steps,
                                        Witness{sign > 0 ? "nondecreasing" : "nonincreasing", n, n + 1, tr.u[n + 1],
                                                tr.u[n], sign > 0 ? v : -v});
      out.direction = Direction::NotMonotone;
      return out;
    }
  }
  out.direction = sign > 0 ? Direction::Nondecreasing : sign < 0 ? Direction::Nonincreasing : Direction::Constant;
  return out;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& tr) {
  out << "n,t,u,iters,residual\n";
  for (std::size_t n = 0; n < tr.u.size(); ++n) {
    const std::size_t it = n ? tr.steps[n - 1].iterations : 0;
    const double res = n ? tr.steps[n - 1].residual : 0.0;
    out << n << ',' << format_double(tr.t[n]) << ',' << format_double(tr.u[n]) << ',' << it << ','
        << format_double(res) << '\n';
  }
}

}  // namespace rcmm
