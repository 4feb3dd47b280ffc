#pragma once

// Independent oracles and generators shared by the unit and acceptance tests.
// Nothing here calls into the library's algebra; kernels are only read
// through operator() and built through from_rows / the mesh constructors.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "rcmm/array_kernel.hpp"
#include "rcmm/mesh.hpp"

namespace rcmm::test {

using Dense = std::vector<std::vector<double>>;

// Build a kernel from rows listed in column order [a^n_{n-1}, ..., a^n_0].
inline ArrayKernel from_column_rows(const std::vector<std::vector<double>>& rows) {
  std::vector<std::vector<double>> offs;
  for (const auto& r : rows) offs.emplace_back(r.rbegin(), r.rend());
  return ArrayKernel::from_rows(offs);
}

// Kernel as an N x N lower-triangular matrix, M[n-1][j-1] = a^n_{n-j}.
inline Dense to_dense(const ArrayKernel& a) {
  const std::size_t N = a.rows();
  Dense m(N, std::vector<double>(N, 0.0));
  for (std::size_t n = 1; n <= N; ++n)
    for (std::size_t j = 1; j <= n; ++j) m[n - 1][j - 1] = a(n, n - j);
  return m;
}

// Gaussian elimination with partial pivoting; solves M x = rhs.
inline std::vector<double> dense_solve(Dense m, std::vector<double> rhs) {
  const std::size_t n = m.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(m[r][c]) > std::abs(m[p][c])) p = r;
    if (m[p][c] == 0.0) throw std::runtime_error("singular dense system");
    std::swap(m[p], m[c]);
    std::swap(rhs[p], rhs[c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = m[r][c] / m[c][c];
      if (f == 0.0) continue;
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = rhs[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= m[i][k] * x[k];
    x[i] = s / m[i][i];
  }
  return x;
}

// Unknowns b^n_k of B with B (*) A = I, assembled as one N(N+1)/2 system:
// for each (n, k), sum_{j=k..n} b^n_{n-j} a^j_{j-k} = [n == k].
inline ArrayKernel brute_force_inverse(const ArrayKernel& a) {
  const std::size_t N = a.rows();
  const std::size_t U = N * (N + 1) / 2;
  const auto idx = [](std::size_t n, std::size_t off) { return n * (n - 1) / 2 + off; };
  Dense m(U, std::vector<double>(U, 0.0));
  std::vector<double> rhs(U, 0.0);
  for (std::size_t n = 1; n <= N; ++n)
    for (std::size_t k = 1; k <= n; ++k) {
      const std::size_t eq = idx(n, n - k);
      for (std::size_t j = k; j <= n; ++j) m[eq][idx(n, n - j)] += a(j, j - k);
      rhs[eq] = n == k ? 1.0 : 0.0;
    }
  const auto x = dense_solve(m, rhs);
  ArrayKernel b(N);
  for (std::size_t i = 0; i < U; ++i) b.values()[i] = x[i];
  return b;
}

// Dense product of kernels by the matrix picture (independent of pconv).
inline ArrayKernel dense_product(const ArrayKernel& a, const ArrayKernel& b) {
  const std::size_t N = a.rows();
  ArrayKernel c(N);
  for (std::size_t n = 1; n <= N; ++n)
    for (std::size_t k = 1; k <= n; ++k) {
      double s = 0.0;
      for (std::size_t j = k; j <= n; ++j) s += a(n, n - j) * b(j, j - k);
      c(n, n - k) = s;
    }
  return c;
}

inline double max_abs_entry(const ArrayKernel& a) {
  double m = 0.0;
  for (double v : a.values()) m = std::max(m, std::abs(v));
  return m;
}

inline double max_diff(const ArrayKernel& a, const ArrayKernel& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  return m;
}

inline ArrayKernel random_kernel(std::mt19937_64& rng, std::size_t N, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  ArrayKernel a(N);
  for (double& v : a.values()) v = u(rng);
  return a;
}

// (1/Gamma(alpha)) int_{t_{j-1}}^{t_j} (t_n - s)^(alpha - 1) ds by tanh-sinh
// quadrature (handles the endpoint singularity when j = n).
inline double fode_entry_quadrature(const Mesh& m, double alpha, std::size_t n, std::size_t j) {
  boost::math::quadrature::tanh_sinh<double> q;
  const double tn = m.t(n);
  const double a = m.t(j - 1);
  const double b = m.t(j);
  // Integrate in w = t_n - s, which keeps the singular endpoint at w = 0.
  // The second argument is the signed distance to the nearer endpoint, so w
  // near the lower limit is formed without cancellation.
  const double lo = tn - b;
  const double hi = tn - a;
  const double mid = 0.5 * (lo + hi);
  const auto g = [&](double w, double wc) {
    const double x = w < mid ? lo - wc : w;
    return std::pow(x, alpha - 1.0);
  };
  return q.integrate(g, lo, hi) / std::tgamma(alpha);
}

// Implicit Euler for u' = f(u), solved per step with many bisection steps
// plus a final Newton polish. Written without any library solver code.
inline std::vector<double> implicit_euler(const std::function<double(double)>& f,
                                          const std::function<double(double)>& df, double u0, double tau,
                                          std::size_t steps) {
  std::vector<double> u(steps + 1);
  u[0] = u0;
  for (std::size_t n = 1; n <= steps; ++n) {
    const double prev = u[n - 1];
    const auto g = [&](double x) { return x - tau * f(x) - prev; };
    double lo = prev - 1.0, hi = prev + 1.0;
    while (g(lo) > 0) lo -= 1.0;
    while (g(hi) < 0) hi += 1.0;
    for (int i = 0; i < 200 && hi - lo > 0; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      (g(mid) < 0 ? lo : hi) = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 3; ++i) {
      const double d = 1.0 - tau * df(x);
      const double xn = x - g(x) / d;
      if (std::abs(g(xn)) < std::abs(g(x))) x = xn;
    }
    u[n] = x;
  }
  return u;
}

// Random step sizes; kind 0 uniform draws, 1 log-uniform over 4 decades,
// 2 alternating ratio 10 / 0.1, 3 alternating with random jitter.
inline Mesh random_test_mesh(std::mt19937_64& rng, std::size_t N, int kind) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> tau(N);
  const double base = 0.001 + 0.1 * u(rng);
  for (std::size_t j = 0; j < N; ++j) {
    switch (kind) {
      case 0: tau[j] = 0.001 + 0.1 * u(rng); break;
      case 1: tau[j] = base * std::pow(10.0, 4.0 * u(rng) - 2.0); break;
      case 2: tau[j] = j % 2 ? base * 10.0 : base; break;
      default: tau[j] = (j % 2 ? 10.0 : 1.0) * base * (0.5 + u(rng)); break;
    }
  }
  return Mesh::from_steps(tau);
}

}  // namespace rcmm::test
