#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rcmm {

/// Strictly increasing time grid 0 = t_0 < t_1 < ... < t_N.
///
/// Step sizes are stored alongside the points: tau[n-1] = t[n] - t[n-1],
/// computed by a single subtraction from the stored points. Immutable once
/// built.
class Mesh {
 public:
  /// Validates t[0] == 0, strict increase and finiteness; throws InvalidMesh.
  static Mesh from_points(std::vector<double> t);
  /// Accumulates t_n = t_{n-1} + tau_n; every step must be positive and finite.
  static Mesh from_steps(std::span<const double> tau);

  std::size_t steps() const noexcept { return tau_.size(); }
  std::span<const double> points() const noexcept { return t_; }
  std::span<const double> step_sizes() const noexcept { return tau_; }
  /// Grid point t_n, n = 0..N.
  double t(std::size_t n) const { return t_.at(n); }
  /// Step size tau_n = t_n - t_{n-1}, n = 1..N.
  double tau(std::size_t n) const { return tau_.at(n - 1); }
  double horizon() const noexcept { return t_.back(); }

 private:
  explicit Mesh(std::vector<double> t);
  std::vector<double> t_;
  std::vector<double> tau_;
};

Mesh mesh_uniform(std::size_t steps, double horizon);

/// tau_j = tau1 * ratio^(j-1).
Mesh mesh_geometric(double tau1, double ratio, std::size_t steps);

/// tau_j = c * (1 + b j)^(-p).
Mesh mesh_algebraic_decay(double c, double b, double p, std::size_t steps);

/// tau_j = scale * u_j with u_j drawn from SplitMix64 (see below).
Mesh mesh_random(double scale, std::size_t steps, std::uint64_t seed);

/// SplitMix64 (Steele, Lea & Flood 2014). Constants:
///   state += 0x9E3779B97F4A7C15
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   z ^= z >> 31
/// uniform() maps the top 53 bits to [0, 1) as (x >> 11) * 2^-53.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}
  std::uint64_t next() noexcept;
  double uniform() noexcept;
  /// Uniform on (0,1): redraws while the value is below 1e-12.
  double uniform_open() noexcept;

 private:
  std::uint64_t state_;
};

/// Parses `uniform:N,T`, `geom:tau1,ratio,N`, `decay:c,b,p,N[,tau1]`,
/// `random:scale,N,seed` or `file:path`. The optional fifth decay field
/// replaces tau_1 only; the formula governs every other step. `steps_override`
/// (when nonzero) replaces N for the generated families.
Mesh parse_mesh_spec(std::string_view spec, std::size_t steps_override = 0);

/// Mesh text format: one step size per line, decimal floating point.
Mesh read_mesh(std::istream& in);
Mesh load_mesh(const std::string& path);
void write_mesh(std::ostream& out, const Mesh& mesh);

}  // namespace rcmm
