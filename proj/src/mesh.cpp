#include "rcmm/mesh.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "rcmm/errors.hpp"
#include "rcmm/text_io.hpp"

namespace rcmm {

Mesh::Mesh(std::vector<double> t) : t_(std::move(t)) {
  tau_.resize(t_.size() - 1);
  for (std::size_t n = 1; n < t_.size(); ++n) tau_[n - 1] = t_[n] - t_[n - 1];
}

Mesh Mesh::from_points(std::vector<double> t) {
  if (t.size() < 2) throw InvalidMesh("mesh needs at least one step");
  if (t.front() != 0.0) throw InvalidMesh("mesh must start at t_0 = 0");
  for (std::size_t n = 1; n < t.size(); ++n) {
    if (!std::isfinite(t[n])) throw InvalidMesh("non-finite grid point at n=" + std::to_string(n));
    if (!(t[n] > t[n - 1])) throw InvalidMesh("grid not strictly increasing at n=" + std::to_string(n));
  }
  return Mesh(std::move(t));
}

Mesh Mesh::from_steps(std::span<const double> tau) {
  std::vector<double> t(tau.size() + 1, 0.0);
  for (std::size_t j = 0; j < tau.size(); ++j) {
    if (!(tau[j] > 0.0) || !std::isfinite(tau[j]))
      throw InvalidMesh("step " + std::to_string(j + 1) + " is not a positive finite number");
    t[j + 1] = t[j] + tau[j];
  }
  return from_points(std::move(t));
}

Mesh mesh_uniform(std::size_t steps, double horizon) {
  if (steps < 1) throw InvalidMesh("uniform mesh needs N >= 1");
  if (!(horizon > 0.0)) throw InvalidMesh("uniform mesh needs T > 0");
  std::vector<double> t(steps + 1);
  for (std::size_t n = 0; n <= steps; ++n)
    t[n] = static_cast<double>(n) * horizon / static_cast<double>(steps);
  return Mesh::from_points(std::move(t));
}

Mesh mesh_geometric(double tau1, double ratio, std::size_t steps) {
  if (!(tau1 > 0.0) || !(ratio > 0.0)) throw InvalidMesh("geometric mesh needs tau1 > 0 and ratio > 0");
  std::vector<double> tau(steps);
  for (std::size_t j = 0; j < steps; ++j) tau[j] = tau1 * std::pow(ratio, static_cast<double>(j));
  return Mesh::from_steps(tau);
}

Mesh mesh_algebraic_decay(double c, double b, double p, std::size_t steps) {
  if (!(c > 0.0) || b < 0.0 || p < 0.0) throw InvalidMesh("decay mesh needs c > 0, b >= 0, p >= 0");
  std::vector<double> tau(steps);
  for (std::size_t j = 1; j <= steps; ++j)
    tau[j - 1] = c * std::pow(1.0 + b * static_cast<double>(j), -p);
  return Mesh::from_steps(tau);
}

std::uint64_t SplitMix64::next() noexcept {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() noexcept {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double SplitMix64::uniform_open() noexcept {
  double u = uniform();
  while (u < 1e-12) u = uniform();
  return u;
}

Mesh mesh_random(double scale, std::size_t steps, std::uint64_t seed) {
  if (!(scale > 0.0)) throw InvalidMesh("random mesh needs scale > 0");
  SplitMix64 rng(seed);
  std::vector<double> tau(steps);
  for (auto& s : tau) s = scale * rng.uniform_open();
  return Mesh::from_steps(tau);
}

namespace {

std::size_t parse_count(std::string_view s) {
  s = trim(s);
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError("not a count: '" + std::string(s) + "'");
  return v;
}

std::uint64_t parse_seed(std::string_view s) {
  s = trim(s);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError("not a seed: '" + std::string(s) + "'");
  return v;
}

}  // namespace

Mesh parse_mesh_spec(std::string_view spec, std::size_t steps_override) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw ParseError("mesh spec needs 'kind:params': " + std::string(spec));
  const auto kind = trim(spec.substr(0, colon));
  const auto rest = spec.substr(colon + 1);
  if (kind == "file") return load_mesh(std::string(trim(rest)));

  const auto f = split_fields(rest, ',');
  const auto n_or = [&](std::string_view s) { return steps_override ? steps_override : parse_count(s); };
  const auto need = [&](std::size_t lo, std::size_t hi) {
    if (f.size() < lo || f.size() > hi)
      throw ParseError("wrong number of fields in mesh spec: " + std::string(spec));
  };
  if (kind == "uniform") {
    need(2, 2);
    return mesh_uniform(n_or(f[0]), parse_double(f[1]));
  }
  if (kind == "geom") {
    need(3, 3);
    return mesh_geometric(parse_double(f[0]), parse_double(f[1]), n_or(f[2]));
  }
  if (kind == "decay") {
    need(4, 5);
    const Mesh m = mesh_algebraic_decay(parse_double(f[0]), parse_double(f[1]), parse_double(f[2]), n_or(f[3]));
    if (f.size() == 4) return m;
    std::vector<double> tau(m.step_sizes().begin(), m.step_sizes().end());
    tau.front() = parse_double(f[4]);
    return Mesh::from_steps(tau);
  }
  if (kind == "random") {
    need(3, 3);
    return mesh_random(parse_double(f[0]), n_or(f[1]), parse_seed(f[2]));
  }
  throw ParseError("unknown mesh kind '" + std::string(kind) + "'");
}

Mesh read_mesh(std::istream& in) {
  std::vector<double> tau;
  std::string line;
  while (std::getline(in, line)) {
    const auto s = trim(line);
    if (s.empty() || s.front() == '#') continue;
    tau.push_back(parse_double(s));
  }
  if (tau.empty()) throw InvalidMesh("mesh file has no steps");
  return Mesh::from_steps(tau);
}

Mesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open mesh file '" + path + "'");
  return read_mesh(in);
}

void write_mesh(std::ostream& out, const Mesh& mesh) {
  for (double s : mesh.step_sizes()) out << format_double(s) << '\n';
}

}  // namespace rcmm
