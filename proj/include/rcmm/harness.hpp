#pragma once

// Experiment harness behind the `rcmm` command line tool.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rcmm/array_kernel.hpp"
#include "rcmm/kernel_props.hpp"
#include "rcmm/mesh.hpp"
#include "rcmm/property_report.hpp"
#include "rcmm/solver.hpp"

namespace rcmm::harness {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitInput = 2;

/// Named right-hand sides: `sin1u2` = sin(1+u^2), `neg` = -u, `one` = 1,
/// `linear:k` = k u. Throws ParseError for unknown names.
Rhs make_rhs(std::string_view name);

/// Kernel sources: `fode:alpha,<mesh spec>` or `file:path.csv`.
ArrayKernel load_kernel_source(std::string_view source, std::size_t steps_override = 0);

/// Rejects meshes with tau_j / t_n < 1e-12 for some j <= n (closed-form
/// differences of nearly equal powers lose all accuracy there).
void validate_fode_mesh(const Mesh& mesh);

/// Property names accepted by `check`: column-monotone, row-monotone,
/// doubly-monotone, inverse-sign, r-cmm, l-cmm, log-convex, sufficient-r-cmm,
/// necessary-rccmon, resolvent-rowsum, resolvent-nonneg (the last two at
/// each `lambdas` value).
std::vector<PropertyReport> run_kernel_checks(const ArrayKernel& a, const std::vector<std::string>& props, double tol,
                                              const std::vector<double>& lambdas);

/// Uniform-mesh properties: cmm, log-convex, cm.
std::vector<PropertyReport> run_sequence_checks(std::span<const double> seq, const std::vector<std::string>& props,
                                                double tol);

struct ExperimentConfig {
  double alpha = 0.6;
  std::vector<std::string> meshes = {"geom:0.01,1.2,30", "decay:0.1,0.5,0.5,100", "random:0.1,100,42"};
  std::vector<double> initial_values;  // empty: the four defaults below
  std::size_t steps = 0;               // 0: each mesh spec's own N
  std::optional<std::uint64_t> seed;   // replaces the seed of random meshes
  std::filesystem::path out_dir = "fig1_out";
  double rel_tol = 1e-12;              // tolerance = rel_tol * max|u|
  std::string rhs = "sin1u2";

  /// 0, 0.1, sqrt(3 pi/2 - 1), sqrt(3 pi/2 - 2).
  static std::vector<double> default_initial_values();
  /// Throws std::invalid_argument on alpha outside (0, 1] or no initial values.
  void validate() const;
};

struct TrajectorySummary {
  double u0 = 0.0;
  double f_u0 = 0.0;
  Direction expected = Direction::Constant;
  MonotonicityReport monotone;
  bool direction_ok = false;
};

struct PairSummary {
  std::size_t upper = 0;  // indices into trajectories, u0[upper] > u0[lower]
  std::size_t lower = 0;
  OrderingReport ordering;
};

struct MeshSummary {
  std::string spec;
  std::size_t steps = 0;
  double horizon = 0.0;
  PropertyReport r_cmm;
  double sup_diagonal = 0.0;  // sup_j a^j_0
  std::vector<Trajectory> trajectories;
  std::vector<TrajectorySummary> monotone;
  std::vector<PairSummary> pairs;
  std::vector<std::string> warnings;
  std::filesystem::path csv;
};

struct ExperimentResult {
  std::vector<MeshSummary> meshes;
  bool all_monotone = true;
  bool all_ordered = true;
  bool passed() const noexcept { return all_monotone && all_ordered; }
};

/// Solves every (mesh, initial value) pair, writes `<out_dir>/mesh<i>_<kind>.csv`
/// (columns `n,t,u@u0=...`) and `<out_dir>/summary.txt`.
ExperimentResult run_fig1(const ExperimentConfig& cfg);
void print_summary(std::ostream& out, const ExperimentResult& r);

/// Multi-series CSV (header `n,t,<series>...`) into gnuplot blocks: one block
/// per series, `# <series name>` then `t value` lines, blocks separated by two
/// blank lines. The columns `iters` and `residual` of a trajectory CSV are
/// skipped. Throws ParseError on malformed or empty input.
void csv_to_plotdata(std::istream& in, std::ostream& out);

}  // namespace rcmm::harness
