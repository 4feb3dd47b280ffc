// rcmm: kernel property checks, solves and the monotonicity experiment.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "rcmm/errors.hpp"
#include "rcmm/fode.hpp"
#include "rcmm/harness.hpp"
#include "rcmm/kernel_algebra.hpp"
#include "rcmm/solver.hpp"
#include "rcmm/uniform.hpp"

using namespace rcmm;
namespace h = rcmm::harness;

namespace {

struct CheckArgs {
  std::string source;
  std::string uniform;
  std::vector<std::string> props;
  double tol = kDefaultTol;
  std::vector<double> lambdas{0.1, 1.0, 10.0, 100.0};
  std::size_t steps = 0;
  bool records = false;
};

int cmd_check(const CheckArgs& a) {
  if (a.source.empty() == a.uniform.empty()) throw ParseError("check needs exactly one of <source> or --uniform");
  std::vector<PropertyReport> reports;
  if (!a.uniform.empty() || a.source.starts_with("seq:")) {
    const Sequence s = load_sequence(a.uniform.empty() ? a.source.substr(4) : a.uniform);
    reports = h::run_sequence_checks(s.values(), a.props.empty() ? std::vector<std::string>{"cmm"} : a.props, a.tol);
  } else {
    const ArrayKernel k = h::load_kernel_source(a.source, a.steps);
    reports = h::run_kernel_checks(k, a.props.empty() ? std::vector<std::string>{"r-cmm"} : a.props, a.tol,
                                   a.lambdas);
  }
  bool all = true;
  for (const auto& r : reports) {
    a.records ? print_report_record(std::cout, r) : print_report(std::cout, r);
    all = all && r.holds;
  }
  return all ? h::kExitOk : h::kExitAssertion;
}

struct SolveArgs {
  std::string f = "sin1u2";
  double alpha = 0.6;
  std::string mesh = "uniform:100,1";
  double u0 = 0.0;
  std::size_t steps = 0;
  std::string out;
};

int cmd_solve(const SolveArgs& a) {
  Mesh mesh = parse_mesh_spec(a.mesh, a.steps);
  h::validate_fode_mesh(mesh);
  const ArrayKernel k = fode_kernel(FodeKernelSpec(a.alpha, mesh));
  const Problem p(k, mesh, constant_signal(mesh, a.u0), h::make_rhs(a.f));
  const Trajectory tr = solve(p);
  for (const auto& w : tr.warnings) std::cerr << w << '\n';
  if (a.out.empty() || a.out == "-") {
    write_trajectory_csv(std::cout, tr);
  } else {
    std::ofstream out(a.out);
    if (!out) throw ParseError("cannot write " + a.out);
    write_trajectory_csv(out, tr);
  }
  return h::kExitOk;
}

int cmd_plotdata(const std::string& in_path, const std::string& out_path) {
  std::ifstream in(in_path);
  if (!in) throw ParseError("cannot open " + in_path);
  if (out_path.empty() || out_path == "-") {
    h::csv_to_plotdata(in, std::cout);
  } else {
    std::ofstream out(out_path);
    if (!out) throw ParseError("cannot write " + out_path);
    h::csv_to_plotdata(in, out);
  }
  return h::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Array kernels, complete monotonicity checks and a Volterra solver"};
  app.require_subcommand(1);

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Check structural properties of a kernel or sequence");
  c->add_option("source", check.source, "fode:alpha,<mesh>, file:kernel.csv or seq:values.txt");
  c->add_option("--uniform", check.uniform, "Sequence file (one value per line) for uniform-mesh checks");
  c->add_option("--prop", check.props, "Property to check (repeatable)");
  c->add_option("--tol", check.tol, "Relative tolerance")->check(CLI::NonNegativeNumber);
  c->add_option("--lambda", check.lambdas, "Resolvent parameters (repeatable)");
  c->add_option("--steps", check.steps, "Override N of the mesh spec");
  c->add_flag("--records", check.records, "key=value output");

  SolveArgs sol;
  auto* s = app.add_subcommand("solve", "Solve D^alpha u = f(u) with u(0) = u0; writes a trajectory CSV");
  s->add_option("--f", sol.f, "sin1u2, neg, one or linear:k");
  s->add_option("--alpha", sol.alpha, "Fractional order in (0, 1]");
  s->add_option("--mesh", sol.mesh, "Mesh spec");
  s->add_option("--u0", sol.u0, "Initial value");
  s->add_option("--steps", sol.steps, "Override N of the mesh spec");
  s->add_option("--out", sol.out, "Output file (default stdout)");

  h::ExperimentConfig cfg;
  std::string out_dir = cfg.out_dir.string();
  std::uint64_t seed = 0;
  auto* e = app.add_subcommand("experiment", "Run a named experiment");
  e->require_subcommand(1);
  auto* fig1 = e->add_subcommand("fig1", "Monotonicity and non-crossing of sin(1+u^2) solutions on three meshes");
  fig1->add_option("--alpha", cfg.alpha, "Fractional order in (0, 1]");
  fig1->add_option("--mesh", cfg.meshes, "Mesh spec (repeatable; replaces the defaults)");
  fig1->add_option("--u0", cfg.initial_values, "Initial value (repeatable)");
  fig1->add_option("--steps", cfg.steps, "Steps per mesh")->check(CLI::PositiveNumber);
  auto* seed_opt = fig1->add_option("--seed", seed, "Seed for random meshes");
  fig1->add_option("--out", out_dir, "Output directory");
  fig1->add_option("--tol", cfg.rel_tol, "Relative tolerance on max|u|")->check(CLI::NonNegativeNumber);
  fig1->add_option("--f", cfg.rhs, "Right-hand side");

  std::string pd_in, pd_out;
  auto* pd = app.add_subcommand("plotdata", "Convert a series CSV to gnuplot data blocks");
  pd->add_option("in", pd_in, "Input CSV")->required();
  pd->add_option("out", pd_out, "Output file (default stdout)");

  double k_alpha = 0.6;
  std::string k_mesh;
  std::size_t k_steps = 0;
  auto* kc = app.add_subcommand("kernel", "Write the fractional-ODE kernel as CSV");
  kc->add_option("--alpha", k_alpha, "Fractional order in (0, 1]");
  kc->add_option("--mesh", k_mesh, "Mesh spec")->required();
  kc->add_option("--steps", k_steps, "Override N of the mesh spec");

  std::string m_mesh;
  std::size_t m_steps = 0;
  auto* mc = app.add_subcommand("mesh", "Write the step sizes of a mesh, one per line");
  mc->add_option("--mesh", m_mesh, "Mesh spec")->required();
  mc->add_option("--steps", m_steps, "Override N of the mesh spec");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? h::kExitOk : h::kExitInput;
  }

  try {
    if (*c) return cmd_check(check);
    if (*s) return cmd_solve(sol);
    if (*fig1) {
      if (*seed_opt) cfg.seed = seed;
      cfg.out_dir = out_dir;
      const auto res = h::run_fig1(cfg);
      h::print_summary(std::cout, res);
      return res.passed() ? h::kExitOk : h::kExitAssertion;
    }
    if (*pd) return cmd_plotdata(pd_in, pd_out);
    if (*kc) {
      Mesh m = parse_mesh_spec(k_mesh, k_steps);
      h::validate_fode_mesh(m);
      write_kernel_csv(std::cout, fode_kernel(FodeKernelSpec(k_alpha, std::move(m))));
      return h::kExitOk;
    }
    if (*mc) {
      write_mesh(std::cout, parse_mesh_spec(m_mesh, m_steps));
      return h::kExitOk;
    }
  } catch (const NonConvergence& err) {
    std::cerr << "error: " << err.what() << '\n';
    return h::kExitAssertion;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return h::kExitInput;
  }
  return h::kExitInput;
}
