#include "rcmm/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "rcmm/errors.hpp"
#include "rcmm/fode.hpp"
#include "rcmm/kernel_algebra.hpp"
#include "rcmm/text_io.hpp"
#include "rcmm/uniform.hpp"

namespace rcmm::harness {

Rhs make_rhs(std::string_view name) {
  if (name == "sin1u2")
    return {[](double, double u) { return std::sin(1.0 + u * u); },
            [](double, double u) { return 2.0 * u * std::cos(1.0 + u * u); }};
  if (name == "neg") return {[](double, double u) { return -u; }, [](double, double) { return -1.0; }};
  if (name == "one") return {[](double, double) { return 1.0; }, [](double, double) { return 0.0; }};
  if (name.starts_with("linear:")) {
    const double k = parse_double(name.substr(7));
    return {[k](double, double u) { return k * u; }, [k](double, double) { return k; }};
  }
  throw ParseError("unknown right-hand side '" + std::string(name) + "' (known: sin1u2, neg, one, linear:k)");
}

void validate_fode_mesh(const Mesh& mesh) {
  // tau_j / t_n is smallest for the smallest step against the horizon.
  double tau_min = mesh.step_sizes()[0];
  for (double s : mesh.step_sizes()) tau_min = std::min(tau_min, s);
  if (tau_min / mesh.horizon() < 1e-12)
    throw InvalidMesh("mesh has a step below 1e-12 of the horizon; closed-form kernel entries would be unreliable");
}

ArrayKernel load_kernel_source(std::string_view source, std::size_t steps_override) {
  const auto colon = source.find(':');
  if (colon == std::string_view::npos) throw ParseError("kernel source needs 'fode:...' or 'file:...'");
  const auto kind = source.substr(0, colon);
  const auto rest = source.substr(colon + 1);
  if (kind == "file") return load_kernel_csv(std::string(trim(rest)));
  if (kind == "fode") {
    const auto comma = rest.find(',');
    if (comma == std::string_view::npos) throw ParseError("fode source needs 'fode:alpha,<mesh spec>'");
    const double alpha = parse_double(rest.substr(0, comma));
    Mesh mesh = parse_mesh_spec(rest.substr(comma + 1), steps_override);
    validate_fode_mesh(mesh);
    return fode_kernel(FodeKernelSpec(alpha, std::move(mesh)));
  }
  throw ParseError("unknown kernel source kind '" + std::string(kind) + "'");
}

std::vector<PropertyReport> run_kernel_checks(const ArrayKernel& a, const std::vector<std::string>& props, double tol,
                                              const std::vector<double>& lambdas) {
  std::vector<PropertyReport> out;
  for (const auto& p : props) {
    if (p == "column-monotone") out.push_back(is_column_monotone(a, tol));
    else if (p == "row-monotone") out.push_back(is_row_monotone(a, tol));
    else if (p == "doubly-monotone") out.push_back(is_doubly_monotone(a, tol));
    else if (p == "inverse-sign") out.push_back(inverse_sign_pattern(a, tol));
    else if (p == "r-cmm") out.push_back(is_R_CMM(a, tol));
    else if (p == "l-cmm") out.push_back(is_L_CMM(a, tol));
    else if (p == "log-convex") out.push_back(log_convexity_condition(a, tol));
    else if (p == "sufficient-r-cmm") out.push_back(sufficient_R_CMM(a, tol));
    else if (p == "necessary-rccmon") out.push_back(necessary_rccmon(a, tol));
    else if (p == "resolvent-rowsum" || p == "resolvent-nonneg") {
      for (double l : lambdas) {
        auto r = p == "resolvent-rowsum" ? resolvent_rowsum_inequality(a, l, tol) : resolvent_nonneg(a, l, tol);
        r.property += "@lambda=" + format_double(l);
        out.push_back(std::move(r));
      }
    } else {
      throw ParseError("unknown kernel property '" + p + "'");
    }
  }
  return out;
}

std::vector<PropertyReport> run_sequence_checks(std::span<const double> seq, const std::vector<std::string>& props,
                                                double tol) {
  const Sequence s(std::vector<double>(seq.begin(), seq.end()));
  std::vector<PropertyReport> out;
  for (const auto& p : props) {
    if (p == "cmm") out.push_back(is_CMM_uniform(s, tol));
    else if (p == "log-convex") out.push_back(is_logconvex_sequence(s, tol));
    else if (p == "cm") out.push_back(is_CM_sequence(s, tol));
    else throw ParseError("unknown sequence property '" + p + "'");
  }
  return out;
}

std::vector<double> ExperimentConfig::default_initial_values() {
  const double pi = std::numbers::pi;
  return {0.0, 0.1, std::sqrt(1.5 * pi - 1.0), std::sqrt(1.5 * pi - 2.0)};
}

void ExperimentConfig::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0, 1]");
  if (meshes.empty()) throw std::invalid_argument("at least one mesh is required");
  if (!(rel_tol >= 0.0)) throw std::invalid_argument("tolerance must be nonnegative");
}

namespace {

std::string mesh_kind(std::string_view spec) {
  const auto c = spec.find(':');
  return std::string(spec.substr(0, c));
}

std::string with_seed(const std::string& spec, std::optional<std::uint64_t> seed) {
  if (!seed || mesh_kind(spec) != "random") return spec;
  auto f = split_fields(std::string_view(spec).substr(spec.find(':') + 1), ',');
  if (f.size() != 3) throw ParseError("random mesh spec needs scale,N,seed: " + spec);
  return "random:" + std::string(f[0]) + "," + std::string(f[1]) + "," + std::to_string(*seed);
}

Direction expected_direction(double f0) {
  if (f0 > 0.0) return Direction::Nondecreasing;
  if (f0 < 0.0) return Direction::Nonincreasing;
  return Direction::Constant;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

ExperimentResult run_fig1(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::vector<double> u0s = cfg.initial_values.empty() ? ExperimentConfig::default_initial_values()
                                                             : cfg.initial_values;
  const Rhs f = make_rhs(cfg.rhs);
  std::filesystem::create_directories(cfg.out_dir);

  ExperimentResult res;
  for (std::size_t mi = 0; mi < cfg.meshes.size(); ++mi) {
    MeshSummary ms;
    ms.spec = with_seed(cfg.meshes[mi], cfg.seed);
    Mesh mesh = parse_mesh_spec(ms.spec, cfg.steps);
    validate_fode_mesh(mesh);
    ms.steps = mesh.steps();
    ms.horizon = mesh.horizon();
    const FodeKernelSpec spec(cfg.alpha, mesh);
    const ArrayKernel kernel = fode_kernel(spec);
    ms.r_cmm = is_R_CMM(kernel);
    ms.sup_diagonal = step_size_bound(spec, 0.0).sup_diagonal;

    for (double u0 : u0s) {
      const Problem prob(kernel, mesh, constant_signal(mesh, u0), f);
      Trajectory tr = solve(prob);
      for (const auto& w : tr.warnings) ms.warnings.push_back("u0=" + format_double(u0) + ": " + w);

      TrajectorySummary ts;
      ts.u0 = u0;
      ts.f_u0 = f.value(0.0, u0);
      ts.expected = expected_direction(ts.f_u0);
      ts.monotone = monotonicity_report(tr, cfg.rel_tol * max_abs(tr.u));
      ts.direction_ok = ts.monotone.report.holds && ts.monotone.direction == ts.expected;
      res.all_monotone = res.all_monotone && ts.direction_ok;
      ms.monotone.push_back(std::move(ts));
      ms.trajectories.push_back(std::move(tr));
    }

    double umax = 0.0;
    for (const auto& tr : ms.trajectories) umax = std::max(umax, max_abs(tr.u));
    for (std::size_t i = 0; i < u0s.size(); ++i)
      for (std::size_t j = 0; j < u0s.size(); ++j)
        if (u0s[i] > u0s[j]) {
          PairSummary ps{i, j, ordering_report(ms.trajectories[i], ms.trajectories[j], cfg.rel_tol * umax)};
          ps.ordering.hypothesis_verified = true;  // constant signals u0_i > u0_j
          res.all_ordered = res.all_ordered && ps.ordering.ordered();
          ms.pairs.push_back(std::move(ps));
        }

    ms.csv = cfg.out_dir / ("mesh" + std::to_string(mi + 1) + "_" + mesh_kind(ms.spec) + ".csv");
    std::ofstream out(ms.csv);
    if (!out) throw std::runtime_error("cannot write " + ms.csv.string());
    out << "n,t";
    for (double u0 : u0s) out << ",u@u0=" << format_double(u0);
    out << '\n';
    for (std::size_t n = 0; n <= mesh.steps(); ++n) {
      out << n << ',' << format_double(mesh.t(n));
      for (const auto& tr : ms.trajectories) out << ',' << format_double(tr.u[n]);
      out << '\n';
    }
    res.meshes.push_back(std::move(ms));
  }

  std::ofstream summary(cfg.out_dir / "summary.txt");
  print_summary(summary, res);
  return res;
}

void print_summary(std::ostream& out, const ExperimentResult& r) {
  for (const auto& m : r.meshes) {
    out << "mesh " << m.spec << ": N=" << m.steps << " t_N=" << format_double(m.horizon)
        << " sup a^j_0=" << format_double(m.sup_diagonal) << " r-cmm=" << (m.r_cmm.holds ? "yes" : "NO") << '\n';
    for (const auto& t : m.monotone) {
      out << "  u0=" << format_double(t.u0) << " f(u0)=" << format_double(t.f_u0)
          << " expected=" << direction_name(t.expected) << " observed=" << direction_name(t.monotone.direction)
          << (t.direction_ok ? " ok" : " FAIL") << '\n';
    }
    for (const auto& p : m.pairs) {
      out << "  order u0=" << format_double(m.monotone[p.upper].u0) << " >= u0=" << format_double(m.monotone[p.lower].u0)
          << ": min gap " << format_double(p.ordering.min_gap) << (p.ordering.ordered() ? " ok" : " FAIL");
      if (p.ordering.first_violation) out << " (first crossing at n=" << *p.ordering.first_violation << ")";
      out << '\n';
    }
    for (const auto& w : m.warnings) out << "  warning: " << w << '\n';
    out << "  data: " << m.csv.string() << '\n';
  }
  out << "monotone trajectories: " << (r.all_monotone ? "PASS" : "FAIL") << '\n';
  out << "non-crossing: " << (r.all_ordered ? "PASS" : "FAIL") << '\n';
}

void csv_to_plotdata(std::istream& in, std::ostream& out) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("plot data: empty input");
  const auto header = split_fields(trim(line), ',');
  if (header.size() < 3 || header[0] != "n" || header[1] != "t")
    throw ParseError("plot data: header must start with 'n,t' and name at least one series");
  std::vector<std::size_t> cols;
  std::vector<std::string> names;
  for (std::size_t c = 2; c < header.size(); ++c) {
    if (header[c] == "iters" || header[c] == "residual") continue;
    cols.push_back(c);
    names.emplace_back(header[c]);
  }
  if (cols.empty()) throw ParseError("plot data: no series columns");

  std::vector<double> t;
  std::vector<std::vector<double>> series(cols.size());
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const auto s = trim(line);
    if (s.empty()) continue;
    const auto f = split_fields(s, ',');
    if (f.size() != header.size())
      throw ParseError("plot data line " + std::to_string(lineno) + ": expected " + std::to_string(header.size()) +
                       " fields");
    t.push_back(parse_double(f[1]));
    for (std::size_t i = 0; i < cols.size(); ++i) series[i].push_back(parse_double(f[cols[i]]));
  }
  if (t.empty()) throw ParseError("plot data: series are empty");

  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) out << "\n\n";
    out << "# " << names[i] << '\n';
    for (std::size_t r = 0; r < t.size(); ++r) out << format_double(t[r]) << ' ' << format_double(series[i][r]) << '\n';
  }
}

}  // namespace rcmm::harness
