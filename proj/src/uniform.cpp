#include "rcmm/uniform.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>

#include "rcmm/errors.hpp"
#include "rcmm/simd/kernels.hpp"
#include "rcmm/text_io.hpp"

namespace rcmm {

using boost::multiprecision::cpp_int;

Sequence::Sequence(std::vector<double> a) : a_(std::move(a)) {
  if (a_.empty()) throw ShapeError("sequence must have at least one entry");
  for (double v : a_)
    if (!std::isfinite(v)) throw ShapeError("sequence entries must be finite");
}

Sequence delta_sequence(std::size_t length) {
  std::vector<double> d(length, 0.0);
  d.at(0) = 1.0;
  return Sequence(std::move(d));
}

Sequence conv(const Sequence& a, const Sequence& b) {
  if (a.size() != b.size()) throw ShapeError("conv: sequence lengths differ");
  std::vector<double> c(a.size());
  for (std::size_t n = 0; n < a.size(); ++n) c[n] = simd::dot_reversed(a.values().first(n + 1), b.values().first(n + 1));
  return Sequence(std::move(c));
}

Sequence conv_inverse(const Sequence& a) {
  if (a[0] == 0.0) throw SingularKernel("conv_inverse: a_0 == 0");
  std::vector<double> b(a.size(), 0.0);
  b[0] = 1.0 / a[0];
  for (std::size_t n = 1; n < a.size(); ++n) {
    // sum_{j=1..n} a_j b_{n-j}
    const double s = simd::dot_reversed(a.values().subspan(1, n), std::span<const double>(b).first(n));
    b[n] = -s / a[0];
  }
  return Sequence(std::move(b));
}

ArrayKernel lift_to_kernel(const Sequence& a) {
  ArrayKernel k(a.size());
  for (std::size_t n = 1; n <= a.size(); ++n)
    for (std::size_t o = 0; o < n; ++o) k(n, o) = a[o];
  return k;
}

namespace {

double seq_scale(std::span<const double> a) {
  double m = 1.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

// Nonnegative and nonincreasing; witness (j, j-1).
std::optional<Witness> scan_nonincreasing(std::span<const double> a, double tol) {
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] < -tol) return Witness{"nonneg", j, j, a[j], 0.0, a[j]};
    if (j >= 1 && a[j - 1] - a[j] < -tol) return Witness{"nonincreasing", j, j - 1, a[j - 1], a[j], a[j - 1] - a[j]};
  }
  return std::nullopt;
}

// Exact value m * 2^e of a finite double as an integer scaled by 2^-emin.
struct ExactScaled {
  std::vector<cpp_int> values;
  int emin = 0;
};

ExactScaled to_exact(std::span<const double> v) {
  constexpr int kMant = std::numeric_limits<double>::digits;  // 53
  int emin = std::numeric_limits<int>::max();
  std::vector<std::pair<long long, int>> parts(v.size(), {0, 0});
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0.0) continue;
    int e = 0;
    const double m = std::frexp(v[i], &e);  // v = m 2^e, 0.5 <= |m| < 1
    parts[i] = {static_cast<long long>(std::ldexp(m, kMant)), e - kMant};
    emin = std::min(emin, e - kMant);
  }
  ExactScaled out;
  out.emin = emin == std::numeric_limits<int>::max() ? 0 : emin;
  out.values.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (parts[i].first == 0) continue;
    out.values[i] = cpp_int(parts[i].first) << (parts[i].second - out.emin);
  }
  return out;
}

double to_double(const cpp_int& x, int e) {
  if (x == 0) return 0.0;
  const bool neg = x < 0;
  cpp_int m = neg ? cpp_int(-x) : x;
  const long shift = std::max<long>(0, static_cast<long>(boost::multiprecision::msb(m)) - 62);
  m >>= shift;
  const double d = std::ldexp(static_cast<double>(m.convert_to<unsigned long long>()), e + static_cast<int>(shift));
  return neg ? -d : d;
}

}  // namespace

PropertyReport is_CMM_uniform(const Sequence& a, double tol) {
  const double t = tol * seq_scale(a.values());
  const double pos = kPositivityTol * seq_scale(a.values());
  if (!(a[0] > pos)) return PropertyReport::fail("cmm", t, a.size(), Witness{"positive_a0", 0, 0, a[0], pos, a[0] - pos});
  if (auto w = scan_nonincreasing(a.values(), t)) return PropertyReport::fail("cmm", t, a.size(), *w);

  const Sequence b = conv_inverse(a);
  const double tb = tol * seq_scale(b.values());
  PropertyReport out = PropertyReport::pass("cmm", tb, a.size());
  for (std::size_t j = 1; j < b.size(); ++j) {
    if (b[j] > tb) {
      out = PropertyReport::fail("cmm", tb, a.size(), Witness{"inverse_sign", j, j, 0.0, b[j], -b[j]});
      break;
    }
  }

  // Complementary sequence a^c = b * (1, 1, ...): prefix sums of b.
  std::vector<double> ac(b.size());
  double s = 0.0;
  for (std::size_t j = 0; j < b.size(); ++j) ac[j] = (s += b[j]);
  const bool comp_ok = !scan_nonincreasing(ac, tol * seq_scale(ac)).has_value();
  if (comp_ok != out.holds)
    out.warning = std::string("complementary sequence check ") + (comp_ok ? "holds" : "fails") +
                  " while inverse sign check " + (out.holds ? "holds" : "fails");
  return out;
}

PropertyReport is_logconvex_sequence(const Sequence& a, double tol) {
  const double s = seq_scale(a.values());
  const double t = tol * s;
  if (auto w = scan_nonincreasing(a.values(), t)) return PropertyReport::fail("log-convex-sequence", t, a.size(), *w);
  const double tp = tol * s * s;
  for (std::size_t j = 1; j + 1 < a.size(); ++j) {
    const double lhs = a[j - 1] * a[j + 1];
    const double rhs = a[j] * a[j];
    if (lhs - rhs < -tp)
      return PropertyReport::fail("log-convex-sequence", tp, a.size(), Witness{"log-convex", j, j, lhs, rhs, lhs - rhs});
  }
  return PropertyReport::pass("log-convex-sequence", tp, a.size());
}

PropertyReport is_CM_sequence(const Sequence& v, double tol) {
  const double scale = seq_scale(v.values());
  ExactScaled ex = to_exact(v.values());
  // Row j of the triangle holds ((I - E)^j v)_k for k = 0..N-1-j; mag holds
  // ((I + E)^j |v|)_k, the size of the terms entering that difference.
  std::vector<cpp_int>& row = ex.values;
  std::vector<double> mag(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) mag[k] = std::abs(v[k]);
  for (std::size_t j = 0; j < v.size(); ++j) {
    for (std::size_t k = 0; k + j < v.size(); ++k) {
      if (row[k] >= 0) continue;
      const double d = to_double(row[k], ex.emin);
      const double t = tol * std::max(scale, mag[k]);
      if (d < -t) return PropertyReport::fail("cm-sequence", t, v.size(), Witness{"difference", j, k, d, 0.0, d});
    }
    for (std::size_t k = 0; k + j + 1 < v.size(); ++k) {
      row[k] -= row[k + 1];
      mag[k] += mag[k + 1];
    }
  }
  return PropertyReport::pass("cm-sequence", tol * scale, v.size());
}

Sequence read_sequence(std::istream& in) {
  std::vector<double> a;
  std::string line;
  while (std::getline(in, line)) {
    const auto s = trim(line);
    if (s.empty() || s.front() == '#') continue;
    a.push_back(parse_double(s));
  }
  if (a.empty()) throw ParseError("sequence file is empty");
  return Sequence(std::move(a));
}

Sequence load_sequence(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open sequence file '" + path + "'");
  return read_sequence(in);
}

}  // namespace rcmm
