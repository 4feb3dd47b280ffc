#include "rcmm/kernel_algebra.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "rcmm/errors.hpp"
#include "rcmm/simd/kernels.hpp"
#include "rcmm/text_io.hpp"

namespace rcmm {

namespace {

void require_same_rows(const ArrayKernel& a, const ArrayKernel& b, const char* what) {
  if (a.rows() != b.rows())
    throw ShapeError(std::string(what) + ": row counts differ (" + std::to_string(a.rows()) + " vs " +
                     std::to_string(b.rows()) + ")");
}

void require_invertible(const ArrayKernel& a) {
  for (std::size_t n = 1; n <= a.rows(); ++n)
    if (a(n, 0) == 0.0) throw SingularKernel("zero diagonal entry a^" + std::to_string(n) + "_0");
}

}  // namespace

ArrayKernel pconv(const ArrayKernel& a, const ArrayKernel& b) {
  require_same_rows(a, b, "pconv");
  ArrayKernel c(a.rows());
  for (std::size_t n = 1; n <= a.rows(); ++n) {
    auto out = c.row(n);
    // Row j of B lands at offsets (n-j) .. (n-1) of row n of C.
    for (std::size_t j = 1; j <= n; ++j) simd::axpy(a(n, n - j), b.row(j), out.subspan(n - j, j));
  }
  return c;
}

std::vector<double> pconv_vec(const ArrayKernel& a, std::span<const double> x) {
  if (x.size() != a.rows())
    throw ShapeError("pconv_vec: vector length " + std::to_string(x.size()) + " vs " + std::to_string(a.rows()) +
                     " rows");
  std::vector<double> y(x.size());
  for (std::size_t n = 1; n <= a.rows(); ++n) y[n - 1] = simd::dot_reversed(a.row(n), x.first(n));
  return y;
}

ArrayKernel identity_kernel(std::size_t rows) {
  ArrayKernel k(rows);
  for (std::size_t n = 1; n <= rows; ++n) k(n, 0) = 1.0;
  return k;
}

ArrayKernel ones_kernel(std::size_t rows) {
  ArrayKernel k(rows);
  for (double& v : k.values()) v = 1.0;
  return k;
}

ArrayKernel ones_inverse_kernel(std::size_t rows) {
  ArrayKernel k(rows);
  for (std::size_t n = 1; n <= rows; ++n) {
    k(n, 0) = 1.0;
    if (n >= 2) k(n, 1) = -1.0;
  }
  return k;
}

SpecialKernels special_kernels(std::size_t rows) {
  return {identity_kernel(rows), ones_kernel(rows), ones_inverse_kernel(rows)};
}

ArrayKernel pinv(const ArrayKernel& a) {
  require_invertible(a);
  ArrayKernel b(a.rows());
  for (std::size_t n = 1; n <= a.rows(); ++n) {
    auto row = b.row(n);
    row[0] = 1.0 / a(n, 0);
    // Offsets 1..n-1 of `row` hold partial sums until finalized.
    for (std::size_t j = n; j >= 2; --j) {
      simd::axpy(row[n - j], a.row(j).subspan(1), row.subspan(n - j + 1, j - 1));
      row[n - j + 1] = -row[n - j + 1] / a(j - 1, 0);
    }
  }
  return b;
}

ArrayKernel pinv_reference(const ArrayKernel& a) {
  require_invertible(a);
  ArrayKernel b(a.rows());
  for (std::size_t n = 1; n <= a.rows(); ++n) {
    b(n, 0) = 1.0 / a(n, 0);
    for (std::size_t k = n - 1; k >= 1; --k) {
      double s = 0.0;
      for (std::size_t j = k + 1; j <= n; ++j) s += b(n, n - j) * a(j, j - k);
      b(n, n - k) = -s / a(k, 0);
    }
  }
  return b;
}

ArrayKernel right_complementary(const ArrayKernel& a) {
  ArrayKernel c = pinv(a);
  for (std::size_t n = 1; n <= c.rows(); ++n) {
    auto r = c.row(n);
    for (std::size_t k = 1; k < n; ++k) r[k] += r[k - 1];
  }
  return c;
}

ArrayKernel left_complementary(const ArrayKernel& a) { return pconv(ones_kernel(a.rows()), pinv(a)); }

ArrayKernel conjugate_by_L(const ArrayKernel& a) {
  const std::size_t n = a.rows();
  return pconv(pconv(ones_inverse_kernel(n), a), ones_kernel(n));
}

ArrayKernel shifted(const ArrayKernel& a, double lambda) {
  ArrayKernel s = a;
  for (double& v : s.values()) v *= lambda;
  for (std::size_t n = 1; n <= s.rows(); ++n) s(n, 0) += 1.0;
  return s;
}

ArrayKernel resolvent(const ArrayKernel& a, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("resolvent: lambda must be positive");
  require_invertible(a);
  ArrayKernel r = pinv(shifted(a, lambda));
  for (double& v : r.values()) v = -v;
  for (std::size_t n = 1; n <= r.rows(); ++n) r(n, 0) += 1.0;
  return r;
}

ArrayKernel scale_right(const ArrayKernel& a, const DiagonalKernel& d) {
  if (a.rows() != d.rows()) throw ShapeError("scale_right: diagonal length differs from kernel rows");
  ArrayKernel s = a;
  for (std::size_t n = 1; n <= s.rows(); ++n)
    for (std::size_t k = 0; k < n; ++k) s(n, k) *= d[n - k];
  return s;
}

void write_kernel_csv(std::ostream& out, const ArrayKernel& a) {
  for (std::size_t n = 1; n <= a.rows(); ++n) {
    const auto r = a.row(n);
    for (std::size_t k = 0; k < n; ++k) {
      if (k) out << ',';
      out << format_double(r[k]);
    }
    out << '\n';
  }
}

ArrayKernel read_kernel_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto s = trim(line);
    if (s.empty() || s.front() == '#') continue;
    std::vector<double> r;
    for (auto f : split_fields(s, ',')) r.push_back(parse_double(f));
    if (r.size() != rows.size() + 1)
      throw ParseError("kernel CSV line " + std::to_string(lineno) + ": expected " + std::to_string(rows.size() + 1) +
                       " entries, got " + std::to_string(r.size()));
    rows.push_back(std::move(r));
  }
  if (rows.empty()) throw ParseError("kernel CSV is empty");
  return ArrayKernel::from_rows(rows);
}

ArrayKernel load_kernel_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open kernel file '" + path + "'");
  return read_kernel_csv(in);
}

}  // namespace rcmm
