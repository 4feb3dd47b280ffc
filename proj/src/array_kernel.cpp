#include "rcmm/array_kernel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "rcmm/errors.hpp"

namespace rcmm {

ArrayKernel::ArrayKernel(std::size_t rows) : rows_(rows), data_(rows * (rows + 1) / 2, 0.0) {}

ArrayKernel ArrayKernel::from_rows(const std::vector<std::vector<double>>& rows) {
  ArrayKernel k(rows.size());
  for (std::size_t n = 1; n <= rows.size(); ++n) {
    const auto& r = rows[n - 1];
    if (r.size() != n)
      throw ShapeError("row " + std::to_string(n) + " has " + std::to_string(r.size()) + " entries, expected " +
                       std::to_string(n));
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(r[i])) throw ShapeError("non-finite entry in row " + std::to_string(n));
      k(n, i) = r[i];
    }
  }
  return k;
}

ArrayKernel ArrayKernel::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<std::vector<double>> v;
  v.reserve(rows.size());
  for (const auto& r : rows) v.emplace_back(r);
  return from_rows(v);
}

double ArrayKernel::at(std::size_t n, std::size_t k) const {
  if (n < 1 || n > rows_ || k >= n)
    throw std::out_of_range("kernel index (" + std::to_string(n) + "," + std::to_string(k) + ") out of range");
  return (*this)(n, k);
}

double ArrayKernel::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

DiagonalKernel::DiagonalKernel(std::vector<double> d) : d_(std::move(d)) {
  for (double v : d_)
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("diagonal kernel entries must be positive");
}

ArrayKernel DiagonalKernel::to_kernel() const {
  ArrayKernel k(d_.size());
  for (std::size_t n = 1; n <= d_.size(); ++n) k(n, 0) = d_[n - 1];
  return k;
}

double max_abs_diff(const ArrayKernel& a, const ArrayKernel& b) {
  if (a.rows() != b.rows()) throw ShapeError("kernel row counts differ");
  double m = 0.0;
  const auto va = a.values();
  const auto vb = b.values();
  for (std::size_t i = 0; i < va.size(); ++i) m = std::max(m, std::abs(va[i] - vb[i]));
  return m;
}

}  // namespace rcmm
