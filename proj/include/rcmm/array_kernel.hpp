#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace rcmm {

/// Lower-triangular array kernel on an N-step mesh.
///
/// Row n (1-based, n = 1..N) holds n entries indexed by the offset
/// k = n - j, diagonal first:
///
///   row(n)[k] = a^n_k = a^n_{n-j},   k = 0..n-1,  j = n..1.
///
/// Rows are stored back to back, row n starting at n(n-1)/2.
class ArrayKernel {
 public:
  ArrayKernel() = default;
  /// N rows of zeros.
  explicit ArrayKernel(std::size_t rows);
  /// Throws ShapeError unless row n has exactly n entries, or if an entry is
  /// not finite.
  static ArrayKernel from_rows(const std::vector<std::vector<double>>& rows);
  static ArrayKernel from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const noexcept { return rows_; }
  bool empty() const noexcept { return rows_ == 0; }

  std::span<double> row(std::size_t n) noexcept { return {data_.data() + start(n), n}; }
  std::span<const double> row(std::size_t n) const noexcept { return {data_.data() + start(n), n}; }

  /// Entry a^n_k, 1 <= n <= N, 0 <= k < n.
  double& operator()(std::size_t n, std::size_t k) noexcept { return data_[start(n) + k]; }
  double operator()(std::size_t n, std::size_t k) const noexcept { return data_[start(n) + k]; }
  /// Bounds-checked access; throws std::out_of_range.
  double at(std::size_t n, std::size_t k) const;

  std::span<const double> values() const noexcept { return data_; }
  std::span<double> values() noexcept { return data_; }

  /// max |a^n_k| over all entries, 0 for an empty kernel.
  double max_abs() const noexcept;

  friend bool operator==(const ArrayKernel&, const ArrayKernel&) = default;

 private:
  static constexpr std::size_t start(std::size_t n) noexcept { return n * (n - 1) / 2; }
  std::size_t rows_ = 0;
  std::vector<double> data_;
};

/// Diagonal kernel diag(d_1, ..., d_N) with positive entries.
class DiagonalKernel {
 public:
  /// Throws std::invalid_argument unless every d_j > 0.
  explicit DiagonalKernel(std::vector<double> d);
  std::size_t rows() const noexcept { return d_.size(); }
  /// d_j, j = 1..N.
  double operator[](std::size_t j) const noexcept { return d_[j - 1]; }
  std::span<const double> values() const noexcept { return d_; }
  ArrayKernel to_kernel() const;

 private:
  std::vector<double> d_;
};

/// max over entries of |a - b|; throws ShapeError on row mismatch.
double max_abs_diff(const ArrayKernel& a, const ArrayKernel& b);

}  // namespace rcmm
