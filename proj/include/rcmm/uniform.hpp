#pragma once

// Uniform-mesh kernels: sequences a = (a_0, a_1, ..., a_{N-1}) under the
// truncated convolution (a * b)_n = sum_{j=0..n} a_{n-j} b_j. All properties
// are checked for the indices present (range N).

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rcmm/array_kernel.hpp"
#include "rcmm/kernel_props.hpp"
#include "rcmm/property_report.hpp"

namespace rcmm {

class Sequence {
 public:
  /// Throws ShapeError if empty or if an entry is not finite.
  explicit Sequence(std::vector<double> a);
  std::size_t size() const noexcept { return a_.size(); }
  double operator[](std::size_t j) const noexcept { return a_[j]; }
  std::span<const double> values() const noexcept { return a_; }
  friend bool operator==(const Sequence&, const Sequence&) = default;

 private:
  std::vector<double> a_;
};

/// (1, 0, 0, ...), the convolution identity.
Sequence delta_sequence(std::size_t length);

Sequence conv(const Sequence& a, const Sequence& b);

/// b with a * b = delta: b_0 = 1/a_0, b_n = -(1/a_0) sum_{j=1..n} a_j b_{n-j}.
/// Throws SingularKernel when a_0 == 0.
Sequence conv_inverse(const Sequence& a);

/// Row-constant array kernel with a^n_k = a_k.
ArrayKernel lift_to_kernel(const Sequence& a);

/// Nonnegative, nonincreasing, a_0 > 0, and b = conv_inverse(a) has b_0 > 0,
/// b_j <= 0 (j >= 1). The complementary sequence conv(b, ones) is checked for
/// nonnegativity and monotonicity as a cross-check; disagreement is reported
/// as a warning.
PropertyReport is_CMM_uniform(const Sequence& a, double tol = kDefaultTol);

/// Nonnegative, nonincreasing and a_{j-1} a_{j+1} >= a_j^2.
PropertyReport is_logconvex_sequence(const Sequence& a, double tol = kDefaultTol);

/// ((I - E)^j v)_k >= 0 for all j + k <= N-1, where (E v)_k = v_{k+1}. The
/// difference triangle is evaluated exactly (integer arithmetic on the binary
/// expansions of the inputs). Entry (j, k) may dip to
/// -tol * max(scale, ((I + E)^j |v|)_k): a relative change of tol in each
/// input moves it by that much, and rounding the inputs alone already moves
/// order-j differences by about 2^j eps max|v|. Witness (n, k) = (order j,
/// index k); the reported tolerance is the one applied at the witness.
PropertyReport is_CM_sequence(const Sequence& v, double tol = kDefaultTol);

/// Sequence file: one value per line.
Sequence read_sequence(std::istream& in);
Sequence load_sequence(const std::string& path);

}  // namespace rcmm
