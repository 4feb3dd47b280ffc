#pragma once

// Pseudo-convolution calculus on array kernels.
//
// With offsets k = n - j (see ArrayKernel), the product C = A (*) B is
//
//   c^n_{n-k} = sum_{j=k..n} a^n_{n-j} b^j_{j-k},     1 <= k <= n <= N,
//
// which is associative but not commutative, has identity I, and reduces to
// the ordinary truncated convolution when a^n_k and b^n_k do not depend on n.
// The kernel-vector product is y_n = sum_{j=1..n} a^n_{n-j} x_j.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rcmm/array_kernel.hpp"

namespace rcmm {

ArrayKernel pconv(const ArrayKernel& a, const ArrayKernel& b);

std::vector<double> pconv_vec(const ArrayKernel& a, std::span<const double> x);

/// Identity: ones on the diagonal.
ArrayKernel identity_kernel(std::size_t rows);
/// L: every entry one (the array analogue of the sequence (1, 1, ...)).
ArrayKernel ones_kernel(std::size_t rows);
/// L^(-1): ones on the diagonal, -1 on the first subdiagonal.
ArrayKernel ones_inverse_kernel(std::size_t rows);

struct SpecialKernels {
  ArrayKernel identity;
  ArrayKernel ones;
  ArrayKernel ones_inverse;
};
SpecialKernels special_kernels(std::size_t rows);

/// Inverse under pseudo-convolution, B (*) A = A (*) B = I, row by row:
///
///   b^n_0 = 1 / a^n_0,
///   b^n_{n-k} = -(1 / a^k_0) sum_{j=k+1..n} b^n_{n-j} a^j_{j-k},  k = n-1..1.
///
/// Each finished b^n_{n-j} is pushed into the pending sums as an axpy with
/// row j of A. Throws SingularKernel if some a^n_0 == 0.
ArrayKernel pinv(const ArrayKernel& a);

/// Same recurrence evaluated literally (ascending-j sums over columns of A).
/// Reference path for equivalence tests.
ArrayKernel pinv_reference(const ArrayKernel& a);

/// C_R with A (*) C_R = L, i.e. pinv(A) (*) L: prefix sums of each row of
/// pinv(A) in offset order.
ArrayKernel right_complementary(const ArrayKernel& a);

/// C_L with C_L (*) A = L, i.e. L (*) pinv(A).
ArrayKernel left_complementary(const ArrayKernel& a);

/// L^(-1) (*) A (*) L.
ArrayKernel conjugate_by_L(const ArrayKernel& a);

/// I + lambda A.
ArrayKernel shifted(const ArrayKernel& a, double lambda);

/// Resolvent R with R + lambda R (*) A = lambda A, computed as
/// I - pinv(I + lambda A). Requires lambda > 0.
ArrayKernel resolvent(const ArrayKernel& a, double lambda);

/// A (*) diag(d): entry (n, k) becomes a^n_k d_{n-k}.
ArrayKernel scale_right(const ArrayKernel& a, const DiagonalKernel& d);

/// Kernel CSV: line n holds the n entries of row n, offset ascending,
/// comma-separated, written with round-trip precision.
void write_kernel_csv(std::ostream& out, const ArrayKernel& a);
ArrayKernel read_kernel_csv(std::istream& in);
ArrayKernel load_kernel_csv(const std::string& path);

}  // namespace rcmm
