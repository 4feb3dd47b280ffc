#pragma once

// Structural checks on array kernels. Every check scans rows in order and
// reports the lexicographically first (n, k) violation.
//
// Tolerances: `tol` is relative. A kernel K is scanned with the absolute
// tolerance tol * max(1, max|K|); strict positivity means > 1e-13 * max(1,
// max|K|). Inequalities between products (log-convexity) use the squared
// scale, inequalities between row sums use max(1, largest absolute row sum).
// All checks are "local with range N": only the rows present are examined.

#include "rcmm/array_kernel.hpp"
#include "rcmm/property_report.hpp"

namespace rcmm {

inline constexpr double kDefaultTol = 1e-10;
inline constexpr double kPositivityTol = 1e-13;

/// Nonnegative entries and a^{n-1}_{k-1} >= a^n_k (nonincreasing down columns).
PropertyReport is_column_monotone(const ArrayKernel& a, double tol = kDefaultTol);

/// Nonnegative entries and a^n_{k-1} >= a^n_k (nonincreasing away from the
/// diagonal along each row).
PropertyReport is_row_monotone(const ArrayKernel& a, double tol = kDefaultTol);

PropertyReport is_doubly_monotone(const ArrayKernel& a, double tol = kDefaultTol);

/// Positive diagonal and nonpositive off-diagonal entries (M-matrix-like pattern).
PropertyReport has_inverse_type_signs(const ArrayKernel& b, double tol = kDefaultTol);

/// Complete positivity criterion on B = pinv(A): b^n_0 > 0, b^n_k <= 0 for
/// k >= 1, and every row sum >= 0.
PropertyReport inverse_sign_pattern(const ArrayKernel& a, double tol = kDefaultTol);

/// Column monotone A whose right complementary kernel is doubly monotone.
/// Also evaluates the equivalent sign characterization (A column monotone,
/// pinv(A) and pinv(L^(-1) A L) with inverse-type signs); a disagreement is
/// attached as a conditioning warning, never as a verdict change.
PropertyReport is_R_CMM(const ArrayKernel& a, double tol = kDefaultTol);

/// Row monotone A whose left complementary kernel is doubly monotone.
PropertyReport is_L_CMM(const ArrayKernel& a, double tol = kDefaultTol);

/// a^{n-1}_{k-1} a^n_{k+1} >= a^n_k a^{n-1}_k for n >= 3, 1 <= k <= n-2
/// (superscripts rows, subscripts offsets). Entries must be positive.
PropertyReport log_convexity_condition(const ArrayKernel& a, double tol = kDefaultTol);

/// Sufficient condition for R-CMM: A column monotone, and both A and
/// L^(-1) A L positive and log-convex in the sense above.
PropertyReport sufficient_R_CMM(const ArrayKernel& a, double tol = kDefaultTol);

/// Necessary condition for R-CMM on tail sums:
///   sum_{j=k}^{n+1} a^{n+1}_{n+1-j} >= sum_{j=k}^{n} a^n_{n-j},  1 <= k <= n-1.
/// Witness (n, k).
PropertyReport necessary_rccmon(const ArrayKernel& a, double tol = kDefaultTol);

/// Tail sums of the resolvent R_lambda grow from row n-1 to row n:
///   sum_{j=k}^n R^n_{n-j} >= sum_{j=k}^{n-1} R^{n-1}_{n-1-j},  1 <= k <= n-1.
PropertyReport resolvent_rowsum_inequality(const ArrayKernel& a, double lambda, double tol = kDefaultTol);

/// Resolvents of A and of L^(-1) A L are entrywise nonnegative at lambda.
PropertyReport resolvent_nonneg(const ArrayKernel& a, double lambda, double tol = kDefaultTol);

}  // namespace rcmm
