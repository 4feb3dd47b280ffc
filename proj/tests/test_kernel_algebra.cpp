#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "rcmm/errors.hpp"
#include "rcmm/fode.hpp"
#include "rcmm/kernel_algebra.hpp"
#include "rcmm/uniform.hpp"
#include "support.hpp"

using namespace rcmm;
using test::from_column_rows;

namespace {

void expect_kernel_near(const ArrayKernel& got, const ArrayKernel& want, double tol) {
  ASSERT_EQ(got.rows(), want.rows());
  for (std::size_t n = 1; n <= want.rows(); ++n)
    for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(got(n, k), want(n, k), tol) << "(" << n << "," << k << ")";
}

}  // namespace

TEST(Pconv, IdentityBothSides) {
  std::mt19937_64 rng(1);
  const auto a = test::random_kernel(rng, 7, -1, 1);
  const auto I = identity_kernel(7);
  EXPECT_EQ(pconv(a, I), a);
  EXPECT_EQ(pconv(I, a), a);
}

TEST(Pconv, OnesAndItsInverse) {
  const auto s = special_kernels(6);
  EXPECT_EQ(pconv(s.ones_inverse, s.ones), s.identity);
  EXPECT_EQ(pconv(s.ones, s.ones_inverse), s.identity);
  EXPECT_EQ(s.ones.row(3)[0], 1.0);
  EXPECT_EQ(s.ones.row(3)[2], 1.0);
  // Row 3 of L^(-1) in offsets k = 2, 1, 0 reads [0, -1, 1].
  EXPECT_EQ(s.ones_inverse(3, 2), 0.0);
  EXPECT_EQ(s.ones_inverse(3, 1), -1.0);
  EXPECT_EQ(s.ones_inverse(3, 0), 1.0);
}

TEST(Pconv, HandExample) {
  const auto a = from_column_rows({{2}, {1, 3}});
  const auto b = from_column_rows({{1}, {4, 5}});
  EXPECT_EQ(pconv(a, b), from_column_rows({{2}, {13, 15}}));
}

TEST(Pconv, MatchesDenseProduct) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 20; ++i) {
    const auto a = test::random_kernel(rng, 1 + i, -1, 1);
    const auto b = test::random_kernel(rng, 1 + i, -1, 1);
    expect_kernel_near(pconv(a, b), test::dense_product(a, b), 1e-13 * (1 + i));
  }
}

TEST(Pconv, ShapeMismatch) {
  EXPECT_THROW(pconv(identity_kernel(2), identity_kernel(3)), ShapeError);
  EXPECT_THROW(pconv_vec(identity_kernel(2), std::vector<double>{1.0}), ShapeError);
}

TEST(Pconv, AssociativeOnRandomKernels) {
  std::mt19937_64 rng(3);
  for (std::size_t N = 1; N <= 20; ++N) {
    const auto a = test::random_kernel(rng, N, -1, 1);
    const auto b = test::random_kernel(rng, N, -1, 1);
    const auto c = test::random_kernel(rng, N, -1, 1);
    const auto l = pconv(pconv(a, b), c);
    const auto r = pconv(a, pconv(b, c));
    EXPECT_LE(test::max_diff(l, r), 1e-12 * std::max(1.0, test::max_abs_entry(l)));
  }
}

TEST(Pconv, ReducesToConvolutionWhenRowConstant) {
  const Sequence a({1.0, 0.5, 0.25, 0.2, 0.1}), b({2.0, -1.0, 0.3, 0.0, 0.7});
  const auto c = pconv(lift_to_kernel(a), lift_to_kernel(b));
  const auto s = conv(a, b);
  for (std::size_t n = 1; n <= 5; ++n)
    for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(c(n, k), s[k], 1e-15);
}

TEST(PconvVec, Examples) {
  const std::vector<double> x{1.5, -2.0, 0.25};
  EXPECT_EQ(pconv_vec(identity_kernel(3), x), x);
  EXPECT_EQ(pconv_vec(ones_kernel(3), x), (std::vector<double>{1.5, -0.5, -0.25}));
  EXPECT_EQ(pconv_vec(from_column_rows({{2}, {1, 3}}), std::vector<double>{1, 1}), (std::vector<double>{2, 4}));
}

TEST(PconvVec, AssociativeWithPconv) {
  std::mt19937_64 rng(4);
  const auto a = test::random_kernel(rng, 15, -1, 1);
  const auto b = test::random_kernel(rng, 15, -1, 1);
  std::vector<double> x(15);
  for (std::size_t i = 0; i < 15; ++i) x[i] = std::sin(1.0 + i);
  const auto l = pconv_vec(pconv(a, b), x);
  const auto r = pconv_vec(a, pconv_vec(b, x));
  for (std::size_t i = 0; i < 15; ++i) EXPECT_NEAR(l[i], r[i], 1e-12);
}

TEST(Pinv, Examples) {
  const auto s = special_kernels(5);
  EXPECT_EQ(pinv(s.identity), s.identity);
  EXPECT_EQ(pinv(s.ones), s.ones_inverse);
  const auto b = pinv(from_column_rows({{2}, {1, 4}}));
  expect_kernel_near(b, from_column_rows({{0.5}, {-0.125, 0.25}}), 1e-16);
}

TEST(Pinv, SingularKernel) {
  EXPECT_THROW(pinv(from_column_rows({{1}, {1, 0}})), SingularKernel);
  EXPECT_THROW(pinv_reference(from_column_rows({{0}})), SingularKernel);
  EXPECT_THROW(right_complementary(ArrayKernel(3)), SingularKernel);
}

TEST(Pinv, MatchesBruteForceDenseSolve) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const std::size_t N = 1 + i % 6;
    const auto a = test::random_kernel(rng, N, 0.1, 2.0);
    expect_kernel_near(pinv(a), test::brute_force_inverse(a), 1e-10);
  }
}

TEST(Pinv, BothSidedInverseAndReferencePath) {
  std::mt19937_64 rng(6);
  for (std::size_t N : {1u, 2u, 9u, 30u, 64u}) {
    const auto a = test::random_kernel(rng, N, 0.5, 1.5);
    const auto b = pinv(a);
    const auto I = identity_kernel(N);
    const double s = std::max(1.0, test::max_abs_entry(b) * test::max_abs_entry(a)) * N;
    EXPECT_LE(test::max_diff(pconv(b, a), I), 1e-12 * s);
    EXPECT_LE(test::max_diff(pconv(a, b), I), 1e-12 * s);
    EXPECT_LE(test::max_diff(b, pinv_reference(a)), 1e-12 * std::max(1.0, test::max_abs_entry(b)));
  }
}

TEST(Complementary, Examples) {
  const auto s = special_kernels(4);
  EXPECT_EQ(right_complementary(s.identity), s.ones);
  EXPECT_EQ(right_complementary(s.ones), s.identity);
  EXPECT_EQ(left_complementary(s.identity), s.ones);
  EXPECT_EQ(left_complementary(s.ones), s.identity);
  const auto a = from_column_rows({{2}, {1, 4}});
  expect_kernel_near(right_complementary(a), from_column_rows({{0.5}, {0.125, 0.25}}), 1e-16);
  expect_kernel_near(left_complementary(a), from_column_rows({{0.5}, {0.375, 0.25}}), 1e-16);
}

TEST(Complementary, DefiningIdentities) {
  std::mt19937_64 rng(7);
  const auto a = test::random_kernel(rng, 20, 0.5, 1.5);
  const auto L = ones_kernel(20);
  const auto cr = right_complementary(a);
  const auto cl = left_complementary(a);
  EXPECT_LE(test::max_diff(pconv(a, cr), L), 1e-10);
  EXPECT_LE(test::max_diff(pconv(cl, a), L), 1e-10);
  // C_R^(-1) = L^(-1) (*) A.
  const auto lhs = pinv(cr);
  const auto rhs = pconv(ones_inverse_kernel(20), a);
  EXPECT_LE(test::max_diff(lhs, rhs), 1e-12 * std::max(1.0, test::max_abs_entry(rhs)) * 20);
}

TEST(Conjugate, Examples) {
  const auto s = special_kernels(5);
  EXPECT_EQ(conjugate_by_L(s.identity), s.identity);
  EXPECT_EQ(conjugate_by_L(s.ones), s.ones);
  const FodeKernelSpec spec(0.6, mesh_random(0.1, 25, 3));
  const auto conj = conjugate_by_L(fode_kernel(spec));
  const auto beta = fode_beta_kernel(spec);
  const double g = gamma_fn(1.6);
  for (std::size_t n = 1; n <= 25; ++n)
    for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(g * conj(n, k), beta(n, k), 1e-12) << n << "," << k;
}

TEST(Resolvent, IdentityKernel) {
  for (double l : {0.1, 1.0, 7.0}) {
    const auto r = resolvent(identity_kernel(4), l);
    for (std::size_t n = 1; n <= 4; ++n) {
      EXPECT_NEAR(r(n, 0), l / (1 + l), 1e-15);
      for (std::size_t k = 1; k < n; ++k) EXPECT_EQ(r(n, k), 0.0);
    }
  }
  EXPECT_THROW(resolvent(identity_kernel(2), 0.0), std::invalid_argument);
  EXPECT_THROW(resolvent(identity_kernel(2), -1.0), std::invalid_argument);
}

TEST(Resolvent, DefiningEquationAndCommutation) {
  const auto a = fode_kernel(FodeKernelSpec(0.6, mesh_geometric(0.01, 1.2, 30)));
  for (double l : {0.1, 1.0, 10.0, 100.0}) {
    const auto r = resolvent(a, l);
    const auto ra = pconv(r, a);
    double res = 0.0;
    for (std::size_t i = 0; i < r.values().size(); ++i)
      res = std::max(res, std::abs(r.values()[i] + l * ra.values()[i] - l * a.values()[i]));
    EXPECT_LE(res, 1e-10 * std::max(1.0, l * test::max_abs_entry(a)));
    EXPECT_LE(test::max_diff(ra, pconv(a, r)), 1e-12 * std::max(1.0, test::max_abs_entry(ra)));
  }
}

TEST(Resolvent, LargeLambdaExpansion) {
  const auto a = fode_kernel(FodeKernelSpec(0.6, mesh_algebraic_decay(0.1, 0.5, 0.5, 30)));
  const auto b = pinv(a);
  const auto err = [&](double l) {
    const auto r = resolvent(a, l);
    double m = 0.0;
    const auto I = identity_kernel(30);
    for (std::size_t i = 0; i < r.values().size(); ++i)
      m = std::max(m, std::abs(l * (I.values()[i] - r.values()[i]) - b.values()[i]));
    return m;
  };
  const double ratio = err(1e3) / err(1e4);
  EXPECT_GE(ratio, 5.0);
  EXPECT_LE(ratio, 20.0);
}

TEST(ScaleRight, Examples) {
  const DiagonalKernel d({0.5, 2.0, 3.0});
  EXPECT_EQ(scale_right(identity_kernel(3), d), d.to_kernel());
  const auto sl = scale_right(ones_kernel(3), d);
  // Row n of L scaled: entry (n, k) = d_{n-k}.
  EXPECT_EQ(sl(3, 0), 3.0);
  EXPECT_EQ(sl(3, 1), 2.0);
  EXPECT_EQ(sl(3, 2), 0.5);
  std::mt19937_64 rng(8);
  const auto a = test::random_kernel(rng, 3, -1, 1);
  EXPECT_EQ(scale_right(a, DiagonalKernel({1, 1, 1})), a);
  EXPECT_EQ(scale_right(a, d), pconv(a, d.to_kernel()));
  EXPECT_THROW(scale_right(a, DiagonalKernel({1, 1})), ShapeError);
  EXPECT_THROW(DiagonalKernel({1, 0}), std::invalid_argument);
}

TEST(KernelCsv, RoundTripAndErrors) {
  std::mt19937_64 rng(9);
  const auto a = test::random_kernel(rng, 12, -1e3, 1e3);
  std::stringstream ss;
  write_kernel_csv(ss, a);
  EXPECT_EQ(read_kernel_csv(ss), a);

  std::stringstream ragged("1\n1,2,3\n");
  EXPECT_THROW(read_kernel_csv(ragged), std::exception);
  std::stringstream junk("1\n1,x\n");
  EXPECT_THROW(read_kernel_csv(junk), ParseError);
  std::stringstream nonfinite("1\n1,inf\n");
  EXPECT_THROW(read_kernel_csv(nonfinite), std::exception);
}

TEST(ArrayKernel, ShapeChecks) {
  EXPECT_THROW(ArrayKernel::from_rows({{1.0}, {1.0}}), ShapeError);
  EXPECT_THROW(ArrayKernel::from_rows({{1.0, 2.0}}), ShapeError);
  const auto a = ArrayKernel::from_rows({{1.0}, {2.0, 3.0}});
  EXPECT_EQ(a.at(2, 1), 3.0);
  EXPECT_THROW(a.at(2, 2), std::out_of_range);
  EXPECT_THROW(a.at(3, 0), std::out_of_range);
  EXPECT_EQ(a.max_abs(), 3.0);
}
