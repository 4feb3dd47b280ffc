#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "rcmm/errors.hpp"
#include "rcmm/kernel_algebra.hpp"
#include "rcmm/uniform.hpp"

using namespace rcmm;

namespace {

Sequence geometric(double r, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = std::pow(r, static_cast<double>(j));
  return Sequence(v);
}

Sequence harmonic(std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = 1.0 / (j + 1.0);
  return Sequence(v);
}

Sequence random_sequence(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  v[0] = 1.0 + std::abs(v[0]);
  return Sequence(v);
}

}  // namespace

TEST(Conv, Examples) {
  const Sequence a({0.3, -1.0, 2.5, 4.0});
  EXPECT_EQ(conv(delta_sequence(4), a), a);
  EXPECT_EQ(conv(Sequence({1, 1}), Sequence({1, 1})), Sequence({1, 2}));
  const Sequence b({1.0, 0.5, 0.25, 0.125});
  EXPECT_EQ(conv(a, b), conv(b, a));
  EXPECT_THROW(conv(a, Sequence({1.0})), ShapeError);
  EXPECT_THROW(Sequence({}), ShapeError);
  EXPECT_THROW(Sequence({1.0, NAN}), ShapeError);
}

TEST(Conv, AssociativeAndCommutative) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) {
    const auto a = random_sequence(rng, 20), b = random_sequence(rng, 20), c = random_sequence(rng, 20);
    const auto l = conv(conv(a, b), c), r = conv(a, conv(b, c));
    const auto ab = conv(a, b), ba = conv(b, a);
    for (std::size_t j = 0; j < 20; ++j) {
      EXPECT_NEAR(l[j], r[j], 1e-13 * std::max(1.0, std::abs(l[j])) * 10);
      EXPECT_NEAR(ab[j], ba[j], 1e-13);
    }
  }
}

TEST(ConvInverse, Examples) {
  EXPECT_EQ(conv_inverse(delta_sequence(5)), delta_sequence(5));
  const auto b = conv_inverse(geometric(0.5, 6));
  EXPECT_EQ(b[0], 1.0);
  EXPECT_EQ(b[1], -0.5);
  for (std::size_t j = 2; j < 6; ++j) EXPECT_EQ(b[j], 0.0);
  EXPECT_EQ(conv_inverse(Sequence({2, 1})), Sequence({0.5, -0.25}));
  EXPECT_THROW(conv_inverse(Sequence({0, 1})), SingularKernel);
}

TEST(ConvInverse, InvolutionAndIdentity) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 20; ++i) {
    const auto a = random_sequence(rng, 12);
    const auto b = conv_inverse(a);
    const auto d = conv(a, b);
    for (std::size_t j = 0; j < 12; ++j) EXPECT_NEAR(d[j], j == 0 ? 1.0 : 0.0, 1e-12 * std::max(1.0, std::abs(b[j])));
    const auto aa = conv_inverse(b);
    for (std::size_t j = 0; j < 12; ++j) EXPECT_NEAR(aa[j], a[j], 1e-10 * std::max(1.0, std::abs(a[j])));
  }
}

TEST(ConvInverse, AgreesWithKernelInverse) {
  const Sequence a({1.5, 0.7, 0.3, 0.2, 0.15, 0.1});
  const auto b = conv_inverse(a);
  const auto B = pinv(lift_to_kernel(a));
  for (std::size_t n = 1; n <= a.size(); ++n)
    for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(B(n, k), b[k], 1e-15);
}

TEST(CMMUniform, Examples) {
  EXPECT_TRUE(is_CMM_uniform(Sequence({1, 1, 1, 1})).holds);
  for (double r : {0.1, 0.5, 0.99}) EXPECT_TRUE(is_CMM_uniform(geometric(r, 30)).holds) << r;
  EXPECT_TRUE(is_CMM_uniform(Sequence({1, 0.2, 0.15})).holds);
  EXPECT_TRUE(is_CMM_uniform(harmonic(40)).holds);

  const auto r = is_CMM_uniform(Sequence({1.0, 0.5, 0.1}));
  ASSERT_FALSE(r.holds);
  EXPECT_EQ(r.witness->condition, "inverse_sign");
  EXPECT_EQ(r.witness->n, 2u);
  EXPECT_FALSE(r.warning);

  const auto inc = is_CMM_uniform(Sequence({1.0, 1.5}));
  ASSERT_FALSE(inc.holds);
  EXPECT_EQ(inc.witness->condition, "nonincreasing");
  EXPECT_EQ(is_CMM_uniform(Sequence({0.0, 0.0})).witness->condition, "positive_a0");
}

TEST(CMMUniform, SecondEntryGovernedByLogConvexityAtOne) {
  // b_2 <= 0 iff a_0 a_2 >= a_1^2.
  for (double a2 : {0.05, 0.09, 0.1, 0.11, 0.2}) {
    const Sequence a({1.0, 0.3, a2});
    EXPECT_EQ(is_CMM_uniform(a).holds, a2 >= 0.09) << a2;
  }
}

TEST(LogConvexSequence, Examples) {
  EXPECT_TRUE(is_logconvex_sequence(harmonic(50)).holds);
  EXPECT_TRUE(is_logconvex_sequence(geometric(0.7, 50)).holds);
  const auto r = is_logconvex_sequence(Sequence({1, 0.5, 0.4, 0.1}));
  ASSERT_FALSE(r.holds);
  EXPECT_EQ(r.witness->n, 2u);
  EXPECT_DOUBLE_EQ(r.witness->lhs, 0.05);
  EXPECT_DOUBLE_EQ(r.witness->rhs, 0.16);
}

TEST(LogConvexSequence, ImpliesCMM) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    // Nondecreasing ratios q_j = a_{j+1}/a_j <= 1 give a log-convex sequence.
    std::vector<double> q(39);
    for (auto& x : q) x = u(rng);
    std::sort(q.begin(), q.end());
    std::vector<double> a{1.0};
    for (double x : q) a.push_back(a.back() * x);
    const Sequence s(a);
    ASSERT_TRUE(is_logconvex_sequence(s).holds) << i;
    EXPECT_TRUE(is_CMM_uniform(s).holds) << i;
  }
}

TEST(CMSequence, Examples) {
  for (double r : {0.05, 0.5, 0.95}) EXPECT_TRUE(is_CM_sequence(geometric(r, 50)).holds) << r;
  EXPECT_TRUE(is_CM_sequence(harmonic(50)).holds);
  EXPECT_TRUE(is_CM_sequence(Sequence({1, 0.1, 0.09})).holds);
  const auto r = is_CM_sequence(Sequence({1, 0.5, 0.4, 0.1}));
  ASSERT_FALSE(r.holds);
  // Order-2 difference at k = 1: 0.5 - 0.8 + 0.1.
  EXPECT_EQ(r.witness->n, 2u);
  EXPECT_EQ(r.witness->k, 1u);
  EXPECT_NEAR(r.witness->lhs, -0.2, 1e-15);
  EXPECT_FALSE(is_CM_sequence(Sequence({1, 2})).holds);
}

TEST(CMSequence, ResolvableViolationsStillDetected) {
  std::vector<double> v(20);
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = std::pow(0.9, static_cast<double>(j));
  auto up = v;
  up[5] = up[4] + 1e-8;
  const auto r1 = is_CM_sequence(Sequence(up));
  ASSERT_FALSE(r1.holds);
  EXPECT_EQ(r1.witness->n, 1u);
  EXPECT_EQ(r1.witness->k, 4u);

  // Alternating 1e-8 noise is invisible at order 1 but grows like 2^j.
  auto wiggle = v;
  for (std::size_t j = 0; j < v.size(); ++j) wiggle[j] += (j % 2 ? -1e-8 : 1e-8);
  const auto r2 = is_CM_sequence(Sequence(wiggle));
  ASSERT_FALSE(r2.holds);
  EXPECT_GE(r2.witness->n, 2u);
  EXPECT_LE(r2.witness->n, 12u);
}

TEST(CMSequence, ImpliesCMM) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 30; ++i) {
    std::vector<double> v(50, 0.0);
    for (int m = 0; m < 3; ++m) {
      const double w = u(rng), r = u(rng);
      for (std::size_t j = 0; j < v.size(); ++j) v[j] += w * std::pow(r, static_cast<double>(j));
    }
    const Sequence s(v);
    ASSERT_TRUE(is_CM_sequence(s).holds) << i;
    EXPECT_TRUE(is_CMM_uniform(s).holds) << i;
  }
}

TEST(SequenceFile, ReadAndErrors) {
  std::stringstream ok("# comment\n1\n0.5\n\n0.25\n");
  EXPECT_EQ(read_sequence(ok), Sequence({1, 0.5, 0.25}));
  std::stringstream empty("\n");
  EXPECT_THROW(read_sequence(empty), ParseError);
  std::stringstream junk("1\nfoo\n");
  EXPECT_THROW(read_sequence(junk), ParseError);
}
