#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <complex>
#include <numbers>

#include "ionqaoa/error.hpp"
#include "ionqaoa/gates.hpp"
#include "test_util.hpp"

using namespace ionqaoa;
using namespace ionqaoa::synth;
using C = std::complex<double>;

namespace {

DenseUnitary mat2(C a, C b, C c, C d) {
  DenseUnitary m(2, 2);
  m << a, b, c, d;
  return m;
}

const DenseUnitary kX = mat2(0, 1, 1, 0);
const DenseUnitary kY = mat2(0, C(0, -1), C(0, 1), 0);
const DenseUnitary kZ = mat2(1, 0, 0, -1);
const DenseUnitary kH = mat2(1, 1, 1, -1) * testutil::kInvSqrt2;
const DenseUnitary kS = mat2(1, 0, 0, C(0, 1));

using testutil::kind_of;

}  // namespace

TEST(KControlled, Examples) {
  const auto cnot = k_controlled(kX, 1);
  DenseUnitary ref = DenseUnitary::Identity(4, 4);
  ref.block(2, 2, 2, 2) = kX;
  EXPECT_LT(max_abs_diff(cnot, ref), 1e-15);

  const auto toff = k_controlled(kX, 2);
  for (int r = 0; r < 8; ++r) {
    const int image = r >= 6 ? 13 - r : r;
    EXPECT_EQ(toff(image, r), C(1.0)) << r;
  }

  const auto cz = k_controlled(kZ, 1);
  EXPECT_EQ(cz.diagonal(), Eigen::Vector4cd(1, 1, 1, -1));
}

TEST(KControlled, PermutationWithOneOffDiagonalPair) {
  for (int k = 1; k <= 5; ++k) {
    const auto u = k_controlled(kX, k);
    int off = 0;
    for (Eigen::Index r = 0; r < u.rows(); ++r)
      for (Eigen::Index c = 0; c < u.cols(); ++c) {
        const C v = u(r, c);
        EXPECT_TRUE(v == C(0.0) || v == C(1.0));
        if (r != c && v == C(1.0)) ++off;
      }
    EXPECT_EQ(off, 2) << k;
  }
}

TEST(KControlled, Errors) {
  EXPECT_EQ(kind_of([] { k_controlled(kX, 0); }), ErrorKind::kDomain);
  EXPECT_EQ(kind_of([] { k_controlled(kX, kMaxControls + 1); }), ErrorKind::kCapacity);
}

TEST(SqrtXPower, Examples) {
  EXPECT_LT(max_abs_diff(sqrt_x_power(2.0), kX), 1e-15);
  EXPECT_LT(max_abs_diff(sqrt_x_power(0.0), DenseUnitary::Identity(2, 2)), 1e-15);
  const auto v = sqrt_x_power(1.0);
  const DenseUnitary ref = mat2(C(1, 1), C(1, -1), C(1, -1), C(1, 1)) * 0.5;
  EXPECT_LT(max_abs_diff(v, ref), 1e-15);
  EXPECT_LT(max_abs_diff(v * v, kX), 1e-12);
  EXPECT_LT(max_abs_diff(sqrt_x_power(-1.0) * v, DenseUnitary::Identity(2, 2)), 1e-12);
  EXPECT_LT(unitarity_error(sqrt_x_power(0.37)), 1e-14);
}

TEST(BooleanIdentity, AllAssignmentsPass) {
  const auto report = boolean_identity_check();
  EXPECT_TRUE(report.all_passed());
  EXPECT_GE(report.cases.size(), 4u);
  for (int a = 0; a <= 1; ++a)
    for (int b = 0; b <= 1; ++b) {
      const DenseUnitary lhs = sqrt_x_power(a) * sqrt_x_power(b) * sqrt_x_power(-(a ^ b));
      EXPECT_LT(max_abs_diff(lhs, sqrt_x_power(2.0 * a * b)), 1e-12);
    }
}

TEST(Toffoli2, MatchesToffoli) {
  const auto seq = toffoli2_sequence();
  EXPECT_EQ(seq.width, 3);
  ASSERT_EQ(seq.elements.size(), 5u);
  for (const auto& e : seq.elements) EXPECT_EQ(e.controls.size(), 1u);
  const auto u = compose(seq);
  EXPECT_LT(max_abs_diff(u, k_controlled(kX, 2)), 1e-10);
  EXPECT_NEAR(std::abs(u(0b111, 0b110)), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(u(0b010, 0b010)), 1.0, 1e-12);
}

TEST(ToffoliRecursive, MatchesDense) {
  EXPECT_LT(max_abs_diff(compose(k_toffoli_recursive(2)), compose(toffoli2_sequence())),
            1e-12);
  for (int k = 2; k <= 6; ++k) {
    const auto seq = k_toffoli_recursive(k);
    const auto u = compose(seq);
    EXPECT_LT(max_abs_diff(u, k_controlled(kX, k)), 1e-9) << k;
    EXPECT_LT(unitarity_error(u), 1e-9) << k;
  }
}

TEST(ToffoliRecursive, OneLevelKeepsDenseBlocks) {
  for (int k = 3; k <= 5; ++k) {
    const auto seq = k_toffoli_recursive(k, 1);
    EXPECT_EQ(seq.elements.size(), 5u);
    EXPECT_LT(max_abs_diff(compose(seq), k_controlled(kX, k)), 1e-9);
  }
}

TEST(ToffoliRecursive, CountGrowsMonotone) {
  int prev = 0;
  for (int k = 2; k <= 6; ++k) {
    const int count = multi_qubit_count(k_toffoli_recursive(k));
    EXPECT_GT(count, prev);
    prev = count;
  }
  EXPECT_EQ(multi_qubit_count(k_toffoli_recursive(3)), 17);
}

TEST(ToffoliRecursive, RangeErrors) {
  EXPECT_EQ(kind_of([] { k_toffoli_recursive(1); }), ErrorKind::kCapacity);
  EXPECT_EQ(kind_of([] { k_toffoli_recursive(7); }), ErrorKind::kCapacity);
}

TEST(LocalEquivalence, Examples) {
  EXPECT_LT(max_abs_diff(local_equivalence(kX, kH, 2), k_controlled(kX, 2)), 1e-10);
  EXPECT_LT(max_abs_diff(local_equivalence(kZ, DenseUnitary::Identity(2, 2), 1),
                         k_controlled(kZ, 1)),
            1e-15);
  const DenseUnitary w = kS * kH;
  const auto out = local_equivalence(kY, w, 1);
  const auto ref = k_controlled(kY, 1);
  // Compare up to a global phase.
  const C phase = out(3, 2) / ref(3, 2);
  EXPECT_NEAR(std::abs(phase), 1.0, 1e-12);
  EXPECT_LT(max_abs_diff(out, phase * ref), 1e-10);
}

TEST(LocalEquivalence, RejectsMismatch) {
  EXPECT_EQ(kind_of([] { local_equivalence(kX, DenseUnitary::Identity(2, 2), 1); }),
            ErrorKind::kConjugation);
}
