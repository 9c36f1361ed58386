#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <numbers>
#include <random>

#include "ionqaoa/ansatz.hpp"
#include "ionqaoa/symmetry.hpp"
#include "test_util.hpp"

using namespace ionqaoa;
using namespace ionqaoa::sym;

namespace {

Eigen::MatrixXd permutation(int n, std::uint64_t (*f)(int, std::uint64_t)) {
  const int dim = 1 << n;
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(dim, dim);
  for (int z = 0; z < dim; ++z) p(static_cast<Eigen::Index>(f(n, z)), z) = 1.0;
  return p;
}

}  // namespace

TEST(Operators, FlipExamples) {
  EXPECT_NEAR(std::abs(global_flip(Statevector::basis(2, 0))[3]), 1.0, 1e-15);
  const Statevector bell(2, std::vector<cplx>{testutil::kInvSqrt2, 0, 0, testutil::kInvSqrt2});
  EXPECT_NEAR(overlap(global_flip(bell), bell), 1.0, 1e-15);
  std::mt19937_64 rng(201);
  const auto r = testutil::random_state(5, rng);
  const auto twice = global_flip(global_flip(r));
  for (std::size_t z = 0; z < r.dim(); ++z) EXPECT_EQ(twice[z], r[z]);
}

TEST(Operators, ReflectExamples) {
  EXPECT_EQ(reverse_bits(6, 0b011010), 0b010110u);
  EXPECT_NEAR(std::abs(reflect(Statevector::basis(6, 0b011010))[0b010110]), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(reflect(Statevector::basis(4, 0b0110))[0b0110]), 1.0, 1e-15);
  std::mt19937_64 rng(203);
  const auto r = testutil::random_state(6, rng);
  const auto twice = reflect(reflect(r));
  for (std::size_t z = 0; z < r.dim(); ++z) EXPECT_EQ(twice[z], r[z]);
}

TEST(Operators, CommuteAndSymmetrizerIsProjector) {
  const auto f = permutation(5, flip_bits);
  const auto r = permutation(5, reverse_bits);
  EXPECT_EQ((f * r - r * f).cwiseAbs().maxCoeff(), 0.0);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(32, 32);
  const Eigen::MatrixXd s = 0.25 * (id + f) * (id + r);
  EXPECT_LT((s * s - s).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((s - s.transpose()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(IsSymmetric, Examples) {
  EXPECT_TRUE(is_symmetric(Statevector::plus(6)));
  EXPECT_FALSE(is_symmetric(Statevector(6)));
}

TEST(BasisM, SixQubitCounts) {
  const auto m = build_basis_M(6);
  EXPECT_EQ(m.vectors.size(), 20u);
  EXPECT_EQ(m.count(OrbitClass::kClass1), 4u);
  EXPECT_EQ(m.count(OrbitClass::kClass2), 4u);
  EXPECT_EQ(m.count(OrbitClass::kClass3), 12u);
  EXPECT_EQ(orbits(6).size(), 20u);
}

TEST(BasisM, OrthonormalAndSymmetric) {
  const auto m = build_basis_M(6);
  for (std::size_t i = 0; i < m.vectors.size(); ++i) {
    EXPECT_TRUE(is_symmetric(m.vectors[i], 1e-10));
    for (std::size_t j = 0; j < m.vectors.size(); ++j) {
      cplx g = 0.0;
      for (std::size_t z = 0; z < 64; ++z) g += std::conj(m.vectors[i][z]) * m.vectors[j][z];
      EXPECT_NEAR(std::abs(g), i == j ? 1.0 : 0.0, 1e-10);
    }
  }
}

TEST(BasisM, RepresentativesAreMinimal) {
  for (const auto& o : orbits(6)) {
    EXPECT_EQ(o.representative, o.members.front());
    const auto t = o.representative;
    EXPECT_GE(flip_bits(6, t), t);
    EXPECT_GE(reverse_bits(6, t), t);
    EXPECT_GE(reverse_bits(6, flip_bits(6, t)), t);
  }
}

TEST(Classify, AllPlusInstanceIsEasy) {
  const auto c = classify_instance(sk::SKInstance(6, 0));
  EXPECT_EQ(c.cls, InstanceClass::kEasySymmetric);
  EXPECT_GT(c.symmetric_ground_dim, 0);
  EXPECT_NEAR(c.min_energy_over_v, c.lambda_min, 1e-12);
}

TEST(Classify, ExhaustiveFractionAndConsistency) {
  const auto m = build_basis_M(6);
  int easy = 0;
  for (const auto& inst : sk::enumerate_instances(6)) {
    const auto spec = sk::spectrum(inst);
    const auto c = classify_instance(inst, spec);
    const double threshold = sk::success_threshold(spec);
    if (c.cls == InstanceClass::kEasySymmetric) {
      ++easy;
      ASSERT_NEAR(c.min_energy_over_v, spec.lambda_min, 1e-10) << inst.mask();
      ASSERT_LE(min_energy_over_basis(m, spec.energies), threshold) << inst.mask();
    } else {
      ASSERT_GT(c.min_energy_over_v, threshold) << inst.mask();
    }
  }
  EXPECT_EQ(easy, 10808);
  EXPECT_NEAR(easy / 32768.0, 0.33, 0.01);
}

TEST(MinEnergyOverV, TwoQubitAllPlus) {
  EXPECT_NEAR(min_energy_over_V(sk::SKInstance(2, 0)), -1.0, 1e-15);
}

TEST(MinEnergyOverV, MatchesDenseRestriction) {
  std::mt19937_64 rng(211);
  const int n = 5;
  const auto f = permutation(n, flip_bits);
  const auto r = permutation(n, reverse_bits);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(32, 32);
  const Eigen::MatrixXd s = 0.25 * (id + f) * (id + r);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ps(s);
  // Columns with eigenvalue 1 span V.
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < 32; ++i)
    if (ps.eigenvalues()(i) > 0.5) cols.push_back(i);
  Eigen::MatrixXd basis(32, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i)
    basis.col(static_cast<Eigen::Index>(i)) = ps.eigenvectors().col(cols[i]);
  for (int trial = 0; trial < 10; ++trial) {
    const sk::SKInstance inst(n, rng() % sk::instance_count(n));
    const auto e = inst.diagonal().energies;
    const Eigen::VectorXd ev = Eigen::Map<const Eigen::VectorXd>(e.data(), 32);
    const Eigen::MatrixXd restricted = basis.transpose() * ev.asDiagonal() * basis;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> rs(restricted);
    EXPECT_NEAR(min_energy_over_V(inst), rs.eigenvalues()(0), 1e-10);
  }
  EXPECT_EQ(testutil::kind_of([] { min_energy_over_V(11, std::vector<double>(2048)); }),
            ErrorKind::kCapacity);
}

TEST(Inheritance, SymmetricAmplitudesGiveSymmetricStates) {
  std::mt19937_64 rng(223);
  std::uniform_real_distribution<double> u(-1.0, 1.0), ang(0.0, 2 * std::numbers::pi);
  for (int n = 2; n <= 8; ++n) {
    std::vector<double> a(n);
    for (int j = 0; j < (n + 1) / 2; ++j) a[j] = a[n - 1 - j] = u(rng);
    const auto c = ion::build_couplings(n, 4.0, 1.0, a);
    for (int p = 1; p <= 6; ++p) {
      AnsatzParams params;
      for (int k = 0; k < p; ++k) {
        params.beta.push_back(ang(rng));
        params.gamma.push_back(ang(rng));
      }
      EXPECT_TRUE(is_symmetric(prepare_ion_native(c, params), 1e-8)) << n << " " << p;
    }
  }
}
