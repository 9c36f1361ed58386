#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "ionqaoa/estimation.hpp"
#include "test_util.hpp"

using namespace ionqaoa;
using namespace ionqaoa::est;

TEST(ReadoutNoise, Validation) {
  EXPECT_NO_THROW((ReadoutNoise{0.05, 0.1}.validate()));
  EXPECT_EQ(testutil::kind_of([] { ReadoutNoise{0.6, 0.5}.validate(); }), ErrorKind::kDomain);
  EXPECT_EQ(testutil::kind_of([] { ReadoutNoise{-0.1, 0.0}.validate(); }), ErrorKind::kDomain);
  EXPECT_TRUE(ReadoutNoise::none().is_zero());
}

TEST(SampleShots, Examples) {
  auto rng = replica_rng(1, 0);
  const auto z = PauliString::parse("Z");
  EXPECT_EQ(sample_shots(Statevector(1), z, 1000, {}, rng), 1000);
  const long k = sample_shots(Statevector::plus(1), z, 100000, {}, rng);
  EXPECT_NEAR(k / 1e5, 0.5, 0.01);
  const long noisy = sample_bernoulli(0.5, 100000, {0.1, 0.1}, rng);
  EXPECT_NEAR(observed_zero_probability(0.5, {0.1, 0.1}), 0.5, 1e-15);
  EXPECT_NEAR(noisy / 1e5, 0.5, 0.01);
  // |+> measured in the X basis always reads "0".
  EXPECT_EQ(sample_shots(Statevector::plus(1), PauliString::parse("X"), 500, {}, rng), 500);
}

TEST(SampleShots, DeterministicUnderSeed) {
  auto a = replica_rng(42, 3);
  auto b = replica_rng(42, 3);
  auto c = replica_rng(42, 4);
  const long ka = sample_bernoulli(0.37, 10000, {0.02, 0.03}, a);
  EXPECT_EQ(ka, sample_bernoulli(0.37, 10000, {0.02, 0.03}, b));
  EXPECT_NE(ka, sample_bernoulli(0.37, 10000, {0.02, 0.03}, c));
}

TEST(Estimate, Examples) {
  const auto r = estimate(300, 1000, {0.05, 0.1});
  EXPECT_DOUBLE_EQ(r.p_hat, 0.3);
  EXPECT_NEAR(r.p_ml, 0.29411764705882354, 1e-15);
  EXPECT_NEAR(r.h_hat, 2 * r.p_ml - 1, 1e-15);

  EXPECT_EQ(estimate(20, 1000, {0.05, 0.1}).p_ml, 0.0);

  const auto clean = estimate(613, 1000, {});
  EXPECT_DOUBLE_EQ(clean.p_ml, 0.613);
  ASSERT_TRUE(clean.g.has_value());
  EXPECT_DOUBLE_EQ(*clean.g, 1.0);
  EXPECT_EQ(clean.bias, 0.0);
  ASSERT_TRUE(clean.variance.has_value());
  EXPECT_NEAR(*clean.variance, 0.613 * 0.387 / 1000, 1e-15);

  const double eps = 0.07;
  const auto sym = estimate(700, 1000, {eps, eps});
  EXPECT_NEAR(sym.bias, -2 * sym.h_hat * eps, 1e-15);

  EXPECT_FALSE(estimate(0, 100, {}).g.has_value());
  EXPECT_EQ(testutil::kind_of([] { estimate(11, 10, {}); }), ErrorKind::kDomain);
}

TEST(VarianceFactor, Examples) {
  for (double p : {0.1, 0.5, 0.77}) EXPECT_NEAR(variance_factor_g(p, {}), 1.0, 1e-15);
  EXPECT_NEAR(variance_factor_g(0.5, {0.1, 0.1}), 1.5625, 1e-12);
  EXPECT_NEAR(variance_factor_g(0.3, {0.05, 0.1}), 1.3971000164771796, 1e-12);
  EXPECT_NEAR(variance_factor_g(0.2, {0.03, 0.08}), variance_factor_g(0.8, {0.08, 0.03}), 1e-12);
  EXPECT_EQ(testutil::kind_of([] { variance_factor_g(0.0, {0.1, 0.1}); }), ErrorKind::kSingular);
  EXPECT_EQ(testutil::kind_of([] { variance_factor_g(1.0, {}); }), ErrorKind::kSingular);
}

TEST(VarianceFactor, MonteCarloRatio) {
  const ReadoutNoise noise{0.1, 0.1};
  const long m = 2000;
  const int reps = 20000;
  auto rng = replica_rng(7, 0);
  double sum = 0.0, sum2 = 0.0;
  for (int r = 0; r < reps; ++r) {
    const double p = estimate(sample_bernoulli(0.5, m, noise, rng), m, noise).p_ml;
    sum += p;
    sum2 += p * p;
  }
  const double mean = sum / reps;
  const double var = sum2 / reps - mean * mean;
  EXPECT_NEAR(var / (0.25 / m), 1.5625, 0.05 * 1.5625);
}

TEST(SampleSize, Clt) {
  EXPECT_NEAR(normal_upper_quantile(0.025), 1.959963984540054, 1e-12);
  EXPECT_EQ(sample_size_clt(0.05, 0.05, 0.0), 1537);
  EXPECT_EQ(sample_size_clt(0.05, 0.05, 1.0), 0);
  EXPECT_EQ(sample_size_clt(0.05, 0.05, -1.0), 0);
  EXPECT_NEAR(sample_size_clt_noisy_real(0.05, 0.05, 0.0, {0.1, 0.1}),
              1.5625 * std::pow(1.959963984540054 / 0.05, 2), 1e-9);
  EXPECT_EQ(sample_size_clt_noisy(0.05, 0.05, 0.0, {0.1, 0.1}), 2401);
  EXPECT_EQ(sample_size_clt_noisy(0.05, 0.05, 0.0, {}), 1537);
  EXPECT_EQ(testutil::kind_of([] { sample_size_clt(0.0, 0.05, 0.0); }), ErrorKind::kDomain);
}

TEST(Bounds, Examples) {
  BoundsInput in;
  in.m = 1000;
  const auto b = concentration_bounds(in);
  EXPECT_EQ(b.hoeffding_m, 738);
  EXPECT_NEAR(b.hoeffding_delta, 0.013475893998170934, 1e-15);
  EXPECT_NEAR(b.hoeffding_eps, 0.04294694083467376, 1e-15);
  EXPECT_NEAR(b.chebyshev_bernoulli, 0.1, 1e-15);
  EXPECT_NEAR(b.markov, 0.5 / 0.05, 1e-12);
  EXPECT_NEAR(b.chebyshev, 0.25 / 0.0025, 1e-9);
  in.eps = 0.0;
  EXPECT_EQ(testutil::kind_of([&] { concentration_bounds(in); }), ErrorKind::kDomain);
}

TEST(Bounds, ChebyshevBernoulliDominatesHoeffdingOnGrid) {
  for (long m : {10L, 50L, 100L, 500L, 1000L, 5000L}) {
    for (double eps : {0.05, 0.1, 0.2}) {
      BoundsInput in;
      in.m = m;
      in.eps = eps;
      const auto b = concentration_bounds(in);
      // The exponential bound overtakes 1/(4 m eps^2) once m eps^2 passes ~1.1.
      if (m * eps * eps >= 1.2) EXPECT_GE(b.chebyshev_bernoulli, b.hoeffding_delta) << m << " " << eps;
    }
  }
}

TEST(Bounds, HoeffdingEmpiricalRate) {
  const long m = 1000;
  const double eps = 0.05;
  const int reps = 10000;
  int violations = 0;
  for (int r = 0; r < reps; ++r) {
    auto rng = replica_rng(11, r);
    const double p_hat = static_cast<double>(sample_bernoulli(0.5, m, {}, rng)) / m;
    if (std::abs(p_hat - 0.5) > eps) ++violations;
  }
  const double bound = 2 * std::exp(-2 * m * eps * eps);
  EXPECT_LE(violations / double(reps), bound + 3 * std::sqrt(bound * (1 - bound) / reps));
}

TEST(Infidelity, FidelityAndCdf) {
  const std::vector<double> c{0.3, 0.7};
  EXPECT_EQ(classical_fidelity(c, c), 1.0);
  EXPECT_NEAR(classical_fidelity({1.0, 0.0}, {0.0, 1.0}), 0.0, 1e-15);
  EXPECT_NEAR(chi2_1_cdf(3.841458820694124), 0.95, 1e-9);
  EXPECT_EQ(chi2_1_cdf(0.0), 0.0);
}

TEST(Infidelity, ChiSquaredModel) {
  InfidelityOptions opt;
  const auto clean = infidelity_model(opt);
  EXPECT_EQ(clean.g, 1.0);
  EXPECT_GE(clean.mean, 0.9);
  EXPECT_LE(clean.mean, 1.1);
  EXPECT_TRUE(clean.passed);
  EXPECT_FALSE(clean.asymptotics_warning);

  opt.noise = {0.1, 0.1};
  const auto noisy = infidelity_model(opt);
  EXPECT_GT(noisy.g, 1.0);
  EXPECT_GE(noisy.mean, 0.9);
  EXPECT_LE(noisy.mean, 1.1);
  EXPECT_TRUE(noisy.passed);

  opt.p = 1e-6;
  opt.samples = 10;
  EXPECT_TRUE(infidelity_model(opt).asymptotics_warning);
}

TEST(StandardError, MatchesBinomial) {
  const long m = 400;
  const int reps = 5000;
  for (double h : {0.0, 0.5, -0.8}) {
    std::vector<double> hs(reps);
    for (int r = 0; r < reps; ++r) {
      auto rng = replica_rng(13, r);
      hs[r] = estimate(sample_bernoulli((1 + h) / 2, m, {}, rng), m, {}).h_hat;
    }
    const double mean = std::accumulate(hs.begin(), hs.end(), 0.0) / reps;
    double var = 0.0;
    for (double v : hs) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / (reps - 1));
    EXPECT_NEAR(sd / std::sqrt((1 - h * h) / m), 1.0, 0.1) << h;
  }
}
