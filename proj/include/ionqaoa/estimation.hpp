#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "ionqaoa/statevector.hpp"

namespace ionqaoa::est {

/// Readout misidentification rates.
///   eps01: probability of reading "0" when the state was |1>
///   eps10: probability of missing "0" when the state was |0>
struct ReadoutNoise {
  double eps01 = 0.0;
  double eps10 = 0.0;

  static ReadoutNoise none() { return {}; }
  void validate() const;
  bool is_zero() const noexcept { return eps01 == 0.0 && eps10 == 0.0; }
};

struct EstimateReport {
  long m = 0;
  long k = 0;  // "0" outcomes
  double p_hat = 0.0;
  double p_ml = 0.0;
  double h_hat = 0.0;
  double bias = 0.0;  // of the uncorrected estimator, at h = h_hat
  std::optional<double> g;
  std::optional<double> variance;
  std::optional<double> ci_radius;  // 1.96 standard errors on h
};

// Independent stream per replica, derived from (base seed, index).
std::mt19937_64 replica_rng(std::uint64_t base_seed, std::uint64_t index);

// Probability of reading "0" given P("0") = p before readout.
double observed_zero_probability(double p, const ReadoutNoise& noise);

// Number of "0" outcomes in m noisy shots of the Pauli observable.
long sample_shots(const Statevector& state, const PauliString& pauli, long m,
                  const ReadoutNoise& noise, std::mt19937_64& rng);
// Same, starting from P("0") = p directly.
long sample_bernoulli(double p, long m, const ReadoutNoise& noise, std::mt19937_64& rng);

EstimateReport estimate(long k, long m, const ReadoutNoise& noise);

// Variance inflation caused by readout errors. Throws kSingular at p in {0, 1}.
double variance_factor_g(double p, const ReadoutNoise& noise);

// Upper-tail standard normal quantile: P(Z > q) = tail.
double normal_upper_quantile(double tail);

long sample_size_clt(double accuracy, double alpha, double h);
double sample_size_clt_noisy_real(double accuracy, double alpha, double h,
                                  const ReadoutNoise& noise);
long sample_size_clt_noisy(double accuracy, double alpha, double h, const ReadoutNoise& noise);

struct BoundsInput {
  long m = 1000;
  double eps = 0.05;
  double delta = 0.05;
  double variance = 0.25;
  double mean = 0.5;
  std::optional<double> t;  // tail threshold for Markov/Chebyshev; defaults to eps
};

struct ConcentrationBounds {
  double markov = 0.0;               // P(S >= t) <= E / t
  double chebyshev = 0.0;            // P(|S - E| >= t) <= V / t^2
  double chebyshev_bernoulli = 0.0;  // 1 / (4 m eps^2)
  double hoeffding_delta = 0.0;      // 2 exp(-2 m eps^2)
  long hoeffding_m = 0;              // ceil(ln(2/delta) / (2 eps^2))
  double hoeffding_eps = 0.0;        // sqrt(ln(2/delta) / (2 m))
};

ConcentrationBounds concentration_bounds(const BoundsInput& in);

// Squared classical fidelity (sum_i sqrt(p_i q_i))^2.
double classical_fidelity(const std::vector<double>& p, const std::vector<double>& q);

struct InfidelityOptions {
  double p = 0.3;
  ReadoutNoise noise;
  long n_shots = 100000;
  int samples = 2000;
  std::uint64_t seed = 1;
  double ks_threshold = 0.05;
};

struct InfidelityCheck {
  double g = 1.0;
  double d = 0.0;  // g / (4 n_shots)
  std::vector<double> normalized;  // (1 - F) / d per replica
  double mean = 0.0;
  double ks_statistic = 0.0;
  bool passed = false;
  bool asymptotics_warning = false;
};

// chi-squared(1) CDF.
double chi2_1_cdf(double x);
double ks_statistic(std::vector<double> samples, double (*cdf)(double));

InfidelityCheck infidelity_model(const InfidelityOptions& opt);

}  // namespace ionqaoa::est
