#include "ionqaoa/estimation.hpp"

#include <algorithm>
#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <numbers>

#include "ionqaoa/error.hpp"

namespace ionqaoa::est {

void ReadoutNoise::validate() const {
  if (!(eps01 >= 0.0 && eps01 < 1.0) || !(eps10 >= 0.0 && eps10 < 1.0))
    fail(ErrorKind::kDomain, "readout error rates must lie in [0, 1)");
  if (!(eps01 + eps10 < 1.0)) fail(ErrorKind::kDomain, "eps01 + eps10 must be < 1");
}

std::mt19937_64 replica_rng(std::uint64_t base_seed, std::uint64_t index) {
  std::seed_seq seq{base_seed, index};
  return std::mt19937_64(seq);
}

double observed_zero_probability(double p, const ReadoutNoise& noise) {
  return p * (1.0 - noise.eps10) + (1.0 - p) * noise.eps01;
}

long sample_bernoulli(double p, long m, const ReadoutNoise& noise, std::mt19937_64& rng) {
  noise.validate();
  if (m < 1) fail(ErrorKind::kDomain, "shot count must be >= 1");
  if (!(p >= -1e-12 && p <= 1.0 + 1e-12)) fail(ErrorKind::kDomain, "probability outside [0, 1]");
  const double lambda = std::clamp(observed_zero_probability(std::clamp(p, 0.0, 1.0), noise), 0.0, 1.0);
  std::binomial_distribution<long> dist(m, lambda);
  return dist(rng);
}

long sample_shots(const Statevector& state, const PauliString& pauli, long m,
                  const ReadoutNoise& noise, std::mt19937_64& rng) {
  if (pauli.n_qubits() != state.n_qubits())
    fail(ErrorKind::kDimension, "Pauli string width does not match the state");
  // Rotating each measured qubit into Z and reading the parity gives a
  // Bernoulli outcome with P("0") = (1 + <P>) / 2.
  const double h = pauli_expectation(state, pauli).real();
  return sample_bernoulli(0.5 * (1.0 + h), m, noise, rng);
}

double variance_factor_g(double p, const ReadoutNoise& noise) {
  noise.validate();
  if (!(p > 0.0 && p < 1.0)) fail(ErrorKind::kSingular, "variance factor undefined at p in {0, 1}");
  const double lambda = observed_zero_probability(p, noise);
  const double c = 1.0 - noise.eps01 - noise.eps10;
  return lambda * (1.0 - lambda) / (p * (1.0 - p) * c * c);
}

EstimateReport estimate(long k, long m, const ReadoutNoise& noise) {
  noise.validate();
  if (m < 1 || k < 0 || k > m) fail(ErrorKind::kDomain, "need 0 <= k <= m and m >= 1");
  EstimateReport r;
  r.m = m;
  r.k = k;
  r.p_hat = static_cast<double>(k) / static_cast<double>(m);
  const double c = 1.0 - noise.eps01 - noise.eps10;
  r.p_ml = r.p_hat >= noise.eps01 ? std::min(1.0, (r.p_hat - noise.eps01) / c) : 0.0;
  r.h_hat = 2.0 * r.p_ml - 1.0;
  r.bias = (1.0 - r.h_hat) * noise.eps01 - (1.0 + r.h_hat) * noise.eps10;
  if (r.p_ml > 0.0 && r.p_ml < 1.0) {
    r.g = variance_factor_g(r.p_ml, noise);
    r.variance = *r.g * r.p_ml * (1.0 - r.p_ml) / static_cast<double>(m);
    // Var(h) = 4 Var(p).
    r.ci_radius = normal_upper_quantile(0.025) * 2.0 * std::sqrt(*r.variance);
  }
  return r;
}

double normal_upper_quantile(double tail) {
  if (!(tail > 0.0 && tail < 1.0)) fail(ErrorKind::kDomain, "tail probability must lie in (0, 1)");
  return std::numbers::sqrt2 * boost::math::erf_inv(1.0 - 2.0 * tail);
}

long sample_size_clt(double accuracy, double alpha, double h) {
  if (!(accuracy > 0.0)) fail(ErrorKind::kDomain, "accuracy must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) fail(ErrorKind::kDomain, "alpha must lie in (0, 1)");
  if (!(std::abs(h) <= 1.0)) fail(ErrorKind::kDomain, "h must lie in [-1, 1]");
  const double q = normal_upper_quantile(alpha / 2.0);
  return static_cast<long>(std::ceil((q / accuracy) * (q / accuracy) * (1.0 - h * h)));
}

double sample_size_clt_noisy_real(double accuracy, double alpha, double h,
                                  const ReadoutNoise& noise) {
  noise.validate();
  if (!(accuracy > 0.0)) fail(ErrorKind::kDomain, "accuracy must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) fail(ErrorKind::kDomain, "alpha must lie in (0, 1)");
  if (!(std::abs(h) <= 1.0)) fail(ErrorKind::kDomain, "h must lie in [-1, 1]");
  const double q = normal_upper_quantile(alpha / 2.0);
  const double lambda = observed_zero_probability(0.5 * (1.0 + h), noise);
  const double c = 1.0 - noise.eps01 - noise.eps10;
  return (q / accuracy) * (q / accuracy) * 4.0 * lambda * (1.0 - lambda) / (c * c);
}

long sample_size_clt_noisy(double accuracy, double alpha, double h, const ReadoutNoise& noise) {
  return static_cast<long>(std::ceil(sample_size_clt_noisy_real(accuracy, alpha, h, noise)));
}

ConcentrationBounds concentration_bounds(const BoundsInput& in) {
  if (!(in.eps > 0.0)) fail(ErrorKind::kDomain, "eps must be positive");
  if (!(in.delta > 0.0 && in.delta < 1.0)) fail(ErrorKind::kDomain, "delta must lie in (0, 1)");
  if (in.m < 1) fail(ErrorKind::kDomain, "m must be >= 1");
  if (!(in.variance >= 0.0) || !(in.mean >= 0.0))
    fail(ErrorKind::kDomain, "mean and variance must be non-negative");
  const double t = in.t.value_or(in.eps);
  if (!(t > 0.0)) fail(ErrorKind::kDomain, "tail threshold must be positive");
  const double m = static_cast<double>(in.m);
  const double log_term = std::log(2.0 / in.delta);
  ConcentrationBounds b;
  b.markov = in.mean / t;
  b.chebyshev = in.variance / (t * t);
  b.chebyshev_bernoulli = 1.0 / (4.0 * m * in.eps * in.eps);
  b.hoeffding_delta = 2.0 * std::exp(-2.0 * m * in.eps * in.eps);
  b.hoeffding_m = static_cast<long>(std::ceil(log_term / (2.0 * in.eps * in.eps)));
  b.hoeffding_eps = std::sqrt(log_term / (2.0 * m));
  return b;
}

double classical_fidelity(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) fail(ErrorKind::kDimension, "distributions differ in size");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::sqrt(p[i] * q[i]);
  return s * s;
}

double chi2_1_cdf(double x) { return x <= 0.0 ? 0.0 : std::erf(std::sqrt(0.5 * x)); }

double ks_statistic(std::vector<double> samples, double (*cdf)(double)) {
  if (samples.empty()) fail(ErrorKind::kDomain, "KS statistic needs samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

InfidelityCheck infidelity_model(const InfidelityOptions& opt) {
  opt.noise.validate();
  if (opt.samples < 1 || opt.n_shots < 1) fail(ErrorKind::kDomain, "samples and n_shots must be >= 1");
  InfidelityCheck out;
  out.g = variance_factor_g(opt.p, opt.noise);
  out.d = out.g / (4.0 * static_cast<double>(opt.n_shots));
  // The quadratic expansion needs the estimate to stay well inside (0, 1).
  const double sigma = std::sqrt(out.g * opt.p * (1.0 - opt.p) / static_cast<double>(opt.n_shots));
  out.asymptotics_warning = std::min(opt.p, 1.0 - opt.p) < 5.0 * sigma;

  const std::vector<double> truth{opt.p, 1.0 - opt.p};
  out.normalized.resize(opt.samples);
  for (int r = 0; r < opt.samples; ++r) {
    auto rng = replica_rng(opt.seed, static_cast<std::uint64_t>(r));
    const long k = sample_bernoulli(opt.p, opt.n_shots, opt.noise, rng);
    const double q = estimate(k, opt.n_shots, opt.noise).p_ml;
    const double infidelity = 1.0 - classical_fidelity(truth, {q, 1.0 - q});
    out.normalized[r] = std::max(0.0, infidelity) / out.d;
  }
  double s = 0.0;
  for (double v : out.normalized) s += v;
  out.mean = s / static_cast<double>(opt.samples);
  out.ks_statistic = ks_statistic(out.normalized, &chi2_1_cdf);
  out.passed = out.ks_statistic < opt.ks_threshold;
  return out;
}

}  // namespace ionqaoa::est
