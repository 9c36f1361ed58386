#include "ionqaoa/sk.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "ionqaoa/error.hpp"

namespace ionqaoa::sk {

int pair_count(int n) { return n * (n - 1) / 2; }

int pair_rank(int n, int j, int k) {
  if (j > k) std::swap(j, k);
  if (j < 0 || k >= n || j == k) fail(ErrorKind::kIndex, "invalid qubit pair");
  // pairs (0,1..n-1), (1,2..n-1), ...
  return j * (2 * n - j - 1) / 2 + (k - j - 1);
}

std::uint64_t instance_count(int n) {
  if (n < 2) fail(ErrorKind::kDomain, "SK instances need n >= 2");
  const int pairs = pair_count(n);
  if (pairs > kMaxPairs)
    fail(ErrorKind::kCapacity, "n(n-1)/2 = " + std::to_string(pairs) +
                                   " exceeds enumeration cap " + std::to_string(kMaxPairs));
  return std::uint64_t{1} << pairs;
}

SKInstance::SKInstance(int n, std::uint64_t mask) : n_(n), mask_(mask) {
  if (mask >= instance_count(n)) fail(ErrorKind::kDomain, "mask out of range for n");
  if (n > kDefaultMaxQubits) fail(ErrorKind::kCapacity, "n exceeds dense limit");
  const int pairs = pair_count(n);
  k_.resize(pairs);
  pair_masks_.resize(pairs);
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      const int r = pair_rank(n, j, k);
      k_[r] = ((mask >> r) & 1) ? -1 : 1;
      pair_masks_[r] = qubit_mask(n, j) | qubit_mask(n, k);
    }
  }
}

SKInstance SKInstance::from_couplings(int n, const std::vector<int>& k_upper) {
  if (static_cast<int>(k_upper.size()) != pair_count(n))
    fail(ErrorKind::kDimension, "need n(n-1)/2 couplings");
  std::uint64_t mask = 0;
  for (std::size_t r = 0; r < k_upper.size(); ++r) {
    if (k_upper[r] == -1) mask |= std::uint64_t{1} << r;
    else if (k_upper[r] != 1) fail(ErrorKind::kDomain, "couplings must be +1 or -1");
  }
  return SKInstance(n, mask);
}

int SKInstance::coupling(int j, int k) const { return k_[pair_rank(n_, j, k)]; }

double SKInstance::energy(std::uint64_t z) const {
  int acc = 0;
  for (std::size_t r = 0; r < k_.size(); ++r)
    acc += (std::popcount(z & pair_masks_[r]) & 1) ? -k_[r] : k_[r];
  return acc;
}

DiagonalPhase SKInstance::diagonal() const {
  DiagonalPhase d;
  const std::size_t dim = std::size_t{1} << n_;
  d.energies.resize(dim);
  for (std::size_t z = 0; z < dim; ++z) d.energies[z] = energy(z);
  return d;
}

WeightedPauliSum SKInstance::as_pauli_sum() const {
  // 1/2 sum_{j != k} K Z_j Z_k written out over both orders.
  WeightedPauliSum sum;
  for (int j = 0; j < n_; ++j)
    for (int k = 0; k < n_; ++k)
      if (j != k) sum.add(0.5 * coupling(j, k), PauliString::zz(n_, j, k));
  return sum;
}

double sk_energy(const SKInstance& inst, std::uint64_t z) {
  if (z >= (std::uint64_t{1} << inst.n())) fail(ErrorKind::kIndex, "bitstring out of range");
  return inst.energy(z);
}

DiagonalSpectrum spectrum_of(std::vector<double> energies) {
  if (energies.empty()) fail(ErrorKind::kDimension, "empty energy table");
  DiagonalSpectrum s;
  s.energies = std::move(energies);
  s.lambda_min = *std::min_element(s.energies.begin(), s.energies.end());
  double second = s.lambda_min;
  bool has_second = false;
  for (std::size_t z = 0; z < s.energies.size(); ++z) {
    const double e = s.energies[z];
    if (e - s.lambda_min <= kLevelTol) {
      s.ground_indices.push_back(z);
    } else if (!has_second || e < second) {
      second = e;
      has_second = true;
    }
  }
  s.gap = has_second ? second - s.lambda_min : 0.0;
  return s;
}

DiagonalSpectrum spectrum(const SKInstance& inst, int max_qubits) {
  if (inst.n() > max_qubits) fail(ErrorKind::kCapacity, "n exceeds spectrum cap");
  return spectrum_of(inst.diagonal().energies);
}

double success_threshold(const DiagonalSpectrum& spec) {
  if (!(spec.lambda_min < 0.0))
    fail(ErrorKind::kDegenerate, "success threshold needs lambda_min < 0");
  return spec.lambda_min + 0.05 * std::abs(spec.lambda_min);
}

double success_threshold(const SKInstance& inst) {
  return success_threshold(spectrum(inst));
}

bool is_solved(double energy, const DiagonalSpectrum& spec) {
  return energy <= success_threshold(spec);
}

double overlap_lower_bound(double energy, const DiagonalSpectrum& spec) {
  if (!(spec.gap > 0.0)) fail(ErrorKind::kDegenerate, "overlap bound undefined for zero gap");
  return 1.0 - (energy - spec.lambda_min) / spec.gap;
}

double ground_overlap(const Statevector& state, const DiagonalSpectrum& spec) {
  if (state.dim() != spec.energies.size())
    fail(ErrorKind::kDimension, "state and spectrum dimension mismatch");
  double acc = 0.0;
  for (auto g : spec.ground_indices) acc += std::norm(state[g]);
  return acc;
}

std::string ground_key(int n, const std::vector<std::uint64_t>& ground_indices) {
  const std::size_t bits = std::size_t{1} << n;
  const std::size_t digits = std::max<std::size_t>(1, (bits + 3) / 4);
  std::string hex(digits, '0');
  static constexpr char kHex[] = "0123456789abcdef";
  std::vector<int> nibbles(digits, 0);
  for (auto g : ground_indices) {
    if (g >= bits) fail(ErrorKind::kIndex, "ground index out of range");
    nibbles[g / 4] |= 1 << (g % 4);
  }
  // Most significant nibble first.
  for (std::size_t i = 0; i < digits; ++i) hex[digits - 1 - i] = kHex[nibbles[i]];
  return hex;
}

std::string bitstring(int n, std::uint64_t z) {
  std::string s(n, '0');
  for (int q = 0; q < n; ++q)
    if (z & qubit_mask(n, q)) s[q] = '1';
  return s;
}

}  // namespace ionqaoa::sk
