#pragma once

#include <cstdint>
#include <ranges>
#include <string>
#include <utility>
#include <vector>

#include "ionqaoa/statevector.hpp"

namespace ionqaoa::sk {

// Largest supported number of pairs, so masks fit comfortably in 32 bits.
inline constexpr int kMaxPairs = 30;

int pair_count(int n);
// Lexicographic rank of (j, k), j < k.
int pair_rank(int n, int j, int k);

/// H_P = sum_{j<k} K_jk Z_j Z_k with K_jk in {+1, -1}.
///
/// `mask` bit r (pair rank r) is set iff the corresponding K is -1.
class SKInstance {
 public:
  SKInstance(int n, std::uint64_t mask);
  static SKInstance from_couplings(int n, const std::vector<int>& k_upper);

  int n() const noexcept { return n_; }
  std::uint64_t mask() const noexcept { return mask_; }
  // K_jk, symmetric access, j != k.
  int coupling(int j, int k) const;
  // Upper-triangle couplings in pair-rank order.
  const std::vector<int>& couplings() const noexcept { return k_; }
  // Z-basis masks of each pair, in pair-rank order.
  const std::vector<std::uint64_t>& pair_masks() const noexcept { return pair_masks_; }

  double energy(std::uint64_t z) const;
  DiagonalPhase diagonal() const;
  WeightedPauliSum as_pauli_sum() const;

 private:
  int n_;
  std::uint64_t mask_;
  std::vector<int> k_;
  std::vector<std::uint64_t> pair_masks_;
};

double sk_energy(const SKInstance& inst, std::uint64_t z);

struct DiagonalSpectrum {
  std::vector<double> energies;
  double lambda_min = 0.0;
  std::vector<std::uint64_t> ground_indices;  // ascending
  double gap = 0.0;  // second distinct level minus lambda_min, 0 if flat
};

// Energies within this of each other are treated as one level.
inline constexpr double kLevelTol = 1e-9;

DiagonalSpectrum spectrum(const SKInstance& inst, int max_qubits = kDefaultMaxQubits);
DiagonalSpectrum spectrum_of(std::vector<double> energies);

// lambda_min + 0.05 |lambda_min|; an energy at or below it counts as solved.
double success_threshold(const DiagonalSpectrum& spec);
double success_threshold(const SKInstance& inst);
bool is_solved(double energy, const DiagonalSpectrum& spec);

// 1 - (E - lambda_min) / gap, not clamped.
double overlap_lower_bound(double energy, const DiagonalSpectrum& spec);

// sum over ground basis states of |<g|psi>|^2
double ground_overlap(const Statevector& state, const DiagonalSpectrum& spec);

// Hex of the 2^n-bit ground indicator (basis index 0 is the lowest bit).
std::string ground_key(int n, const std::vector<std::uint64_t>& ground_indices);

std::uint64_t instance_count(int n);

// All instances for n in increasing mask order.
inline auto enumerate_instances(int n) {
  const std::uint64_t count = instance_count(n);
  return std::views::iota(std::uint64_t{0}, count) |
         std::views::transform([n](std::uint64_t m) { return SKInstance(n, m); });
}

std::string bitstring(int n, std::uint64_t z);

}  // namespace ionqaoa::sk
