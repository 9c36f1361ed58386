#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ionqaoa/estimation.hpp"
#include "ionqaoa/statevector.hpp"

namespace ionqaoa::q1 {

// n . sigma with n = (sin t cos f, sin t sin f, cos t).
struct BlochHamiltonian {
  double theta = 0.0;
  double phi = 0.0;
  std::array<double, 3> n_vec{0.0, 0.0, 1.0};

  static BlochHamiltonian from_angles(double theta, double phi);
  // Throws kDomain unless |n| == 1 within 1e-12.
  static BlochHamiltonian from_vector(const std::array<double, 3>& n);
  Mat2 matrix() const;
};

struct BlochEigen {
  double lambda_plus = 1.0;
  double lambda_minus = -1.0;
  Statevector plus;
  Statevector minus;
};

BlochEigen bloch_eigen(const BlochHamiltonian& h);

// <w| n.sigma |w>
double bloch_energy(const Statevector& w, const BlochHamiltonian& h);

struct OverlapPair {
  double lhs = 0.0;  // (1 - <w|H|w>) / 2
  double rhs = 0.0;  // |<lambda_-|w>|^2
};
OverlapPair overlap_identity(const Statevector& w, const BlochHamiltonian& h);

// exp(i t2 Y) exp(i t1 X) |0>
Statevector variational_state(double theta1, double theta2);

struct VqeConfig {
  long shots = 1024;  // per Pauli term and cost evaluation; 0 = exact expectations
  est::ReadoutNoise noise;
  int max_iterations = 200;
  double tol = 1e-8;
  double simplex_step = 1.0;  // radians
  // Quadratic-model trust region run after the simplex stalls under shot
  // noise: rounds counted as interior steps, radius in radians. Skipped
  // when shots == 0.
  int refine_rounds = 3;
  double refine_radius = 0.3;
  double refine_shrink = 0.7;
  int refine_grid = 5;
  std::uint64_t seed = 1;
};

struct VqeStep {
  long evaluation = 0;
  double energy = 0.0;
};

struct VqeTrace {
  std::vector<VqeStep> steps;  // one per cost evaluation
  std::array<double, 2> params{};
  double final_energy = 0.0;  // fresh estimate at the returned parameters
  double final_error = 0.0;   // |final_energy - (-1)|
  long shots_per_estimate = 0;  // 3 m
  long shots_consumed = 0;      // 3 m times the number of estimates
};

VqeTrace vqe_run(const BlochHamiltonian& h, const VqeConfig& cfg);

/// 2x2 density matrix, row-major. Construction validates Hermiticity and
/// unit trace to 1e-12 and eigenvalues >= -1e-10.
class Qubit2x2Density {
 public:
  explicit Qubit2x2Density(const Mat2& entries);
  // (1 + r . sigma) / 2
  static Qubit2x2Density from_bloch(const std::array<double, 3>& r);

  const Mat2& entries() const noexcept { return rho_; }

 private:
  Mat2 rho_;
};

struct DensityInvariants {
  double trace = 0.0;
  double det = 0.0;
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  double entropy = 0.0;
};

DensityInvariants density_invariants(const Qubit2x2Density& rho);
// Same formulas without the constructor checks; throws kInvalidState on a
// negative discriminant.
DensityInvariants density_invariants(const Mat2& rho);

}  // namespace ionqaoa::q1
