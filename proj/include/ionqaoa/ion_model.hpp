#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "ionqaoa/statevector.hpp"

namespace ionqaoa::ion {

inline constexpr double kDefaultJmax = 4.0;  // kHz
inline constexpr double kDefaultAlpha = 1.0;

// Power-law Ising couplings J_jk = J_max A_j A_k / |j-k|^alpha (kHz).
struct IonCouplings {
  int n = 0;
  double j_max = kDefaultJmax;
  double alpha = kDefaultAlpha;
  std::vector<double> amplitudes;  // A_j in [-1, 1]
  std::vector<double> j;           // row-major n x n, zero diagonal

  double at(int row, int col) const { return j[static_cast<std::size_t>(row) * n + col]; }
};

IonCouplings build_couplings(int n, double j_max, double alpha,
                             std::vector<double> amplitudes);
// A_j == 1 for all j.
IonCouplings uniform_couplings(int n, double j_max = kDefaultJmax,
                               double alpha = kDefaultAlpha);

enum class Basis { kX, kZ };

// energies[z] = 1/2 sum_{j != k} J_jk s_j s_k with s = (-1)^bit. The table is
// the same for both bases; for kX it is meant to be applied between
// Hadamard layers, since H_I = H_+ (1/2 sum J Z Z) H_+.
DiagonalPhase ising_diagonal(const IonCouplings& c, Basis basis = Basis::kZ);

// Effective two-level Hamiltonian in the (|e>, |g>) basis:
//   H_eff = -Delta |e><e| - r |e><g| - r* |g><e|,  r = d_eg . eps
struct TwoLevelParams {
  double delta = 0.0;
  std::complex<double> rabi{0.0, 0.0};
};

struct TwoLevelEigen {
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  // Components ordered (e, g).
  std::array<std::complex<double>, 2> vec_plus{};
  std::array<std::complex<double>, 2> vec_minus{};
};

std::array<std::complex<double>, 4> heff_matrix(const TwoLevelParams& p);
TwoLevelEigen heff_eigen(const TwoLevelParams& p);

struct TrapParams {
  double nu = 1.0;   // trap frequency
  double eta = 0.0;  // Lamb-Dicke parameter
  int m_max = 8;     // highest phonon number kept
};

struct TrapLevel {
  double energy = 0.0;
  int phonons = 0;       // dominant Fock number
  bool excited = false;  // dominant internal state is |e>
  double top_fock_population = 0.0;
};

struct TrapSpectrum {
  std::vector<TrapLevel> levels;  // sorted by energy
  double hermiticity_residual = 0.0;
  // Set when an eigenvector dominated by m < m_max leaks more than 1e-3
  // population into the top Fock level.
  bool truncation_warning = false;
  // Set when eta exceeds the small-coupling regime (0.3).
  bool large_eta_warning = false;
};

// H = nu (a^dag a + 1/2) + n0 + n.sigma + eta (a + a^dag)(Im r sigma1 + Re r sigma2)
// on the (m_max + 1)-level Fock space times the two-level space.
TrapSpectrum trap_spectrum(const TwoLevelParams& p, const TrapParams& t);

std::string couplings_csv(const IonCouplings& c);

}  // namespace ionqaoa::ion
