#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ionqaoa {

using cplx = std::complex<double>;
using Mat2 = std::array<cplx, 4>;  // row-major 2x2

inline constexpr int kDefaultMaxQubits = 24;

// Basis ordering: qubit 0 is the leftmost character of the bitstring label,
// i.e. the most significant bit of the basis index.
inline constexpr std::uint64_t qubit_mask(int n_qubits, int qubit) {
  return std::uint64_t{1} << (n_qubits - 1 - qubit);
}

/// Dense pure state over n qubits.
///
/// Mutating members act in place; the free functions below take a copy and
/// return the result. Norm is checked, never silently restored.
class Statevector {
 public:
  // |0...0>
  explicit Statevector(int n_qubits, int max_qubits = kDefaultMaxQubits);
  Statevector(int n_qubits, std::vector<cplx> amplitudes,
              int max_qubits = kDefaultMaxQubits);

  static Statevector basis(int n_qubits, std::uint64_t index);
  static Statevector plus(int n_qubits);  // |+>^n

  int n_qubits() const noexcept { return n_; }
  std::size_t dim() const noexcept { return amps_.size(); }

  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  std::span<cplx> amplitudes() noexcept { return amps_; }
  const cplx& operator[](std::size_t z) const { return amps_[z]; }
  cplx& operator[](std::size_t z) { return amps_[z]; }

  double norm_squared() const noexcept;
  // Throws kConsistency when | ||psi||^2 - 1 | > tol.
  void check_norm(double tol = 1e-9) const;
  void renormalize();

  void apply_single_qubit(int qubit, const Mat2& u);
  void hadamard_all();
  void apply_diagonal_phase(std::span<const double> energies, double angle);

 private:
  int n_;
  std::vector<cplx> amps_;
};

// Pauli axes per qubit: 0 = I, 1 = X, 2 = Y, 3 = Z.
struct PauliString {
  std::vector<std::uint8_t> axes;

  static PauliString parse(const std::string& label);  // e.g. "IXZY"
  static PauliString single(int n_qubits, int qubit, std::uint8_t axis);
  static PauliString zz(int n_qubits, int j, int k);
  int n_qubits() const noexcept { return static_cast<int>(axes.size()); }
};

struct WeightedPauliSum {
  std::vector<std::pair<double, PauliString>> terms;

  void add(double coefficient, PauliString pauli);
};

// Per-basis-state energy table, used as exp(-i angle diag).
struct DiagonalPhase {
  std::vector<double> energies;
};

bool is_unitary(const Mat2& u, double tol = 1e-12);

Statevector apply_single_qubit(Statevector state, int qubit, const Mat2& u);
Statevector hadamard_all(Statevector state);
Statevector apply_diagonal_phase(Statevector state, const DiagonalPhase& diag,
                                 double angle);

// <psi|P|psi> for a single Pauli string; complex in general.
cplx pauli_expectation(const Statevector& state, const PauliString& pauli);
double expval(const Statevector& state, const WeightedPauliSum& obs);

// |<a|b>|^2
double overlap(const Statevector& a, const Statevector& b);
cplx inner(const Statevector& a, const Statevector& b);

namespace gates {
Mat2 identity();
Mat2 x();
Mat2 y();
Mat2 z();
Mat2 h();
Mat2 s();
// exp(-i angle P) for P in {X, Y, Z}
Mat2 rx(double angle);
Mat2 ry(double angle);
Mat2 rz(double angle);
}  // namespace gates

}  // namespace ionqaoa
