#pragma once

#include <span>
#include <vector>

#include "ionqaoa/ion_model.hpp"
#include "ionqaoa/sk.hpp"
#include "ionqaoa/statevector.hpp"

namespace ionqaoa {

/// Depth-p angles. Layer k applies gamma[k] (problem or Ising propagator)
/// then beta[k] (mixer); layer 0 acts first.
struct AnsatzParams {
  std::vector<double> beta;
  std::vector<double> gamma;

  AnsatzParams() = default;
  AnsatzParams(std::vector<double> beta, std::vector<double> gamma);

  int depth() const noexcept { return static_cast<int>(beta.size()); }
  // beta into [0, pi), gamma into [0, 2 pi). Reporting only.
  AnsatzParams wrapped() const;

  // Interleaved (beta_0, gamma_0, beta_1, gamma_1, ...).
  std::vector<double> flatten() const;
  static AnsatzParams unflatten(std::span<const double> x);
};

/// Diagonal energy table grouped by distinct value, so a propagator needs
/// one sincos per level instead of one per basis state.
class LeveledDiagonal {
 public:
  LeveledDiagonal() = default;
  explicit LeveledDiagonal(const DiagonalPhase& diag, double tol = 1e-12);

  std::size_t dim() const noexcept { return level_of_.size(); }
  std::size_t level_count() const noexcept { return levels_.size(); }
  void apply(Statevector& state, double angle) const;
  double expectation(const Statevector& state) const;
  // state_z <- E_z state_z
  void multiply(Statevector& state) const;
  // sum_z conj(bra_z) E_z ket_z
  cplx matrix_element(const Statevector& bra, const Statevector& ket) const;

 private:
  std::vector<double> levels_;
  std::vector<std::uint32_t> level_of_;
};

enum class AnsatzKind { kStandard, kIonNative };

/// Prepares ansatz states for one fixed generator set.
///
/// kStandard:  prod_k exp(-i beta_k H_x) exp(-i gamma_k H_P) |+>^n
/// kIonNative: H_+ prod_k exp(-i beta_k H_z) exp(-i gamma_k H_I) |0>^n,
///             with exp(-i gamma H_I) = H_+ exp(-i gamma ZZ) H_+.
class AnsatzModel {
 public:
  static AnsatzModel standard(const sk::SKInstance& inst);
  static AnsatzModel ion_native(const ion::IonCouplings& couplings);

  AnsatzKind kind() const noexcept { return kind_; }
  int n_qubits() const noexcept { return n_; }

  Statevector prepare(const AnsatzParams& params) const;
  // Same as prepare, flat interleaved parameters, writes into `out`.
  void prepare_into(std::span<const double> flat, Statevector& out) const;

  struct Workspace {
    Statevector state{1};
    Statevector costate{1};
  };
  // <psi|C|psi> and its gradient in `grad` (same layout as `flat`), by one
  // forward pass and one adjoint sweep.
  double energy_gradient(std::span<const double> flat, const LeveledDiagonal& cost,
                         std::span<double> grad, Workspace& ws) const;

 private:
  AnsatzModel(AnsatzKind kind, int n, const DiagonalPhase& generator);

  AnsatzKind kind_;
  int n_;
  LeveledDiagonal generator_;  // H_P, or the ZZ table of H_I
  LeveledDiagonal hz_;         // sum_k Z_k
};

Statevector prepare_standard(const sk::SKInstance& inst, const AnsatzParams& params);
Statevector prepare_ion_native(const ion::IonCouplings& c, const AnsatzParams& params);

// sum_z E(z) |amp_z|^2 over the instance's diagonal table.
double energy(const Statevector& state, const sk::SKInstance& inst);

// sum_k Z_k as a diagonal table.
DiagonalPhase hz_diagonal(int n);

}  // namespace ionqaoa
