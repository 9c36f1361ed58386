#include "ionqaoa/statevector.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "ionqaoa/error.hpp"

namespace ionqaoa {

namespace {

void check_qubit_count(int n_qubits, int max_qubits) {
  if (n_qubits < 1) fail(ErrorKind::kDomain, "n_qubits must be >= 1");
  if (n_qubits > max_qubits)
    fail(ErrorKind::kCapacity, "n_qubits = " + std::to_string(n_qubits) +
                                   " exceeds dense limit " +
                                   std::to_string(max_qubits));
}

}  // namespace

Statevector::Statevector(int n_qubits, int max_qubits) : n_(n_qubits) {
  check_qubit_count(n_qubits, max_qubits);
  amps_.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
  amps_[0] = 1.0;
}

Statevector::Statevector(int n_qubits, std::vector<cplx> amplitudes,
                         int max_qubits)
    : n_(n_qubits), amps_(std::move(amplitudes)) {
  check_qubit_count(n_qubits, max_qubits);
  if (amps_.size() != (std::size_t{1} << n_qubits))
    fail(ErrorKind::kDimension, "amplitude array length must be 2^n");
}

Statevector Statevector::basis(int n_qubits, std::uint64_t index) {
  Statevector s(n_qubits);
  if (index >= s.dim()) fail(ErrorKind::kIndex, "basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

Statevector Statevector::plus(int n_qubits) {
  Statevector s(n_qubits);
  const double a = 1.0 / std::sqrt(static_cast<double>(s.dim()));
  for (auto& x : s.amps_) x = a;
  return s;
}

double Statevector::norm_squared() const noexcept {
  double acc = 0.0;
  for (const auto& a : amps_) acc += std::norm(a);
  return acc;
}

void Statevector::check_norm(double tol) const {
  const double dev = std::abs(norm_squared() - 1.0);
  if (!(dev <= tol))
    fail(ErrorKind::kConsistency,
         "state norm drifted by " + std::to_string(dev));
}

void Statevector::renormalize() {
  const double nrm = std::sqrt(norm_squared());
  if (nrm == 0.0) fail(ErrorKind::kInvalidState, "cannot renormalize zero vector");
  for (auto& a : amps_) a /= nrm;
}

void Statevector::apply_single_qubit(int qubit, const Mat2& u) {
  if (qubit < 0 || qubit >= n_)
    fail(ErrorKind::kIndex, "qubit " + std::to_string(qubit) + " out of range");
  if (!is_unitary(u)) fail(ErrorKind::kUnitarity, "2x2 gate is not unitary");
  const std::size_t stride = qubit_mask(n_, qubit);
  const std::size_t dim = amps_.size();
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t off = 0; off < stride; ++off) {
      cplx& a0 = amps_[base + off];
      cplx& a1 = amps_[base + off + stride];
      const cplx x0 = a0;
      const cplx x1 = a1;
      a0 = u[0] * x0 + u[1] * x1;
      a1 = u[2] * x0 + u[3] * x1;
    }
  }
}

void Statevector::hadamard_all() {
  // Walsh-Hadamard butterflies, one pass per qubit.
  const std::size_t dim = amps_.size();
  const double r = 1.0 / std::numbers::sqrt2;
  for (std::size_t stride = 1; stride < dim; stride <<= 1) {
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
      for (std::size_t off = 0; off < stride; ++off) {
        cplx& a0 = amps_[base + off];
        cplx& a1 = amps_[base + off + stride];
        const cplx x0 = a0;
        const cplx x1 = a1;
        a0 = (x0 + x1) * r;
        a1 = (x0 - x1) * r;
      }
    }
  }
}

void Statevector::apply_diagonal_phase(std::span<const double> energies,
                                       double angle) {
  if (energies.size() != amps_.size())
    fail(ErrorKind::kDimension, "diagonal length does not match state");
  if (angle == 0.0) return;
  for (std::size_t z = 0; z < amps_.size(); ++z) {
    const double phi = -angle * energies[z];
    amps_[z] *= cplx{std::cos(phi), std::sin(phi)};
  }
}

PauliString PauliString::parse(const std::string& label) {
  PauliString p;
  p.axes.reserve(label.size());
  for (char c : label) {
    switch (c) {
      case 'I': case '_': p.axes.push_back(0); break;
      case 'X': p.axes.push_back(1); break;
      case 'Y': p.axes.push_back(2); break;
      case 'Z': p.axes.push_back(3); break;
      default: fail(ErrorKind::kParse, std::string("bad Pauli label char '") + c + "'");
    }
  }
  return p;
}

PauliString PauliString::single(int n_qubits, int qubit, std::uint8_t axis) {
  if (qubit < 0 || qubit >= n_qubits) fail(ErrorKind::kIndex, "qubit out of range");
  if (axis > 3) fail(ErrorKind::kDomain, "Pauli axis must be in {0,1,2,3}");
  PauliString p;
  p.axes.assign(n_qubits, 0);
  p.axes[qubit] = axis;
  return p;
}

PauliString PauliString::zz(int n_qubits, int j, int k) {
  PauliString p = single(n_qubits, j, 3);
  if (k < 0 || k >= n_qubits) fail(ErrorKind::kIndex, "qubit out of range");
  // Z_j Z_j = I
  p.axes[k] = (p.axes[k] == 3) ? 0 : 3;
  return p;
}

void WeightedPauliSum::add(double coefficient, PauliString pauli) {
  if (!std::isfinite(coefficient)) fail(ErrorKind::kDomain, "coefficient not finite");
  if (!terms.empty() && terms.front().second.n_qubits() != pauli.n_qubits())
    fail(ErrorKind::kDimension, "Pauli strings must share a qubit count");
  terms.emplace_back(coefficient, std::move(pauli));
}

bool is_unitary(const Mat2& u, double tol) {
  // U^dagger U == 1
  const cplx d00 = std::conj(u[0]) * u[0] + std::conj(u[2]) * u[2];
  const cplx d01 = std::conj(u[0]) * u[1] + std::conj(u[2]) * u[3];
  const cplx d11 = std::conj(u[1]) * u[1] + std::conj(u[3]) * u[3];
  return std::abs(d00 - 1.0) <= tol && std::abs(d11 - 1.0) <= tol &&
         std::abs(d01) <= tol;
}

Statevector apply_single_qubit(Statevector state, int qubit, const Mat2& u) {
  state.apply_single_qubit(qubit, u);
  return state;
}

Statevector hadamard_all(Statevector state) {
  state.hadamard_all();
  return state;
}

Statevector apply_diagonal_phase(Statevector state, const DiagonalPhase& diag,
                                 double angle) {
  state.apply_diagonal_phase(diag.energies, angle);
  return state;
}

cplx pauli_expectation(const Statevector& state, const PauliString& pauli) {
  const int n = state.n_qubits();
  if (pauli.n_qubits() != n) fail(ErrorKind::kDimension, "Pauli string width mismatch");
  std::uint64_t flip = 0;   // X or Y
  std::uint64_t phase = 0;  // Y or Z contribute (-1)^bit
  int n_y = 0;
  for (int q = 0; q < n; ++q) {
    const auto a = pauli.axes[q];
    if (a > 3) fail(ErrorKind::kDomain, "Pauli axis must be in {0,1,2,3}");
    const std::uint64_t m = qubit_mask(n, q);
    if (a == 1 || a == 2) flip |= m;
    if (a == 2 || a == 3) phase |= m;
    if (a == 2) ++n_y;
  }
  // P|z> = i^{#Y} (-1)^{popcount(z & phase)} |z ^ flip>
  static constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const auto amps = state.amplitudes();
  cplx acc{0.0, 0.0};
  for (std::size_t z = 0; z < amps.size(); ++z) {
    const cplx term = std::conj(amps[z ^ flip]) * amps[z];
    acc += (std::popcount(z & phase) & 1) ? -term : term;
  }
  return kIPow[n_y % 4] * acc;
}

double expval(const Statevector& state, const WeightedPauliSum& obs) {
  cplx acc{0.0, 0.0};
  for (const auto& [h, p] : obs.terms) acc += h * pauli_expectation(state, p);
  if (std::abs(acc.imag()) > 1e-8)
    fail(ErrorKind::kConsistency, "expectation value has imaginary part " +
                                      std::to_string(acc.imag()));
  return acc.real();
}

cplx inner(const Statevector& a, const Statevector& b) {
  if (a.dim() != b.dim()) fail(ErrorKind::kDimension, "state dimension mismatch");
  cplx acc{0.0, 0.0};
  for (std::size_t z = 0; z < a.dim(); ++z) acc += std::conj(a[z]) * b[z];
  return acc;
}

double overlap(const Statevector& a, const Statevector& b) {
  return std::norm(inner(a, b));
}

namespace gates {

Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
Mat2 x() { return {0.0, 1.0, 1.0, 0.0}; }
Mat2 y() { return {0.0, cplx{0, -1}, cplx{0, 1}, 0.0}; }
Mat2 z() { return {1.0, 0.0, 0.0, -1.0}; }
Mat2 h() {
  const double r = 1.0 / std::numbers::sqrt2;
  return {r, r, r, -r};
}
Mat2 s() { return {1.0, 0.0, 0.0, cplx{0, 1}}; }

Mat2 rx(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c, cplx{0, -s}, cplx{0, -s}, c};
}
Mat2 ry(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c, -s, s, c};
}
Mat2 rz(double angle) {
  return {std::polar(1.0, -angle), 0.0, 0.0, std::polar(1.0, angle)};
}

}  // namespace gates

}  // namespace ionqaoa
