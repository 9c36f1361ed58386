#include "ionqaoa/ansatz.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>

#include "ionqaoa/error.hpp"

namespace ionqaoa {

namespace {

double wrap(double x, double period) {
  double r = std::fmod(x, period);
  if (r < 0.0) r += period;
  if (r >= period) r = 0.0;
  return r;
}

}  // namespace

AnsatzParams::AnsatzParams(std::vector<double> b, std::vector<double> g)
    : beta(std::move(b)), gamma(std::move(g)) {
  if (beta.size() != gamma.size())
    fail(ErrorKind::kDimension, "beta and gamma must have the same length");
}

AnsatzParams AnsatzParams::wrapped() const {
  AnsatzParams w = *this;
  for (auto& b : w.beta) b = wrap(b, std::numbers::pi);
  for (auto& g : w.gamma) g = wrap(g, 2.0 * std::numbers::pi);
  return w;
}

std::vector<double> AnsatzParams::flatten() const {
  std::vector<double> x;
  x.reserve(2 * beta.size());
  for (std::size_t k = 0; k < beta.size(); ++k) {
    x.push_back(beta[k]);
    x.push_back(gamma[k]);
  }
  return x;
}

AnsatzParams AnsatzParams::unflatten(std::span<const double> x) {
  if (x.size() % 2 != 0) fail(ErrorKind::kDimension, "flat parameter vector has odd length");
  AnsatzParams p;
  for (std::size_t i = 0; i < x.size(); i += 2) {
    p.beta.push_back(x[i]);
    p.gamma.push_back(x[i + 1]);
  }
  return p;
}

LeveledDiagonal::LeveledDiagonal(const DiagonalPhase& diag, double tol) {
  const auto& e = diag.energies;
  for (double v : e)
    if (!std::isfinite(v)) fail(ErrorKind::kDomain, "diagonal energies must be finite");
  std::vector<double> sorted(e);
  std::sort(sorted.begin(), sorted.end());
  for (double v : sorted)
    if (levels_.empty() || v - levels_.back() > tol) levels_.push_back(v);
  level_of_.resize(e.size());
  for (std::size_t z = 0; z < e.size(); ++z) {
    auto it = std::lower_bound(levels_.begin(), levels_.end(), e[z] - tol);
    level_of_[z] = static_cast<std::uint32_t>(it - levels_.begin());
  }
}

void LeveledDiagonal::apply(Statevector& state, double angle) const {
  if (state.dim() != level_of_.size())
    fail(ErrorKind::kDimension, "diagonal length does not match state");
  std::vector<cplx> phases(levels_.size());
  for (std::size_t l = 0; l < levels_.size(); ++l)
    phases[l] = std::polar(1.0, -angle * levels_[l]);
  auto amps = state.amplitudes();
  for (std::size_t z = 0; z < amps.size(); ++z) amps[z] *= phases[level_of_[z]];
}

double LeveledDiagonal::expectation(const Statevector& state) const {
  if (state.dim() != level_of_.size())
    fail(ErrorKind::kDimension, "diagonal length does not match state");
  double acc = 0.0;
  const auto amps = state.amplitudes();
  for (std::size_t z = 0; z < amps.size(); ++z) acc += levels_[level_of_[z]] * std::norm(amps[z]);
  return acc;
}

void LeveledDiagonal::multiply(Statevector& state) const {
  if (state.dim() != level_of_.size())
    fail(ErrorKind::kDimension, "diagonal length does not match state");
  auto amps = state.amplitudes();
  for (std::size_t z = 0; z < amps.size(); ++z) amps[z] *= levels_[level_of_[z]];
}

cplx LeveledDiagonal::matrix_element(const Statevector& bra, const Statevector& ket) const {
  if (bra.dim() != level_of_.size() || ket.dim() != level_of_.size())
    fail(ErrorKind::kDimension, "diagonal length does not match state");
  cplx acc{0.0, 0.0};
  const auto a = bra.amplitudes();
  const auto b = ket.amplitudes();
  for (std::size_t z = 0; z < a.size(); ++z) acc += std::conj(a[z]) * levels_[level_of_[z]] * b[z];
  return acc;
}

DiagonalPhase hz_diagonal(int n) {
  DiagonalPhase d;
  const std::size_t dim = std::size_t{1} << n;
  d.energies.resize(dim);
  for (std::size_t z = 0; z < dim; ++z) d.energies[z] = n - 2.0 * std::popcount(z);
  return d;
}

AnsatzModel::AnsatzModel(AnsatzKind kind, int n, const DiagonalPhase& generator)
    : kind_(kind), n_(n), generator_(generator), hz_(hz_diagonal(n)) {}

AnsatzModel AnsatzModel::standard(const sk::SKInstance& inst) {
  return AnsatzModel(AnsatzKind::kStandard, inst.n(), inst.diagonal());
}

AnsatzModel AnsatzModel::ion_native(const ion::IonCouplings& couplings) {
  return AnsatzModel(AnsatzKind::kIonNative, couplings.n,
                     ion::ising_diagonal(couplings, ion::Basis::kX));
}

void AnsatzModel::prepare_into(std::span<const double> flat, Statevector& out) const {
  if (flat.size() % 2 != 0) fail(ErrorKind::kDimension, "flat parameter vector has odd length");
  if (out.n_qubits() != n_) out = Statevector(n_);
  const std::size_t p = flat.size() / 2;
  if (kind_ == AnsatzKind::kStandard) {
    out = Statevector::plus(n_);
    for (std::size_t k = 0; k < p; ++k) {
      generator_.apply(out, flat[2 * k + 1]);
      const Mat2 mix = gates::rx(flat[2 * k]);
      for (int q = 0; q < n_; ++q) out.apply_single_qubit(q, mix);
      out.check_norm();
    }
    return;
  }
  auto amps = out.amplitudes();
  std::fill(amps.begin(), amps.end(), cplx{0.0, 0.0});
  amps[0] = 1.0;
  for (std::size_t k = 0; k < p; ++k) {
    out.hadamard_all();
    generator_.apply(out, flat[2 * k + 1]);
    out.hadamard_all();
    hz_.apply(out, flat[2 * k]);
    out.check_norm();
  }
  out.hadamard_all();
}

double AnsatzModel::energy_gradient(std::span<const double> flat, const LeveledDiagonal& cost,
                                   std::span<double> grad, Workspace& ws) const {
  if (grad.size() != flat.size()) fail(ErrorKind::kDimension, "gradient buffer size mismatch");
  prepare_into(flat, ws.state);
  Statevector& phi = ws.state;
  Statevector& lam = ws.costate;
  lam = phi;
  cost.multiply(lam);
  const double value = std::real(inner(phi, lam));

  // Walking the circuit backwards, a phase exp(-i t G) contributes
  // dE/dt = 2 Im <lam|G|phi> with both vectors taken right after the gate.
  auto undo_phase = [&](const LeveledDiagonal& g, double angle, double& slot) {
    slot = 2.0 * g.matrix_element(lam, phi).imag();
    g.apply(phi, -angle);
    g.apply(lam, -angle);
  };
  auto undo_hadamard = [&] {
    phi.hadamard_all();
    lam.hadamard_all();
  };
  const std::size_t p = flat.size() / 2;
  if (kind_ == AnsatzKind::kStandard) {
    // exp(-i b H_x) = H_+ exp(-i b H_z) H_+
    for (std::size_t k = p; k-- > 0;) {
      undo_hadamard();
      undo_phase(hz_, flat[2 * k], grad[2 * k]);
      undo_hadamard();
      undo_phase(generator_, flat[2 * k + 1], grad[2 * k + 1]);
    }
    return value;
  }
  undo_hadamard();
  for (std::size_t k = p; k-- > 0;) {
    undo_phase(hz_, flat[2 * k], grad[2 * k]);
    undo_hadamard();
    undo_phase(generator_, flat[2 * k + 1], grad[2 * k + 1]);
    undo_hadamard();
  }
  return value;
}

Statevector AnsatzModel::prepare(const AnsatzParams& params) const {
  Statevector out(n_);
  prepare_into(params.flatten(), out);
  return out;
}

Statevector prepare_standard(const sk::SKInstance& inst, const AnsatzParams& params) {
  return AnsatzModel::standard(inst).prepare(params);
}

Statevector prepare_ion_native(const ion::IonCouplings& c, const AnsatzParams& params) {
  return AnsatzModel::ion_native(c).prepare(params);
}

double energy(const Statevector& state, const sk::SKInstance& inst) {
  if (state.n_qubits() != inst.n()) fail(ErrorKind::kDimension, "state/instance width mismatch");
  double acc = 0.0;
  const auto amps = state.amplitudes();
  for (std::size_t z = 0; z < amps.size(); ++z) acc += inst.energy(z) * std::norm(amps[z]);
  return acc;
}

}  // namespace ionqaoa
