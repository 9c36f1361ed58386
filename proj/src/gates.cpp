#include "ionqaoa/gates.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "ionqaoa/error.hpp"

namespace ionqaoa::synth {

namespace {

using cplx = std::complex<double>;

DenseUnitary pauli_x() {
  DenseUnitary x(2, 2);
  x << 0, 1, 1, 0;
  return x;
}

DenseUnitary pauli_z() {
  DenseUnitary z(2, 2);
  z << 1, 0, 0, -1;
  return z;
}

void check_width(int width) {
  if (width < 1 || width > kMaxControls + 1)
    fail(ErrorKind::kCapacity, "gate width out of dense range");
}

// Left-multiplies `m` (2^width rows) by the embedded element, in place.
void apply_element(const GateElement& e, int width, DenseUnitary& m) {
  const std::uint64_t dim = std::uint64_t{1} << width;
  std::uint64_t cmask = 0;
  for (int c : e.controls) cmask |= std::uint64_t{1} << (width - 1 - c);
  const std::uint64_t tmask = std::uint64_t{1} << (width - 1 - e.target);
  const cplx u00 = e.gate(0, 0), u01 = e.gate(0, 1);
  const cplx u10 = e.gate(1, 0), u11 = e.gate(1, 1);
  for (std::uint64_t z = 0; z < dim; ++z) {
    if ((z & tmask) || (z & cmask) != cmask) continue;
    const std::uint64_t z1 = z | tmask;
    for (Eigen::Index col = 0; col < m.cols(); ++col) {
      const cplx a0 = m(static_cast<Eigen::Index>(z), col);
      const cplx a1 = m(static_cast<Eigen::Index>(z1), col);
      m(static_cast<Eigen::Index>(z), col) = u00 * a0 + u01 * a1;
      m(static_cast<Eigen::Index>(z1), col) = u10 * a0 + u11 * a1;
    }
  }
}

GateElement cnot(int control, int target) {
  return {pauli_x(), target, {control}, "CNOT"};
}

// Appends the recursion for (controls)-controlled X^exponent on target.
void build_controlled_power(std::vector<int> controls, int target,
                            double exponent, int levels,
                            std::vector<GateElement>& out) {
  if (controls.size() == 1 || levels == 0) {
    std::string label = "C" + std::to_string(controls.size()) + "-X^" +
                        std::to_string(exponent);
    out.push_back({sqrt_x_power(2.0 * exponent), target, std::move(controls),
                   std::move(label)});
    return;
  }
  const int a = controls[0];
  const int b = controls[1];
  std::vector<int> rest(controls.begin() + 2, controls.end());
  std::vector<int> with_a{a};
  std::vector<int> with_b{b};
  with_a.insert(with_a.end(), rest.begin(), rest.end());
  with_b.insert(with_b.end(), rest.begin(), rest.end());
  const double half = exponent / 2.0;
  const int next = levels < 0 ? levels : levels - 1;
  build_controlled_power(with_b, target, half, next, out);
  out.push_back(cnot(a, b));
  build_controlled_power(with_b, target, -half, next, out);
  out.push_back(cnot(a, b));
  build_controlled_power(with_a, target, half, next, out);
}

}  // namespace

DenseUnitary sqrt_x_power(double exponent) {
  // V^e = X^{e/2} = H diag(1, e^{i pi e / 2}) H on the principal branch.
  const cplx phase = std::polar(1.0, 0.5 * std::numbers::pi * exponent);
  const cplx plus = 0.5 * (1.0 + phase);
  const cplx minus = 0.5 * (1.0 - phase);
  DenseUnitary v(2, 2);
  v << plus, minus, minus, plus;
  return v;
}

DenseUnitary k_controlled(const DenseUnitary& u, int k) {
  if (u.rows() != 2 || u.cols() != 2)
    fail(ErrorKind::kDimension, "k_controlled expects a 2x2 unitary");
  if (unitarity_error(u) > 1e-10) fail(ErrorKind::kUnitarity, "gate is not unitary");
  if (k < 1) fail(ErrorKind::kDomain, "k must be >= 1");
  if (k > kMaxControls)
    fail(ErrorKind::kCapacity, "k = " + std::to_string(k) + " exceeds dense limit");
  const Eigen::Index dim = Eigen::Index{1} << (k + 1);
  DenseUnitary m = DenseUnitary::Identity(dim, dim);
  m.bottomRightCorner(2, 2) = u;
  return m;
}

DenseUnitary local_equivalence(const DenseUnitary& u, const DenseUnitary& w,
                               int k) {
  if (u.rows() != 2 || w.rows() != 2 || u.cols() != 2 || w.cols() != 2)
    fail(ErrorKind::kDimension, "local_equivalence expects 2x2 matrices");
  if (unitarity_error(w) > 1e-10) fail(ErrorKind::kUnitarity, "W is not unitary");
  const DenseUnitary wzw = w * pauli_z() * w.adjoint();
  if (max_abs_diff(u, wzw) > 1e-8)
    fail(ErrorKind::kConjugation, "U differs from W Z W^dagger");
  const DenseUnitary cz = k_controlled(pauli_z(), k);
  const Eigen::Index ctrl_dim = Eigen::Index{1} << k;
  // 1_{2^k} (x) W is block diagonal since the target is the last wire.
  DenseUnitary local = DenseUnitary::Zero(2 * ctrl_dim, 2 * ctrl_dim);
  for (Eigen::Index c = 0; c < ctrl_dim; ++c) local.block(2 * c, 2 * c, 2, 2) = w;
  return local * cz * local.adjoint();
}

DenseUnitary embed(const GateElement& element, int width) {
  check_width(width);
  const Eigen::Index dim = Eigen::Index{1} << width;
  DenseUnitary m = DenseUnitary::Identity(dim, dim);
  apply_element(element, width, m);
  return m;
}

DenseUnitary compose(const GateSeq& seq) {
  check_width(seq.width);
  const Eigen::Index dim = Eigen::Index{1} << seq.width;
  DenseUnitary m = DenseUnitary::Identity(dim, dim);
  for (const auto& e : seq.elements) {
    if (e.target < 0 || e.target >= seq.width)
      fail(ErrorKind::kIndex, "element target out of range");
    for (int c : e.controls) {
      if (c < 0 || c >= seq.width) fail(ErrorKind::kIndex, "control out of range");
      if (c == e.target) fail(ErrorKind::kDomain, "control overlaps target");
    }
    apply_element(e, seq.width, m);
  }
  return m;
}

GateSeq toffoli2_sequence() {
  const int a = 0, b = 1, t = 2;
  const DenseUnitary v = sqrt_x_power(1.0);
  const DenseUnitary vdg = sqrt_x_power(-1.0);
  GateSeq seq;
  seq.width = 3;
  seq.elements = {
      {v, t, {b}, "CV"},
      cnot(a, b),
      {vdg, t, {b}, "CV^dagger"},
      cnot(a, b),
      {v, t, {a}, "CV"},
  };
  const double err = max_abs_diff(compose(seq), k_controlled(pauli_x(), 2));
  if (err > 1e-10)
    fail(ErrorKind::kSynthesis, "Toffoli sequence verification failed");
  return seq;
}

GateSeq k_toffoli_recursive(int k, int levels) {
  if (k < 2 || k > 6)
    fail(ErrorKind::kCapacity, "recursive Toffoli supports 2 <= k <= 6");
  GateSeq seq;
  seq.width = k + 1;
  std::vector<int> controls(k);
  for (int i = 0; i < k; ++i) controls[i] = i;
  build_controlled_power(std::move(controls), k, 1.0, levels, seq.elements);
  return seq;
}

int multi_qubit_count(const GateSeq& seq) {
  int count = 0;
  for (const auto& e : seq.elements)
    if (!e.controls.empty()) ++count;
  return count;
}

double max_abs_diff(const DenseUnitary& a, const DenseUnitary& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorKind::kDimension, "matrix shape mismatch");
  return (a - b).cwiseAbs().maxCoeff();
}

double unitarity_error(const DenseUnitary& u) {
  if (u.rows() != u.cols()) fail(ErrorKind::kDimension, "matrix not square");
  const DenseUnitary d = u.adjoint() * u - DenseUnitary::Identity(u.rows(), u.cols());
  return d.cwiseAbs().maxCoeff();
}

bool IdentityReport::all_passed() const {
  for (const auto& c : cases)
    if (!c.passed) return false;
  return !cases.empty();
}

IdentityReport boolean_identity_check() {
  IdentityReport report;
  const DenseUnitary x = pauli_x();
  const DenseUnitary id = DenseUnitary::Identity(2, 2);
  auto x_pow = [&](int e) { return e ? x : id; };

  for (int a = 0; a <= 1; ++a) {
    for (int b = 0; b <= 1; ++b) {
      const int axb = a ^ b;
      const std::string ab = "(a,b)=(" + std::to_string(a) + "," + std::to_string(b) + ")";
      report.cases.push_back({"xor " + ab, axb == a + b - 2 * a * b});
      report.cases.push_back({"2ab = a + b - (a xor b) " + ab, 2 * a * b == a + b - axb});
      const DenseUnitary lhs =
          sqrt_x_power(a) * sqrt_x_power(b) * sqrt_x_power(-axb);
      report.cases.push_back(
          {"V^a V^b V^-(a xor b) = X^ab " + ab, max_abs_diff(lhs, x_pow(a * b)) < 1e-12});

      for (int q = 1; q <= 4; ++q) {
        for (int c = 0; c < (1 << q); ++c) {
          bool ok = true;
          int conj = 1;
          for (int i = 0; i < q; ++i) {
            const int ci = (c >> i) & 1;
            conj &= ci;
            ok = ok && (2 * a * b * ci == a * ci + b * ci - axb * ci);
          }
          // operator form with the conjunction of the extra controls
          const DenseUnitary op = sqrt_x_power(a * conj) * sqrt_x_power(b * conj) *
                                  sqrt_x_power(-axb * conj);
          ok = ok && max_abs_diff(op, x_pow(a * b * conj)) < 1e-12;
          report.cases.push_back({"generalized " + ab + " q=" + std::to_string(q) +
                                      " c=" + std::to_string(c),
                                  ok});
        }
      }
    }
  }
  return report;
}

}  // namespace ionqaoa::synth
