#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace ionqaoa::synth {

using DenseUnitary = Eigen::MatrixXcd;

// Controlled gates above this many controls are refused (dense 2^(k+1) blocks).
inline constexpr int kMaxControls = 10;

// V^e with V the principal square root of X, i.e. H diag(1, e^{i pi e/2}) H.
// sqrt_x_power(2) == X.
DenseUnitary sqrt_x_power(double exponent);

// 1_{2^{k+1}-2} (+) U, controls are the k most significant wires.
DenseUnitary k_controlled(const DenseUnitary& u, int k);

// (1 (x) W) C_Z^k (1 (x) W^dagger); requires U == W Z W^dagger.
DenseUnitary local_equivalence(const DenseUnitary& u, const DenseUnitary& w,
                               int k);

/// One element of a gate sequence: a 2x2 unitary on `target`, active when
/// every wire in `controls` is |1>. Wire 0 is the most significant bit.
struct GateElement {
  DenseUnitary gate;
  int target = 0;
  std::vector<int> controls;
  std::string label;
};

struct GateSeq {
  int width = 0;
  std::vector<GateElement> elements;  // elements[0] acts first
};

// Full 2^width matrix of a single element.
DenseUnitary embed(const GateElement& element, int width);
// Product elements[m-1] ... elements[0].
DenseUnitary compose(const GateSeq& seq);

// Controlled-V(b->t), CNOT(a->b), controlled-V^dagger(b->t), CNOT(a->b),
// controlled-V(a->t) on wires (a, b, t) = (0, 1, 2).
GateSeq toffoli2_sequence();

/// k-controlled X built from the three-controlled-root recursion
///   U^{a b c} = W^{a c} W^{b c} (W^dagger)^{(a xor b) c},  W = sqrt(U),
/// where c is the conjunction of the remaining controls. `levels` bounds
/// how many times the recursion is applied; remaining multi-controlled roots
/// stay as atomic dense elements. levels < 0 means recurse until every
/// element has a single control. Wires 0..k-1 are controls, wire k the target.
GateSeq k_toffoli_recursive(int k, int levels = -1);

// Number of elements acting on two or more wires.
int multi_qubit_count(const GateSeq& seq);

double max_abs_diff(const DenseUnitary& a, const DenseUnitary& b);
double unitarity_error(const DenseUnitary& u);

struct IdentityCase {
  std::string description;
  bool passed = false;
};

struct IdentityReport {
  std::vector<IdentityCase> cases;
  bool all_passed() const;
};

// Checks a xor b = a + b - 2ab, V^a V^b V^{-(a xor b)} = X^{ab}, and the
// vector generalization 2ab c = a c + b c - (a xor b) c over c in {0,1}^q,
// q <= 4.
IdentityReport boolean_identity_check();

}  // namespace ionqaoa::synth
