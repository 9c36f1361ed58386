#include "ionqaoa/symmetry.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "ionqaoa/error.hpp"

namespace ionqaoa::sym {

std::uint64_t flip_bits(int n, std::uint64_t z) {
  return z ^ ((std::uint64_t{1} << n) - 1);
}

std::uint64_t reverse_bits(int n, std::uint64_t z) {
  std::uint64_t r = 0;
  for (int i = 0; i < n; ++i)
    if (z & (std::uint64_t{1} << i)) r |= std::uint64_t{1} << (n - 1 - i);
  return r;
}

namespace {

template <typename Map>
Statevector permute(const Statevector& state, Map map) {
  const int n = state.n_qubits();
  std::vector<cplx> out(state.dim());
  for (std::size_t z = 0; z < state.dim(); ++z) out[map(n, z)] = state[z];
  return Statevector(n, std::move(out));
}

double distance(const Statevector& a, const Statevector& b) {
  double acc = 0.0;
  for (std::size_t z = 0; z < a.dim(); ++z) acc += std::norm(a[z] - b[z]);
  return std::sqrt(acc);
}

}  // namespace

Statevector global_flip(const Statevector& state) { return permute(state, flip_bits); }

Statevector reflect(const Statevector& state) { return permute(state, reverse_bits); }

bool is_symmetric(const Statevector& state, double tol) {
  return distance(global_flip(state), state) < tol && distance(reflect(state), state) < tol;
}

std::string_view to_string(OrbitClass c) {
  switch (c) {
    case OrbitClass::kClass1: return "class1";
    case OrbitClass::kClass2: return "class2";
    case OrbitClass::kClass3: return "class3";
  }
  return "?";
}

std::string_view to_string(InstanceClass c) {
  return c == InstanceClass::kEasySymmetric ? "easy_symmetric" : "hard_protected";
}

std::vector<Orbit> orbits(int n) {
  if (n < 1 || n > kDefaultMaxQubits) fail(ErrorKind::kCapacity, "orbit enumeration out of range");
  const std::uint64_t dim = std::uint64_t{1} << n;
  std::vector<Orbit> out;
  std::vector<bool> seen(dim, false);
  for (std::uint64_t t = 0; t < dim; ++t) {
    if (seen[t]) continue;
    const std::uint64_t ft = flip_bits(n, t);
    const std::uint64_t rt = reverse_bits(n, t);
    const std::uint64_t rft = reverse_bits(n, ft);
    Orbit o;
    o.representative = t;
    o.members = {t, ft, rt, rft};
    std::sort(o.members.begin(), o.members.end());
    o.members.erase(std::unique(o.members.begin(), o.members.end()), o.members.end());
    if (rt == t) o.cls = OrbitClass::kClass1;
    else if (rft == t) o.cls = OrbitClass::kClass2;
    else o.cls = OrbitClass::kClass3;
    for (auto m : o.members) seen[m] = true;
    out.push_back(std::move(o));
  }
  return out;
}

std::size_t SymmetricBasis::count(OrbitClass c) const {
  return static_cast<std::size_t>(std::count(class_tags.begin(), class_tags.end(), c));
}

SymmetricBasis build_basis_M(int n) {
  SymmetricBasis b;
  b.n = n;
  for (auto& o : orbits(n)) {
    std::vector<cplx> amps(std::size_t{1} << n, cplx{0.0, 0.0});
    const double a = 1.0 / std::sqrt(static_cast<double>(o.members.size()));
    for (auto m : o.members) amps[m] = a;
    b.vectors.emplace_back(n, std::move(amps));
    b.class_tags.push_back(o.cls);
    b.source_orbits.push_back(std::move(o));
  }
  return b;
}

Classification classify_instance(const sk::SKInstance& inst) {
  return classify_instance(inst, sk::spectrum(inst));
}

Classification classify_instance(const sk::SKInstance& inst, const sk::DiagonalSpectrum& spec) {
  const int n = inst.n();
  const auto& ground = spec.ground_indices;
  const Eigen::Index g = static_cast<Eigen::Index>(ground.size());
  // <g_a| 1/4 (1 + F + R + FR) |g_b>
  Eigen::MatrixXd compressed = Eigen::MatrixXd::Zero(g, g);
  for (Eigen::Index b = 0; b < g; ++b) {
    const std::uint64_t t = ground[b];
    const std::uint64_t images[4] = {t, flip_bits(n, t), reverse_bits(n, t),
                                     reverse_bits(n, flip_bits(n, t))};
    for (auto img : images) {
      auto it = std::lower_bound(ground.begin(), ground.end(), img);
      if (it != ground.end() && *it == img) compressed(it - ground.begin(), b) += 0.25;
    }
  }
  // The symmetrizer is symmetric as a real matrix, so is its compression.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(compressed);
  int dim = 0;
  for (Eigen::Index i = 0; i < g; ++i)
    if (std::abs(solver.eigenvalues()(i) - 1.0) < 1e-8) ++dim;

  Classification c;
  c.lambda_min = spec.lambda_min;
  c.gap = spec.gap;
  c.symmetric_ground_dim = dim;
  c.cls = dim > 0 ? InstanceClass::kEasySymmetric : InstanceClass::kHardProtected;
  c.min_energy_over_v = min_energy_over_V(n, spec.energies);
  return c;
}

double min_energy_over_V(const sk::SKInstance& inst) {
  return min_energy_over_V(inst.n(), inst.diagonal().energies);
}

double min_energy_over_V(int n, const std::vector<double>& energies) {
  if (n > 10) fail(ErrorKind::kCapacity, "min_energy_over_V supports n <= 10");
  if (energies.size() != (std::size_t{1} << n)) fail(ErrorKind::kDimension, "energy table size");
  const auto orb = orbits(n);
  const Eigen::Index d = static_cast<Eigen::Index>(orb.size());
  // H_P restricted to the orthonormal orbit-sum basis of V. Off-diagonal
  // entries vanish: orbits have disjoint support and H_P is diagonal.
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    const auto& members = orb[a].members;
    double acc = 0.0;
    for (auto m : members) acc += energies[m];
    h(a, a) = acc / static_cast<double>(members.size());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

double min_energy_over_basis(const SymmetricBasis& basis, const std::vector<double>& energies) {
  double best = INFINITY;
  for (const auto& v : basis.vectors) {
    if (v.dim() != energies.size()) fail(ErrorKind::kDimension, "energy table size");
    double e = 0.0;
    for (std::size_t z = 0; z < v.dim(); ++z) e += energies[z] * std::norm(v[z]);
    best = std::min(best, e);
  }
  return best;
}

}  // namespace ionqaoa::sym
