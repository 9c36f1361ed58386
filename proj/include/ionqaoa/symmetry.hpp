#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "ionqaoa/sk.hpp"
#include "ionqaoa/statevector.hpp"

namespace ionqaoa::sym {

std::uint64_t flip_bits(int n, std::uint64_t z);     // complement
std::uint64_t reverse_bits(int n, std::uint64_t z);  // chain reflection

// X^{(x)n}: amplitude at z moves to complement(z).
Statevector global_flip(const Statevector& state);
// R: amplitude at b moves to reverse(b).
Statevector reflect(const Statevector& state);

bool is_symmetric(const Statevector& state, double tol = 1e-8);

enum class OrbitClass { kClass1, kClass2, kClass3 };
std::string_view to_string(OrbitClass c);

/// One orbit of basis states under {1, F, R, FR}, F = global flip.
struct Orbit {
  std::uint64_t representative = 0;    // lowest index in the orbit
  std::vector<std::uint64_t> members;  // ascending, distinct
  OrbitClass cls = OrbitClass::kClass3;
};

// All orbits, ordered by representative.
std::vector<Orbit> orbits(int n);

/// Orthonormal basis of the symmetric subspace made from orbit sums:
///   class 1: t == R t,       (|t> + F|t>)/sqrt 2
///   class 2: t == R F t,     (|t> + F|t>)/sqrt 2
///   class 3: otherwise,      (|t> + F|t> + R|t> + RF|t>)/2
struct SymmetricBasis {
  int n = 0;
  std::vector<Statevector> vectors;
  std::vector<OrbitClass> class_tags;
  std::vector<Orbit> source_orbits;

  std::size_t count(OrbitClass c) const;
};

SymmetricBasis build_basis_M(int n = 6);

enum class InstanceClass { kEasySymmetric, kHardProtected };
std::string_view to_string(InstanceClass c);

struct Classification {
  InstanceClass cls = InstanceClass::kHardProtected;
  double lambda_min = 0.0;
  double gap = 0.0;
  double min_energy_over_v = 0.0;
  // dim(ground space intersect V)
  int symmetric_ground_dim = 0;
};

// Ground space meets V iff the compression of the symmetrizer
// 1/4 (1+F)(1+R) onto the ground space has eigenvalue 1.
Classification classify_instance(const sk::SKInstance& inst);
Classification classify_instance(const sk::SKInstance& inst,
                                 const sk::DiagonalSpectrum& spec);

// min <psi|H_P|psi> over normalized psi in V, by diagonalizing H_P in the
// orbit basis. n <= 10.
double min_energy_over_V(const sk::SKInstance& inst);
double min_energy_over_V(int n, const std::vector<double>& energies);

// min over the vectors of `basis` of <chi|H_P|chi>.
double min_energy_over_basis(const SymmetricBasis& basis, const std::vector<double>& energies);

}  // namespace ionqaoa::sym
