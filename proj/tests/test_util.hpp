#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <random>

#include "ionqaoa/error.hpp"
#include "ionqaoa/statevector.hpp"

namespace testutil {

using ionqaoa::cplx;

inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Kind of the ionqaoa::Error thrown by f, or nullopt if it returns normally.
template <class F>
std::optional<ionqaoa::ErrorKind> kind_of(F&& f) {
  try {
    f();
  } catch (const ionqaoa::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

inline ionqaoa::Statevector random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<cplx> a(std::size_t{1} << n);
  for (auto& v : a) v = {g(rng), g(rng)};
  ionqaoa::Statevector s(n, std::move(a));
  s.renormalize();
  return s;
}

inline Eigen::VectorXcd to_eigen(const ionqaoa::Statevector& s) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(s.dim()));
  for (std::size_t z = 0; z < s.dim(); ++z) v(static_cast<Eigen::Index>(z)) = s[z];
  return v;
}

inline Eigen::Matrix2cd pauli(int axis) {
  Eigen::Matrix2cd m;
  switch (axis) {
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: m.setIdentity();
  }
  return m;
}

// Kronecker product with qubit 0 leftmost.
inline Eigen::MatrixXcd dense_pauli(const ionqaoa::PauliString& p) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (auto axis : p.axes) {
    const Eigen::Matrix2cd s = pauli(axis);
    Eigen::MatrixXcd k(m.rows() * 2, m.cols() * 2);
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) k.block(2 * r, 2 * c, 2, 2) = m(r, c) * s;
    m = k;
  }
  return m;
}

inline Eigen::MatrixXcd single_on(int n, int qubit, const Eigen::Matrix2cd& u) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (int q = 0; q < n; ++q) {
    const Eigen::Matrix2cd s = q == qubit ? u : Eigen::Matrix2cd::Identity();
    Eigen::MatrixXcd k(m.rows() * 2, m.cols() * 2);
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) k.block(2 * r, 2 * c, 2, 2) = m(r, c) * s;
    m = k;
  }
  return m;
}

}  // namespace testutil
