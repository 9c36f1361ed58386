#include "ionqaoa/single_qubit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "ionqaoa/error.hpp"
#include "ionqaoa/optimizer.hpp"

namespace ionqaoa::q1 {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Mat2 mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

struct ModelStep {
  std::array<double, 2> x;
  bool interior;
};

// Least-squares quadratic over a square stencil centred at x; returns the
// model minimiser clamped to the stencil half-width.
ModelStep quadratic_step(const opt::Objective& f, std::array<double, 2> x, double radius,
                         int grid) {
  const int pts = grid * grid;
  Eigen::MatrixXd a(pts, 6);
  Eigen::VectorXd y(pts);
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const double u = radius * (2.0 * i / (grid - 1) - 1.0);
      const double v = radius * (2.0 * j / (grid - 1) - 1.0);
      const double p[2] = {x[0] + u, x[1] + v};
      const int r = i * grid + j;
      a.row(r) << 1.0, u, v, 0.5 * u * u, u * v, 0.5 * v * v;
      y(r) = f(p);
    }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(y);
  Eigen::Matrix2d hess;
  hess << c(3), c(4), c(4), c(5);
  const Eigen::Vector2d g(c(1), c(2));
  Eigen::Vector2d d = -g.normalized() * radius;
  const Eigen::LLT<Eigen::Matrix2d> llt(hess);
  if (llt.info() == Eigen::Success) d = -llt.solve(g);
  const bool interior = llt.info() == Eigen::Success && d.norm() <= radius;
  if (!interior) d *= radius / d.norm();
  return {{x[0] + d(0), x[1] + d(1)}, interior};
}

}  // namespace

BlochHamiltonian BlochHamiltonian::from_angles(double theta, double phi) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) fail(ErrorKind::kDomain, "theta must lie in [0, pi]");
  BlochHamiltonian h;
  h.theta = theta;
  h.phi = std::fmod(std::fmod(phi, kTwoPi) + kTwoPi, kTwoPi);
  h.n_vec = {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
  return h;
}

BlochHamiltonian BlochHamiltonian::from_vector(const std::array<double, 3>& n) {
  const double norm = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
  if (std::abs(norm - 1.0) > 1e-12) fail(ErrorKind::kDomain, "Bloch vector must have unit norm");
  BlochHamiltonian h;
  h.theta = std::acos(std::clamp(n[2], -1.0, 1.0));
  const double phi = std::atan2(n[1], n[0]);
  h.phi = phi < 0.0 ? phi + kTwoPi : phi;
  h.n_vec = n;
  return h;
}

Mat2 BlochHamiltonian::matrix() const {
  const auto [x, y, z] = n_vec;
  return {cplx{z, 0.0}, cplx{x, -y}, cplx{x, y}, cplx{-z, 0.0}};
}

BlochEigen bloch_eigen(const BlochHamiltonian& h) {
  const double c = std::cos(h.theta / 2.0);
  const double s = std::sin(h.theta / 2.0);
  const cplx e = std::polar(1.0, h.phi);
  return BlochEigen{1.0, -1.0, Statevector(1, {c, s * e}), Statevector(1, {s, -c * e})};
}

double bloch_energy(const Statevector& w, const BlochHamiltonian& h) {
  if (w.n_qubits() != 1) fail(ErrorKind::kDimension, "single-qubit state expected");
  const Mat2 m = h.matrix();
  const cplx a = w[0], b = w[1];
  const cplx v = std::conj(a) * (m[0] * a + m[1] * b) + std::conj(b) * (m[2] * a + m[3] * b);
  return v.real();
}

OverlapPair overlap_identity(const Statevector& w, const BlochHamiltonian& h) {
  w.check_norm();
  const BlochEigen eig = bloch_eigen(h);
  return OverlapPair{0.5 * (1.0 - bloch_energy(w, h)), overlap(eig.minus, w)};
}

Statevector variational_state(double theta1, double theta2) {
  Statevector s(1);
  // gates::rP(a) = exp(-i a P)
  s.apply_single_qubit(0, gates::rx(-theta1));
  s.apply_single_qubit(0, gates::ry(-theta2));
  return s;
}

VqeTrace vqe_run(const BlochHamiltonian& h, const VqeConfig& cfg) {
  if (cfg.shots < 0) fail(ErrorKind::kDomain, "shots must be >= 0");
  if (cfg.max_iterations < 1) fail(ErrorKind::kDomain, "max_iterations must be >= 1");
  if (cfg.refine_rounds < 0 || cfg.refine_grid < 3 || !(cfg.refine_radius > 0.0) ||
      !(cfg.refine_shrink > 0.0 && cfg.refine_shrink <= 1.0))
    fail(ErrorKind::kDomain, "invalid refinement settings");
  cfg.noise.validate();
  std::mt19937_64 rng = est::replica_rng(cfg.seed, 0);
  const std::array<PauliString, 3> axes{PauliString::parse("X"), PauliString::parse("Y"),
                                        PauliString::parse("Z")};
  VqeTrace trace;
  trace.shots_per_estimate = 3 * cfg.shots;

  auto estimate_energy = [&](double t1, double t2) {
    const Statevector psi = variational_state(t1, t2);
    double e = 0.0;
    for (int a = 0; a < 3; ++a) {
      double value;
      if (cfg.shots == 0) {
        value = pauli_expectation(psi, axes[a]).real();
      } else {
        const long k = est::sample_shots(psi, axes[a], cfg.shots, cfg.noise, rng);
        value = est::estimate(k, cfg.shots, cfg.noise).h_hat;
      }
      e += h.n_vec[a] * value;
    }
    trace.shots_consumed += trace.shots_per_estimate;
    return e;
  };

  opt::Objective cost = [&](std::span<const double> x) {
    const double e = estimate_energy(x[0], x[1]);
    trace.steps.push_back({static_cast<long>(trace.steps.size()), e});
    return e;
  };

  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  const double start[2] = {angle(rng), angle(rng)};
  opt::OptimizerConfig oc;
  oc.method = opt::Method::kNelderMead;
  oc.max_iterations = cfg.max_iterations;
  oc.tol = cfg.tol;
  oc.simplex_step = cfg.simplex_step;
  const opt::MinimizeResult r = opt::minimize_from(cost, start, oc);
  std::array<double, 2> best{r.x[0], r.x[1]};
  double radius = cfg.refine_radius;
  const int rounds = cfg.shots == 0 ? 0 : cfg.refine_rounds;
  for (int k = 0, moves = 0; k < rounds && moves < 4 * rounds; ++moves) {
    const ModelStep step = quadratic_step(cost, best, radius, cfg.refine_grid);
    best = step.x;
    if (step.interior) {
      ++k;
      radius *= cfg.refine_shrink;
    }
  }
  trace.params = best;
  trace.final_energy = estimate_energy(best[0], best[1]);
  trace.final_error = std::abs(trace.final_energy + 1.0);
  return trace;
}

Qubit2x2Density::Qubit2x2Density(const Mat2& entries) : rho_(entries) {
  if (std::abs(rho_[1] - std::conj(rho_[2])) > 1e-12 || std::abs(rho_[0].imag()) > 1e-12 ||
      std::abs(rho_[3].imag()) > 1e-12)
    fail(ErrorKind::kInvalidState, "density matrix is not Hermitian");
  if (std::abs((rho_[0] + rho_[3]).real() - 1.0) > 1e-12)
    fail(ErrorKind::kInvalidState, "density matrix trace differs from 1");
  const DensityInvariants inv = density_invariants(rho_);
  if (inv.lambda_minus < -1e-10) fail(ErrorKind::kInvalidState, "density matrix has a negative eigenvalue");
}

Qubit2x2Density Qubit2x2Density::from_bloch(const std::array<double, 3>& r) {
  const auto [x, y, z] = r;
  return Qubit2x2Density(
      Mat2{cplx{0.5 * (1.0 + z), 0.0}, cplx{0.5 * x, -0.5 * y}, cplx{0.5 * x, 0.5 * y},
           cplx{0.5 * (1.0 - z), 0.0}});
}

DensityInvariants density_invariants(const Mat2& rho) {
  DensityInvariants inv;
  inv.trace = (rho[0] + rho[3]).real();
  const Mat2 sq = mul(rho, rho);
  const double tr_sq = (sq[0] + sq[3]).real();
  inv.det = 0.5 * (inv.trace * inv.trace - tr_sq);
  double disc = inv.trace * inv.trace - 4.0 * inv.det;
  if (disc < -1e-10) fail(ErrorKind::kInvalidState, "negative eigenvalue discriminant");
  disc = std::sqrt(std::max(0.0, disc));
  inv.lambda_plus = 0.5 * (inv.trace + disc);
  inv.lambda_minus = 0.5 * (inv.trace - disc);
  for (double l : {inv.lambda_plus, inv.lambda_minus})
    if (l > 0.0) inv.entropy -= l * std::log(l);
  return inv;
}

DensityInvariants density_invariants(const Qubit2x2Density& rho) {
  return density_invariants(rho.entries());
}

}  // namespace ionqaoa::q1
