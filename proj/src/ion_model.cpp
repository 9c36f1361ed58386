#include "ionqaoa/ion_model.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "ionqaoa/csv.hpp"
#include "ionqaoa/error.hpp"

namespace ionqaoa::ion {

namespace {
using cplx = std::complex<double>;
}

IonCouplings build_couplings(int n, double j_max, double alpha,
                             std::vector<double> amplitudes) {
  if (n < 1) fail(ErrorKind::kDomain, "n must be >= 1");
  if (!(j_max > 0.0) || !std::isfinite(j_max)) fail(ErrorKind::kDomain, "J_max must be > 0");
  if (!(alpha >= 0.0 && alpha <= 3.0)) fail(ErrorKind::kDomain, "alpha must lie in [0, 3]");
  if (static_cast<int>(amplitudes.size()) != n)
    fail(ErrorKind::kDimension, "need one amplitude per ion");
  for (double a : amplitudes)
    if (!(a >= -1.0 && a <= 1.0))
      fail(ErrorKind::kDomain, "amplitude A_j outside [-1, 1]");

  IonCouplings c;
  c.n = n;
  c.j_max = j_max;
  c.alpha = alpha;
  c.amplitudes = std::move(amplitudes);
  c.j.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int r = 0; r < n; ++r) {
    for (int k = r + 1; k < n; ++k) {
      const double v = j_max * c.amplitudes[r] * c.amplitudes[k] /
                       std::pow(static_cast<double>(k - r), alpha);
      c.j[static_cast<std::size_t>(r) * n + k] = v;
      c.j[static_cast<std::size_t>(k) * n + r] = v;
    }
  }
  return c;
}

IonCouplings uniform_couplings(int n, double j_max, double alpha) {
  return build_couplings(n, j_max, alpha, std::vector<double>(n, 1.0));
}

DiagonalPhase ising_diagonal(const IonCouplings& c, Basis /*basis*/) {
  const int n = c.n;
  const std::size_t dim = std::size_t{1} << n;
  DiagonalPhase d;
  d.energies.assign(dim, 0.0);
  for (int r = 0; r < n; ++r) {
    for (int k = r + 1; k < n; ++k) {
      const double jv = c.at(r, k);
      if (jv == 0.0) continue;
      const std::uint64_t pair = qubit_mask(n, r) | qubit_mask(n, k);
      for (std::size_t z = 0; z < dim; ++z)
        d.energies[z] += (std::popcount(z & pair) & 1) ? -jv : jv;
    }
  }
  return d;
}

std::array<cplx, 4> heff_matrix(const TwoLevelParams& p) {
  return {cplx{-p.delta, 0.0}, -p.rabi, -std::conj(p.rabi), cplx{0.0, 0.0}};
}

TwoLevelEigen heff_eigen(const TwoLevelParams& p) {
  const double r2 = std::norm(p.rabi);
  const double root = std::sqrt(p.delta * p.delta / 4.0 + r2);
  TwoLevelEigen out;
  out.lambda_plus = -p.delta / 2.0 + root;
  out.lambda_minus = -p.delta / 2.0 - root;

  // |lambda_+-> ~ r|e> + lambda_-+|g>; the equivalent form lambda|e> - r*|g>
  // covers the points where the first one vanishes.
  auto vector_for = [&](double lam, double other, int fallback_slot) {
    std::array<cplx, 2> a{p.rabi, cplx{other, 0.0}};
    std::array<cplx, 2> b{cplx{lam, 0.0}, -std::conj(p.rabi)};
    const double na = std::sqrt(std::norm(a[0]) + std::norm(a[1]));
    const double nb = std::sqrt(std::norm(b[0]) + std::norm(b[1]));
    if (na == 0.0 && nb == 0.0) {
      std::array<cplx, 2> e{};
      e[fallback_slot] = 1.0;
      return e;
    }
    if (na >= nb) return std::array<cplx, 2>{a[0] / na, a[1] / na};
    return std::array<cplx, 2>{b[0] / nb, b[1] / nb};
  };
  // Fully degenerate case (Delta = 0, r = 0): any basis works.
  out.vec_plus = vector_for(out.lambda_plus, out.lambda_minus, 1);
  out.vec_minus = vector_for(out.lambda_minus, out.lambda_plus, 0);
  return out;
}

TrapSpectrum trap_spectrum(const TwoLevelParams& p, const TrapParams& t) {
  if (t.m_max < 2) fail(ErrorKind::kDomain, "m_max must be >= 2");
  if (!(t.nu > 0.0)) fail(ErrorKind::kDomain, "trap frequency must be > 0");
  if (!(t.eta >= 0.0 && t.eta < 1.0)) fail(ErrorKind::kDomain, "eta must lie in [0, 1)");

  const int levels = t.m_max + 1;
  const int dim = 2 * levels;
  // index = 2 m + s, s = 0 for |e>, 1 for |g>
  auto idx = [](int m, int s) { return 2 * m + s; };
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  const auto heff = heff_matrix(p);
  // Im r sigma1 + Re r sigma2 = [[0, Im r - i Re r], [Im r + i Re r, 0]]
  const cplx side_eg{p.rabi.imag(), -p.rabi.real()};
  for (int m = 0; m < levels; ++m) {
    const double osc = t.nu * (m + 0.5);
    for (int s = 0; s < 2; ++s) {
      h(idx(m, s), idx(m, s)) += osc;
      for (int s2 = 0; s2 < 2; ++s2) h(idx(m, s), idx(m, s2)) += heff[2 * s + s2];
    }
    if (m + 1 < levels) {
      // eta (a + a^dag): <m+1| a^dag |m> = sqrt(m+1)
      const double amp = t.eta * std::sqrt(static_cast<double>(m + 1));
      const cplx eg = amp * side_eg;
      const cplx ge = std::conj(eg);
      h(idx(m + 1, 0), idx(m, 1)) += eg;
      h(idx(m, 0), idx(m + 1, 1)) += eg;
      h(idx(m + 1, 1), idx(m, 0)) += ge;
      h(idx(m, 1), idx(m + 1, 0)) += ge;
    }
  }

  TrapSpectrum out;
  out.hermiticity_residual = (h - h.adjoint()).cwiseAbs().maxCoeff();
  out.large_eta_warning = t.eta > 0.3;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success)
    fail(ErrorKind::kConsistency, "trap Hamiltonian diagonalization failed");
  const auto& vals = solver.eigenvalues();
  const auto& vecs = solver.eigenvectors();
  for (int i = 0; i < dim; ++i) {
    TrapLevel level;
    level.energy = vals(i);
    int best = 0;
    double best_pop = -1.0;
    for (int j = 0; j < dim; ++j) {
      const double pop = std::norm(vecs(j, i));
      if (pop > best_pop) {
        best_pop = pop;
        best = j;
      }
    }
    level.phonons = best / 2;
    level.excited = (best % 2) == 0;
    level.top_fock_population =
        std::norm(vecs(idx(t.m_max, 0), i)) + std::norm(vecs(idx(t.m_max, 1), i));
    if (level.phonons < t.m_max && level.top_fock_population > 1e-3)
      out.truncation_warning = true;
    out.levels.push_back(level);
  }
  return out;
}

std::string couplings_csv(const IonCouplings& c) {
  std::ostringstream os;
  for (int k = 0; k < c.n; ++k) os << (k ? "," : "") << "J" << (k + 1);
  os << "\n";
  for (int r = 0; r < c.n; ++r) {
    for (int k = 0; k < c.n; ++k) os << (k ? "," : "") << csv::format_real(c.at(r, k));
    os << "\n";
  }
  return os.str();
}

}  // namespace ionqaoa::ion
