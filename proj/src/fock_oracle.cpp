#include "usc_trio/fock_oracle.hpp"

#include <array>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "usc_trio/milburn.hpp"

namespace usc_trio {

namespace {

using Occupation = std::array<int, 3>;

Occupation unpack(Eigen::Index s, int d) {
  const int i = static_cast<int>(s);
  return {i / (d * d), (i / d) % d, i % d};
}

Eigen::Index pack(const Occupation& n, int d) { return (n[0] * d + n[1]) * d + n[2]; }

// One ladder step on mode j: raise (+1) or lower (-1). Returns false if the
// result leaves the truncated space.
bool ladder(Occupation& n, double& coef, int j, int step, int d) {
  if (step > 0) {
    if (n[j] + 1 >= d) return false;
    coef *= std::sqrt(static_cast<double>(n[j] + 1));
    n[j] += 1;
  } else {
    if (n[j] == 0) return false;
    coef *= std::sqrt(static_cast<double>(n[j]));
    n[j] -= 1;
  }
  return true;
}

// tr(rho X) where X is a product of ladder steps applied right to left.
template <std::size_t N>
cplx expectation(const Eigen::MatrixXcd& rho, int d,
                 const std::array<std::pair<int, int>, N>& steps) {
  cplx sum = 0.0;
  for (Eigen::Index s = 0; s < rho.rows(); ++s) {
    Occupation n = unpack(s, d);
    double coef = 1.0;
    bool alive = true;
    for (std::size_t q = N; q-- > 0 && alive;) alive = ladder(n, coef, steps[q].first, steps[q].second, d);
    if (!alive) continue;
    // X|s> = coef |s'>, so tr(rho X) picks rho(s, s').
    sum += coef * rho(s, pack(n, d));
  }
  return sum;
}

}  // namespace

void FockConfig::validate() const {
  if (cutoff < 2) throw DomainError("Fock cutoff must be at least 2");
  if (static_cast<long>(cutoff) * cutoff * cutoff > 4096) {
    throw DomainError("Fock dimension cutoff^3 exceeds 4096");
  }
  if (!(k_tail_epsilon > 0.0 && k_tail_epsilon < 1.0) ||
      !(convergence_tol > 0.0 && convergence_tol < 1.0)) {
    throw DomainError("Fock tolerances must lie in (0, 1)");
  }
}

Eigen::MatrixXd build_hamiltonian(const SystemParams& params, const FockConfig& cfg) {
  cfg.validate();
  const int d = cfg.cutoff;
  const Eigen::Index dim = cfg.dimension();
  const Vec3 w = params.omegas();
  const Vec3 g = coupling_strengths(params);
  constexpr std::array<std::array<int, 2>, 3> kPairs{{{0, 1}, {0, 2}, {1, 2}}};

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index s = 0; s < dim; ++s) {
    const Occupation n = unpack(s, d);
    for (int j = 0; j < 3; ++j) h(s, s) += w[j] * (n[j] + 0.5);
    for (int p = 0; p < 3; ++p) {
      const auto [j, k] = kPairs[p];
      if (g[p] == 0.0) continue;
      for (int sj : {1, -1}) {
        for (int sk : {1, -1}) {
          Occupation m = n;
          double coef = g[p];
          if (!ladder(m, coef, k, sk, d) || !ladder(m, coef, j, sj, d)) continue;
          h(pack(m, d), s) += coef;
        }
      }
    }
  }
  return h;
}

FockEvolver::FockEvolver(const Eigen::MatrixXd& hamiltonian, const FockConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  if (hamiltonian.rows() != cfg_.dimension() || hamiltonian.cols() != cfg_.dimension()) {
    throw DomainError("Hamiltonian dimension does not match the Fock cutoff");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hamiltonian);
  if (es.info() != Eigen::Success) throw ConvergenceError("Fock Hamiltonian diagonalization failed");
  ground_energy_ = es.eigenvalues().minCoeff();

  // Overlaps with |000> (basis index 0).
  const Eigen::VectorXd c = es.eigenvectors().row(0).transpose();
  const double cutoff_overlap = 1e-13 * c.cwiseAbs().maxCoeff();
  std::vector<Eigen::Index> kept;
  for (Eigen::Index a = 0; a < c.size(); ++a) {
    if (std::abs(c[a]) > cutoff_overlap) kept.push_back(a);
  }
  const auto m = static_cast<Eigen::Index>(kept.size());
  energies_.resize(m);
  overlaps_.resize(m);
  vectors_.resize(hamiltonian.rows(), m);
  for (Eigen::Index i = 0; i < m; ++i) {
    energies_[i] = es.eigenvalues()[kept[i]];
    overlaps_[i] = c[kept[i]];
    vectors_.col(i) = es.eigenvectors().col(kept[i]).cast<cplx>();
  }
}

template <typename Kernel>
Eigen::MatrixXcd FockEvolver::assemble(Kernel&& kernel) const {
  const Eigen::Index m = energies_.size();
  Eigen::MatrixXcd eig(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) {
      eig(a, b) = overlaps_[a] * overlaps_[b] * kernel(energies_[a] - energies_[b]);
    }
  }
  return vectors_ * eig * vectors_.adjoint();
}

Eigen::MatrixXcd FockEvolver::density(double t, double gamma) const {
  if (!(t >= 0.0) || !(gamma > 0.0)) throw DomainError("need t >= 0 and gamma > 0");
  // e^{-ikH/G} rho e^{ikH/G} carries e^{-ik(Ea - Eb)/G} on the (a, b) entry.
  return assemble([&](double de) { return milburn_kernel(-de, t, gamma); });
}

Eigen::MatrixXcd FockEvolver::density_schrodinger(double t) const {
  if (!(t >= 0.0)) throw DomainError("need t >= 0");
  return assemble([&](double de) { return std::polar(1.0, -de * t); });
}

Eigen::MatrixXcd FockEvolver::density_steady(double degeneracy_tol) const {
  return assemble([&](double de) { return cplx(std::abs(de) < degeneracy_tol ? 1.0 : 0.0, 0.0); });
}

Eigen::MatrixXcd FockEvolver::density_series(double t, double gamma) const {
  if (!(t >= 0.0) || !(gamma > 0.0)) throw DomainError("need t >= 0 and gamma > 0");
  const double mean = gamma * t;
  const int K = poisson_truncation(mean, cfg_.k_tail_epsilon);
  const double log_mean = mean > 0.0 ? std::log(mean) : 0.0;
  return assemble([&](double de) {
    cplx sum = 0.0;
    for (int k = 0; k <= K; ++k) {
      const double w =
          mean > 0.0 ? std::exp(-mean + k * log_mean - std::lgamma(k + 1.0)) : (k == 0 ? 1.0 : 0.0);
      sum += w * std::polar(1.0, -k * de / gamma);
    }
    return sum;
  });
}

Eigen::MatrixXcd milburn_density(const SystemParams& params, double t, double gamma,
                                 const FockConfig& cfg) {
  return FockEvolver(build_hamiltonian(params, cfg), cfg).density(t, gamma);
}

cplx moment_creation_annihilation(const Eigen::MatrixXcd& rho, int cutoff, int j, int k) {
  return expectation<2>(rho, cutoff, {{{j, 1}, {k, -1}}});
}

cplx moment_annihilation_pair(const Eigen::MatrixXcd& rho, int cutoff, int j, int k) {
  return expectation<2>(rho, cutoff, {{{j, -1}, {k, -1}}});
}

double moment_number_squared(const Eigen::MatrixXcd& rho, int cutoff, int j) {
  return expectation<4>(rho, cutoff, {{{j, 1}, {j, -1}, {j, 1}, {j, -1}}}).real();
}

Eigen::MatrixXcd partial_trace_to_pair(const Eigen::MatrixXcd& rho, int cutoff, ModePair pair) {
  const int d = cutoff;
  const auto [k, l] = modes_of(pair);
  const int traced = 3 - k - l;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d * d, d * d);
  Occupation bra{}, ket{};
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (int ip = 0; ip < d; ++ip) {
        for (int jp = 0; jp < d; ++jp) {
          cplx sum = 0.0;
          for (int n = 0; n < d; ++n) {
            ket[k] = i;
            ket[l] = j;
            ket[traced] = n;
            bra[k] = ip;
            bra[l] = jp;
            bra[traced] = n;
            sum += rho(pack(ket, d), pack(bra, d));
          }
          out(i * d + j, ip * d + jp) = sum;
        }
      }
    }
  }
  return out;
}

double fock_log_negativity(const Eigen::MatrixXcd& rho_pair, int cutoff) {
  const int d = cutoff;
  Eigen::MatrixXcd pt(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (int ip = 0; ip < d; ++ip) {
        for (int jp = 0; jp < d; ++jp) pt(i * d + j, ip * d + jp) = rho_pair(ip * d + j, i * d + jp);
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (pt + pt.adjoint()), Eigen::EigenvaluesOnly);
  return std::log(es.eigenvalues().cwiseAbs().sum());
}

FockObservables observables(const Eigen::MatrixXcd& rho, const FockConfig& cfg) {
  const int d = cfg.cutoff;
  if (rho.rows() != cfg.dimension() || rho.cols() != cfg.dimension()) {
    throw DomainError("density dimension does not match the Fock cutoff");
  }
  FockObservables out;
  std::array<std::array<cplx, 3>, 3> m1{}, m2{};
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      m1[j][k] = moment_creation_annihilation(rho, d, j, k);
      m2[j][k] = moment_annihilation_pair(rho, d, j, k);
    }
  }
  // sigma_nm = <{A_n, A_m+}> via normal-ordered moments and the exact
  // commutators, so truncation only enters through the moments themselves.
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      const double delta = j == k ? 1.0 : 0.0;
      out.sigma(2 * j, 2 * k) = 2.0 * m1[k][j] + delta;
      out.sigma(2 * j, 2 * k + 1) = 2.0 * m2[j][k];
      out.sigma(2 * j + 1, 2 * k) = 2.0 * std::conj(m2[j][k]);
      out.sigma(2 * j + 1, 2 * k + 1) = 2.0 * m1[j][k] + delta;
    }
    out.N[j] = m1[j][j].real();
  }
  for (ModePair p : {ModePair::ab, ModePair::ac, ModePair::bc}) {
    out.E[static_cast<int>(p)] = std::max(0.0, fock_log_negativity(partial_trace_to_pair(rho, d, p), d));
  }
  return out;
}

FockObservables converged_observables(const SystemParams& params, double t, double gamma,
                                      const FockConfig& cfg) {
  FockConfig bigger = cfg;
  bigger.cutoff = cfg.cutoff + 2;
  const FockObservables base = observables(milburn_density(params, t, gamma, cfg), cfg);
  const FockObservables check = observables(milburn_density(params, t, gamma, bigger), bigger);
  const double drift = std::max((base.N - check.N).cwiseAbs().maxCoeff(),
                                (base.E - check.E).cwiseAbs().maxCoeff());
  if (drift > cfg.convergence_tol) {
    throw ConvergenceError("Fock observables moved by " + std::to_string(drift) +
                           " between cutoff " + std::to_string(cfg.cutoff) + " and " +
                           std::to_string(bigger.cutoff));
  }
  return base;
}

}  // namespace usc_trio
