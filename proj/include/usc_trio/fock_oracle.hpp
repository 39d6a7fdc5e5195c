#pragma once

#include <vector>

#include "usc_trio/analysis.hpp"
#include "usc_trio/model.hpp"
#include "usc_trio/types.hpp"

namespace usc_trio {

/// Truncated three-mode Fock space |n1 n2 n3>, n_j < cutoff. Basis index is
/// (n1 * d + n2) * d + n3.
struct FockConfig {
  int cutoff = 8;
  double k_tail_epsilon = 1e-12;
  double convergence_tol = 1e-6;

  /// Throws DomainError for cutoff < 2, cutoff^3 > 4096, or epsilons outside (0, 1).
  void validate() const;
  int dimension() const { return cutoff * cutoff * cutoff; }
};

/// H = sum_j omega_j (a_j+ a_j + 1/2) + sum_{j<k} g_jk (a_j+ + a_j)(a_k+ + a_k),
/// real symmetric in the product basis.
Eigen::MatrixXd build_hamiltonian(const SystemParams& params, const FockConfig& cfg);

/// Milburn evolution of |000><000| under a fixed Hamiltonian. H is diagonalized
/// once; every density is assembled in the eigenbasis with the Poisson-resummed
/// kernel and rotated back. Eigenstates with negligible vacuum overlap
/// (|c| <= 1e-13 max|c|) are dropped.
class FockEvolver {
 public:
  FockEvolver(const Eigen::MatrixXd& hamiltonian, const FockConfig& cfg);

  Eigen::MatrixXcd density(double t, double gamma) const;
  Eigen::MatrixXcd density_schrodinger(double t) const;
  /// t -> infinity; coherences survive only between levels closer than
  /// degeneracy_tol. Truncation splits exactly degenerate levels slightly, so
  /// the tolerance must exceed that splitting.
  Eigen::MatrixXcd density_steady(double degeneracy_tol = 1e-6) const;
  /// Literal kick sum truncated at the Poisson tail tolerance of the config.
  Eigen::MatrixXcd density_series(double t, double gamma) const;

  double ground_energy() const { return ground_energy_; }
  const FockConfig& config() const { return cfg_; }
  Eigen::Index retained_states() const { return energies_.size(); }

 private:
  template <typename Kernel>
  Eigen::MatrixXcd assemble(Kernel&& kernel) const;

  FockConfig cfg_;
  double ground_energy_ = 0.0;
  Eigen::VectorXd energies_;
  Eigen::VectorXd overlaps_;
  Eigen::MatrixXcd vectors_;
};

/// Convenience: build H for params and evolve to (t, gamma).
Eigen::MatrixXcd milburn_density(const SystemParams& params, double t, double gamma,
                                 const FockConfig& cfg);

struct FockObservables {
  Vec3 N = Vec3::Zero();
  Mat6c sigma = Mat6c::Identity();
  Vec3 E = Vec3::Zero();  // E_ab, E_ac, E_bc from ln || rho^{T_k} ||_1
};

FockObservables observables(const Eigen::MatrixXcd& rho, const FockConfig& cfg);

/// tr(rho a_j+ a_k) and tr(rho a_j a_k).
cplx moment_creation_annihilation(const Eigen::MatrixXcd& rho, int cutoff, int j, int k);
cplx moment_annihilation_pair(const Eigen::MatrixXcd& rho, int cutoff, int j, int k);

/// tr(rho a_j+ a_j a_j+ a_j).
double moment_number_squared(const Eigen::MatrixXcd& rho, int cutoff, int j);

/// Reduced density matrix of two modes (first listed mode is the slow index).
Eigen::MatrixXcd partial_trace_to_pair(const Eigen::MatrixXcd& rho, int cutoff, ModePair pair);

/// ln || rho^{T_A} ||_1 of a two-mode density (cutoff^2 square), transposing
/// the first mode.
double fock_log_negativity(const Eigen::MatrixXcd& rho_pair, int cutoff);

/// Observables at cfg.cutoff, checked against cutoff + 2. Throws
/// ConvergenceError when any <N_j> or E_kl moves by more than
/// cfg.convergence_tol.
FockObservables converged_observables(const SystemParams& params, double t, double gamma,
                                      const FockConfig& cfg);

}  // namespace usc_trio
