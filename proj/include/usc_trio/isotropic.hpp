#pragma once

#include <array>

#include "usc_trio/model.hpp"
#include "usc_trio/types.hpp"

namespace usc_trio {

/// Fully resonant, uniformly coupled trio: omega_j = omega_r, J_jk = J.
struct IsotropicParams {
  double omega_r = 1.0;
  double J = 0.0;
  double gamma = 100.0;

  /// Throws DomainError unless omega_r > 0, -omega_r^2/2 < J < omega_r^2 and
  /// gamma > 0.
  void validate() const;
  SystemParams to_system() const;
};

struct IsoFrequencies {
  double Omega1 = 0.0;  // sqrt(omega_r^2 + 2J), non-degenerate
  double Omega2 = 0.0;  // sqrt(omega_r^2 - J), doubly degenerate
};

IsoFrequencies iso_frequencies(const IsotropicParams& p);

/// Per-mode weights multiplying cosh^2(s_i) sinh^2(s_i) [1 - kernel_i(t)] for
/// the non-degenerate (i = 1) and degenerate (i = 2) normal frequency.
struct IsoWeights {
  std::array<double, 3> w1;
  std::array<double, 3> w2;
};

/// Weights as printed alongside the closed forms (24/50, 76/50; 1/50, 99/50;
/// 3/2, 1/2).
IsoWeights printed_iso_weights();

/// Weights reproduced by the covariance pipeline and the Fock oracle: the
/// trio is permutation symmetric, so every mode carries 2/3 and 4/3.
IsoWeights symmetric_iso_weights();

/// <N_j>(t) from the closed form, with s_i = 1/2 ln(Omega_i / omega_r).
Vec3 iso_excitations(const IsotropicParams& p, double t, const IsoWeights& weights);
Vec3 iso_excitations(const IsotropicParams& p, double t);

/// Printed steady values (Gamma-independent rational functions of J).
Vec3 iso_steady(const IsotropicParams& p);

/// Steady value shared by all three modes, J^2 / (4 (w^2 + 2J)(w^2 - J)).
double iso_steady_symmetric(const IsotropicParams& p);

/// max_i 1 / (Gamma (1 - cos(2 Omega_i / Gamma))); +inf when a component is
/// never damped (2 Omega_i / Gamma a multiple of 2 pi).
double iso_t_steady(const IsotropicParams& p);

}  // namespace usc_trio
