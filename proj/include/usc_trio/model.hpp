#pragma once

#include <optional>

#include "usc_trio/types.hpp"

namespace usc_trio {

/// Physical parameters of three bilinearly coupled oscillators with unit
/// masses (hbar = 1). Couplings are position-position with units of
/// frequency squared; gamma is the Milburn parameter (1/gamma is the
/// decoherence rate).
struct SystemParams {
  double omega1 = 1.0;
  double omega2 = 1.0;
  double omega3 = 1.0;
  double J12 = 0.0;
  double J13 = 0.0;
  double J23 = 0.0;
  double gamma = 100.0;
  bool schrodinger_limit = false;

  Vec3 omegas() const { return {omega1, omega2, omega3}; }

  /// Potential matrix: bare squared frequencies on the diagonal, couplings
  /// off the diagonal.
  Mat3 potential() const;

  /// Throws DomainError unless frequencies are positive, gamma is positive
  /// (or the Schrodinger limit is requested) and the potential is positive
  /// definite.
  void validate() const;
};

/// Sylvester's criterion on the leading principal minors of the potential.
bool validate_bound_state(const SystemParams& params);

/// Normal frequencies from the trigonometric solution of the characteristic
/// cubic. Labeling: Omega1 comes from cos(Phi), Omega2 from cos(Phi + 2pi/3),
/// Omega3 from cos(Phi - 2pi/3), so Omega1 >= Omega3 >= Omega2.
Vec3 normal_frequencies(const SystemParams& params);

struct EulerAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// R_z(alpha) R_y(beta) R_z(gamma).
Mat3 zyz_rotation(const EulerAngles& angles);

struct EulerResult {
  EulerAngles angles;
  /// Columns are eigenvectors of the potential matrix in the order of
  /// Omega1, Omega2, Omega3; det = +1. Its transpose equals
  /// zyz_rotation(angles).
  Mat3 mode_matrix;
  /// Two or more normal frequencies coincide within 1e-12 (relative); the
  /// degenerate eigenvectors were fixed by a pivoted Gram-Schmidt pass.
  bool degenerate = false;
};

EulerResult euler_angles(const SystemParams& params, const Vec3& Omega);

/// r_j = 1/2 ln(Omega_j / omega_j).
Vec3 squeeze_parameters(const SystemParams& params, const Vec3& Omega);

/// (g12, g13, g23) with g_jk = J_jk / (2 sqrt(omega_j omega_k)).
Vec3 coupling_strengths(const SystemParams& params);

struct QuadratureCoefficients {
  Vec3 omega_tilde;
  Vec3 g_frak;
};

QuadratureCoefficients quadrature_coefficients(const SystemParams& params,
                                               const Vec3& Omega);

/// Closed-form cos(2 alpha), cos(2 beta), cos(2 gamma) in terms of the normal
/// frequencies. An entry is empty when one of its denominators is smaller
/// than 1e-8 in magnitude.
struct DoubleAngleCosines {
  std::optional<double> cos2alpha;
  std::optional<double> cos2beta;
  std::optional<double> cos2gamma;
};

DoubleAngleCosines closed_form_double_angle_cosines(const SystemParams& params,
                                                    const Vec3& Omega);

struct NormalModeData {
  Vec3 Omega;
  EulerAngles euler;
  Mat3 mode_matrix;
  Vec3 r;
  Vec3 g;
  Vec3 omega_tilde;
  Vec3 g_frak;
  bool degenerate = false;
};

/// Full diagonalization. Throws DomainError for parameters outside the
/// bound-state manifold.
NormalModeData diagonalize(const SystemParams& params);

}  // namespace usc_trio
