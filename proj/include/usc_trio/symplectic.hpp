#pragma once

#include "usc_trio/model.hpp"
#include "usc_trio/types.hpp"

namespace usc_trio {

/// 6x6 complex matrix acting on the ladder vector
/// (a1, a1+, a2, a2+, a3, a3+) as U A U^-1 = S A.
using SymplecticMatrix = Mat6c;

/// Form J with i J = (+) [[0, 1], [-1, 0]], i.e. [A_n, A_m] = i J_nm.
Mat6c symplectic_form();

/// Residuals of the three structural invariants.
struct SymplecticResiduals {
  double det = 0.0;      // |det S - 1|
  double form = 0.0;     // max |S^t J S - J| / max(1, max|S|^2)
  double reality = 0.0;  // max deviation from the a <-> a+ conjugation pattern
};

SymplecticResiduals symplectic_residuals(const Mat6c& s);
bool is_symplectic(const Mat6c& s, double tol = 1e-10);

/// Euler rotation in the mode-1/mode-2 plane, ratio = sqrt(omega1/omega2).
SymplecticMatrix rotation_12(double z, double ratio);

/// Euler rotation in the mode-1/mode-3 plane, ratio = sqrt(omega3/omega1).
/// Built from its generator K as exp(beta K) = 1 + sin(beta) K +
/// (1 - cos(beta)) K^2, which is exact because K^2 projects to -1 on modes 1, 3.
SymplecticMatrix rotation_13(double beta, double ratio);

/// Generator of rotation_13 (derivative at beta = 0).
Mat6c rotation_13_generator(double ratio);

/// rotation_13 with the stray unit entry at (row 6, column 5) that appears in
/// the printed matrix. Not symplectic; exists as a negative control.
SymplecticMatrix rotation_13_misprinted(double beta, double ratio);

/// Three single-mode squeezers: (+)_j [[cosh r_j, sinh r_j], [sinh r_j, cosh r_j]].
SymplecticMatrix squeeze_123(const Vec3& r);

/// diag(exp(i lambda_n theta)).
SymplecticMatrix mode_phase_diag(const Vec6& lambda, double theta);

/// Ladder-basis image of the point transformation x -> O x, p -> O p for an
/// orthogonal O, with each slot j using its own bare frequency omega_j.
SymplecticMatrix point_rotation(const Mat3& o, const Vec3& omegas);

/// A = S12(gamma) S13(beta) S12(alpha) S123(-r).
SymplecticMatrix compose_A(const NormalModeData& modes, const SystemParams& params);

/// A^-1 = S123(r) S12(-alpha) S13(-beta) S12(-gamma), formed as a product.
SymplecticMatrix compose_A_inverse(const NormalModeData& modes, const SystemParams& params);

/// Signed normal frequencies (-O1, +O1, -O2, +O2, -O3, +O3).
Vec6 signed_frequencies(const Vec3& Omega);

}  // namespace usc_trio
