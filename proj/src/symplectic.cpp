#include "usc_trio/symplectic.hpp"

#include <algorithm>
#include <cmath>

namespace usc_trio {

namespace {

// Mode-pair rotation shared by S12 and S13. For the (j, k) plane with
// frequency ratio rho = sqrt(omega_j / omega_k):
//   a_j' = cos z a_j + sin z [P a_k + M a_k+]
//   a_k' = cos z a_k - sin z [P a_j - M a_j+]
// with P = (rho + 1/rho)/2, M = (rho - 1/rho)/2, and conjugate rows for a+.
SymplecticMatrix plane_rotation(int j, int k, double z, double rho) {
  const double c = std::cos(z);
  const double s = std::sin(z);
  const double plus = 0.5 * (rho + 1.0 / rho);
  const double minus = 0.5 * (rho - 1.0 / rho);
  SymplecticMatrix m = SymplecticMatrix::Identity();
  const int aj = 2 * j, bj = 2 * j + 1, ak = 2 * k, bk = 2 * k + 1;
  m(aj, aj) = c;
  m(bj, bj) = c;
  m(ak, ak) = c;
  m(bk, bk) = c;
  m(aj, ak) = plus * s;
  m(aj, bk) = minus * s;
  m(bj, ak) = minus * s;
  m(bj, bk) = plus * s;
  m(ak, aj) = -plus * s;
  m(ak, bj) = minus * s;
  m(bk, aj) = minus * s;
  m(bk, bj) = -plus * s;
  return m;
}

}  // namespace

Mat6c symplectic_form() {
  Mat6c j = Mat6c::Zero();
  for (int m = 0; m < 3; ++m) {
    j(2 * m, 2 * m + 1) = cplx(0.0, -1.0);
    j(2 * m + 1, 2 * m) = cplx(0.0, 1.0);
  }
  return j;
}

SymplecticResiduals symplectic_residuals(const Mat6c& s) {
  SymplecticResiduals out;
  out.det = std::abs(s.determinant() - cplx(1.0, 0.0));
  const Mat6c form = symplectic_form();
  const double scale = std::max(1.0, std::pow(max_abs(s), 2));
  out.form = max_abs((s.transpose() * form * s - form).eval()) / scale;
  double reality = 0.0;
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      reality = std::max(reality, std::abs(s(2 * j + 1, 2 * k + 1) - std::conj(s(2 * j, 2 * k))));
      reality = std::max(reality, std::abs(s(2 * j + 1, 2 * k) - std::conj(s(2 * j, 2 * k + 1))));
    }
  }
  out.reality = reality;
  return out;
}

bool is_symplectic(const Mat6c& s, double tol) {
  const SymplecticResiduals r = symplectic_residuals(s);
  return r.det <= tol && r.form <= tol && r.reality <= tol;
}

SymplecticMatrix rotation_12(double z, double ratio) {
  return plane_rotation(0, 1, z, ratio);
}

Mat6c rotation_13_generator(double ratio) {
  const double plus = 0.5 * (ratio + 1.0 / ratio);
  const double minus = 0.5 * (ratio - 1.0 / ratio);
  Mat6c k = Mat6c::Zero();
  k(0, 4) = -plus;
  k(0, 5) = minus;
  k(1, 4) = minus;
  k(1, 5) = -plus;
  k(4, 0) = plus;
  k(4, 1) = minus;
  k(5, 0) = minus;
  k(5, 1) = plus;
  return k;
}

SymplecticMatrix rotation_13(double beta, double ratio) {
  const Mat6c k = rotation_13_generator(ratio);
  return Mat6c::Identity() + std::sin(beta) * k + (1.0 - std::cos(beta)) * (k * k);
}

SymplecticMatrix rotation_13_misprinted(double beta, double ratio) {
  SymplecticMatrix m = rotation_13(beta, ratio);
  m(5, 4) = 1.0;
  return m;
}

SymplecticMatrix squeeze_123(const Vec3& r) {
  SymplecticMatrix m = SymplecticMatrix::Zero();
  for (int j = 0; j < 3; ++j) {
    const double ch = std::cosh(r[j]);
    const double sh = std::sinh(r[j]);
    m(2 * j, 2 * j) = ch;
    m(2 * j, 2 * j + 1) = sh;
    m(2 * j + 1, 2 * j) = sh;
    m(2 * j + 1, 2 * j + 1) = ch;
  }
  return m;
}

SymplecticMatrix mode_phase_diag(const Vec6& lambda, double theta) {
  SymplecticMatrix m = SymplecticMatrix::Zero();
  for (int n = 0; n < 6; ++n) m(n, n) = std::polar(1.0, lambda[n] * theta);
  return m;
}

SymplecticMatrix point_rotation(const Mat3& o, const Vec3& omegas) {
  SymplecticMatrix m = SymplecticMatrix::Zero();
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      const double rho = std::sqrt(omegas[j] / omegas[k]);
      const double plus = 0.5 * (rho + 1.0 / rho);
      const double minus = 0.5 * (rho - 1.0 / rho);
      m(2 * j, 2 * k) = o(j, k) * plus;
      m(2 * j, 2 * k + 1) = o(j, k) * minus;
      m(2 * j + 1, 2 * k) = o(j, k) * minus;
      m(2 * j + 1, 2 * k + 1) = o(j, k) * plus;
    }
  }
  return m;
}

SymplecticMatrix compose_A(const NormalModeData& modes, const SystemParams& params) {
  const double r12 = std::sqrt(params.omega1 / params.omega2);
  const double r13 = std::sqrt(params.omega3 / params.omega1);
  const EulerAngles& e = modes.euler;
  return rotation_12(e.gamma, r12) * rotation_13(e.beta, r13) * rotation_12(e.alpha, r12) *
         squeeze_123(-modes.r);
}

SymplecticMatrix compose_A_inverse(const NormalModeData& modes, const SystemParams& params) {
  const double r12 = std::sqrt(params.omega1 / params.omega2);
  const double r13 = std::sqrt(params.omega3 / params.omega1);
  const EulerAngles& e = modes.euler;
  return squeeze_123(modes.r) * rotation_12(-e.alpha, r12) * rotation_13(-e.beta, r13) *
         rotation_12(-e.gamma, r12);
}

Vec6 signed_frequencies(const Vec3& Omega) {
  Vec6 l;
  l << -Omega[0], Omega[0], -Omega[1], Omega[1], -Omega[2], Omega[2];
  return l;
}

}  // namespace usc_trio
