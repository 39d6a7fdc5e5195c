#include "usc_trio/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace usc_trio {

namespace {

constexpr double kDegeneracyTol = 1e-12;

// Cyclic Jacobi for a real symmetric 3x3 matrix. Eigenvalues are returned
// unsorted, eigenvectors as columns.
void jacobi_eigen3(Mat3 a, Vec3& values, Mat3& vectors) {
  vectors.setIdentity();
  constexpr std::array<std::array<int, 2>, 3> kPlanes{{{0, 1}, {0, 2}, {1, 2}}};
  for (int sweep = 0; sweep < 64; ++sweep) {
    const double off = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
    if (off == 0.0 || std::sqrt(off) < 1e-18 * a.norm()) break;
    for (const auto& [p, q] : kPlanes) {
      if (a(p, q) == 0.0) continue;
      const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
      const double t = std::copysign(1.0, theta) /
                       (std::abs(theta) + std::sqrt(theta * theta + 1.0));
      const double c = 1.0 / std::sqrt(t * t + 1.0);
      const double s = t * c;
      Mat3 rot = Mat3::Identity();
      rot(p, p) = c;
      rot(q, q) = c;
      rot(p, q) = s;
      rot(q, p) = -s;
      a = rot.transpose() * a * rot;
      a(p, q) = a(q, p) = 0.0;
      vectors = vectors * rot;
    }
  }
  values = a.diagonal();
}

// prod_{i<j} (lambda_i - lambda_j)^2 of a symmetric matrix B, computed as the
// Gram determinant of {vec I, vec B, vec B^2} expanded by Cauchy-Binet into a
// sum of squared 3x3 minors. Non-negative by construction and free of the
// cancellation that p^3 - q^2 suffers near repeated roots.
double vandermonde_discriminant(const Mat3& b) {
  const Mat3 b2 = b * b;
  std::array<std::array<double, 3>, 9> rows{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      rows[3 * i + j] = {i == j ? 1.0 : 0.0, b(i, j), b2(i, j)};
    }
  }
  double sum = 0.0;
  for (int i = 0; i < 9; ++i) {
    for (int j = i + 1; j < 9; ++j) {
      for (int k = j + 1; k < 9; ++k) {
        const auto& x = rows[i];
        const auto& y = rows[j];
        const auto& z = rows[k];
        const double minor = x[0] * (y[1] * z[2] - y[2] * z[1]) -
                             x[1] * (y[0] * z[2] - y[2] * z[0]) +
                             x[2] * (y[0] * z[1] - y[1] * z[0]);
        sum += minor * minor;
      }
    }
  }
  return sum;
}

Mat3 rot_z(double a) {
  Mat3 r;
  r << std::cos(a), -std::sin(a), 0.0,  //
      std::sin(a), std::cos(a), 0.0,    //
      0.0, 0.0, 1.0;
  return r;
}

Mat3 rot_y(double b) {
  Mat3 r;
  r << std::cos(b), 0.0, std::sin(b),  //
      0.0, 1.0, 0.0,                   //
      -std::sin(b), 0.0, std::cos(b);
  return r;
}

// Orders eigenvector columns to the given normal-frequency labels and fixes
// the gauge (sign, degenerate subspace basis) deterministically.
Mat3 labeled_mode_matrix(const Mat3& potential, const Vec3& Omega,
                         bool& degenerate) {
  Vec3 values;
  Mat3 vectors;
  jacobi_eigen3(potential, values, vectors);

  std::array<int, 3> by_value{0, 1, 2};
  std::array<int, 3> by_label{0, 1, 2};
  std::stable_sort(by_value.begin(), by_value.end(),
                   [&](int i, int j) { return values[i] > values[j]; });
  std::stable_sort(by_label.begin(), by_label.end(),
                   [&](int i, int j) { return Omega[i] > Omega[j]; });

  Mat3 mode = Mat3::Zero();
  for (int k = 0; k < 3; ++k) mode.col(by_label[k]) = vectors.col(by_value[k]);

  // Group labels whose frequencies coincide; by_label is sorted so groups are
  // contiguous runs.
  const double scale = std::max(1.0, Omega.maxCoeff());
  degenerate = false;
  int start = 0;
  while (start < 3) {
    int end = start + 1;
    while (end < 3 && Omega[by_label[end - 1]] - Omega[by_label[end]] <=
                          kDegeneracyTol * scale) {
      ++end;
    }
    std::array<int, 3> cols{};
    const int size = end - start;
    for (int k = 0; k < size; ++k) cols[k] = by_label[start + k];
    std::sort(cols.begin(), cols.begin() + size);

    if (size == 1) {
      auto col = mode.col(cols[0]);
      Eigen::Index pivot = 0;
      col.cwiseAbs().maxCoeff(&pivot);
      if (col[pivot] < 0.0) col = -col;
    } else {
      degenerate = true;
      Mat3 projector = Mat3::Zero();
      for (int k = 0; k < size; ++k) {
        projector += mode.col(cols[k]) * mode.col(cols[k]).transpose();
      }
      std::array<int, 3> pivots{0, 1, 2};
      std::stable_sort(pivots.begin(), pivots.end(), [&](int i, int j) {
        return projector(i, i) > projector(j, j);
      });
      std::array<Vec3, 3> basis;
      int found = 0;
      for (int pivot : pivots) {
        if (found == size) break;
        Vec3 w = projector.col(pivot);
        for (int k = 0; k < found; ++k) w -= basis[k].dot(w) * basis[k];
        const double n = w.norm();
        if (n > 1e-8) basis[found++] = w / n;
      }
      for (int k = 0; k < size; ++k) mode.col(cols[k]) = basis[k];
    }
    start = end;
  }

  if (mode.determinant() < 0.0) mode.col(2) = -mode.col(2);
  return mode;
}

}  // namespace

Mat3 SystemParams::potential() const {
  Mat3 v;
  v << omega1 * omega1, J12, J13,  //
      J12, omega2 * omega2, J23,   //
      J13, J23, omega3 * omega3;
  return v;
}

void SystemParams::validate() const {
  auto fail = [](const std::string& what) { throw DomainError(what); };
  for (double w : {omega1, omega2, omega3}) {
    if (!(w > 0.0) || !std::isfinite(w)) fail("frequencies must be positive and finite");
  }
  for (double j : {J12, J13, J23}) {
    if (!std::isfinite(j)) fail("couplings must be finite");
  }
  if (!schrodinger_limit && !(gamma > 0.0)) {
    fail("gamma must be positive unless the Schrodinger limit is requested");
  }
  if (!validate_bound_state(*this)) {
    std::ostringstream msg;
    msg << "parameters outside the bound-state manifold (potential not positive definite):"
        << " omega=(" << omega1 << "," << omega2 << "," << omega3 << ") J=(" << J12 << ","
        << J13 << "," << J23 << ")";
    fail(msg.str());
  }
}

bool validate_bound_state(const SystemParams& params) {
  const Mat3 v = params.potential();
  const double m1 = v(0, 0);
  const double m2 = v(0, 0) * v(1, 1) - v(0, 1) * v(0, 1);
  const double m3 = v.determinant();
  return m1 > 0.0 && m2 > 0.0 && m3 > 0.0;
}

Vec3 normal_frequencies(const SystemParams& params) {
  const Mat3 v = params.potential();
  if (!v.allFinite()) throw DomainError("non-finite potential matrix");

  const double varpi = v.trace();
  const Mat3 b = v - (varpi / 3.0) * Mat3::Identity();
  // p = varpi^2 - 3 c1 and q = -27/2 c0 + varpi^3 - 9/2 c1 varpi, rewritten on
  // the trace-free part so that both are accurate when the roots cluster.
  const double p = 1.5 * b.squaredNorm();
  const double q = 13.5 * b.determinant();
  const double disc = 6.75 * vandermonde_discriminant(b);  // = p^3 - q^2

  const double naive = p * p * p - q * q;
  const double scale = std::max({p * p * p, q * q, 1e-300});
  if (!std::isfinite(naive) || naive < -1e-8 * scale) {
    throw DomainError("characteristic cubic has complex roots (p^3 - q^2 < 0)");
  }

  const double phi = std::atan2(std::sqrt(disc), q) / 3.0;
  const double amp = 2.0 * std::sqrt(p);
  constexpr double third = 2.0 * std::numbers::pi / 3.0;
  const Vec3 squares{(varpi + amp * std::cos(phi)) / 3.0,
                     (varpi + amp * std::cos(phi + third)) / 3.0,
                     (varpi + amp * std::cos(phi - third)) / 3.0};
  if (!(squares.minCoeff() > 0.0)) {
    throw DomainError("non-positive normal frequency squared; parameters are unbound");
  }
  return squares.cwiseSqrt();
}

Mat3 zyz_rotation(const EulerAngles& angles) {
  return rot_z(angles.alpha) * rot_y(angles.beta) * rot_z(angles.gamma);
}

EulerResult euler_angles(const SystemParams& params, const Vec3& Omega) {
  EulerResult out;
  out.mode_matrix = labeled_mode_matrix(params.potential(), Omega, out.degenerate);

  // The ladder-basis factor order S12(gamma) S13(beta) S12(alpha) represents
  // the transpose of the mode matrix, so the z-y-z split is taken on R^t.
  const Mat3 q = out.mode_matrix.transpose();
  const double sin_beta = std::hypot(q(0, 2), q(1, 2));
  EulerAngles& e = out.angles;
  e.beta = std::atan2(sin_beta, q(2, 2));
  if (sin_beta > 1e-12) {
    e.alpha = std::atan2(q(1, 2), q(0, 2));
    const Mat3 rest = rot_y(e.beta).transpose() * rot_z(e.alpha).transpose() * q;
    e.gamma = std::atan2(rest(1, 0), rest(0, 0));
  } else {
    e.gamma = 0.0;
    const Mat3 rest = q * rot_y(e.beta).transpose();
    e.alpha = std::atan2(rest(1, 0), rest(0, 0));
  }
  return out;
}

Vec3 squeeze_parameters(const SystemParams& params, const Vec3& Omega) {
  return 0.5 * (Omega.array() / params.omegas().array()).log().matrix();
}

Vec3 coupling_strengths(const SystemParams& params) {
  auto g = [](double j, double wa, double wb) { return j / (2.0 * std::sqrt(wa * wb)); };
  return {g(params.J12, params.omega1, params.omega2),
          g(params.J13, params.omega1, params.omega3),
          g(params.J23, params.omega2, params.omega3)};
}

QuadratureCoefficients quadrature_coefficients(const SystemParams& params,
                                               const Vec3& Omega) {
  const Vec3 w = params.omegas();
  QuadratureCoefficients out;
  for (int j = 0; j < 3; ++j) {
    const double ratio = Omega[j] * Omega[j] / w[j];
    out.omega_tilde[j] = 0.5 * (ratio + w[j]);
    out.g_frak[j] = 0.25 * (ratio - w[j]);
  }
  return out;
}

DoubleAngleCosines closed_form_double_angle_cosines(const SystemParams& params,
                                                    const Vec3& Omega) {
  constexpr double kMinDen = 1e-8;
  const double w1 = params.omega1 * params.omega1;
  const double w2 = params.omega2 * params.omega2;
  const double w3 = params.omega3 * params.omega3;
  const double l1 = Omega[0] * Omega[0];
  const double l2 = Omega[1] * Omega[1];
  const double l3 = Omega[2] * Omega[2];
  // Characteristic polynomials of the 2x2 principal blocks.
  auto f12 = [&](double l) { return l * l - (w1 + w2) * l + w1 * w2 - params.J12 * params.J12; };
  auto f13 = [&](double l) { return l * l - (w1 + w3) * l + w1 * w3 - params.J13 * params.J13; };
  auto f23 = [&](double l) { return l * l - (w2 + w3) * l + w2 * w3 - params.J23 * params.J23; };
  auto ok = [](double d) { return std::abs(d) > kMinDen; };

  DoubleAngleCosines out;
  {
    const double d1 = f12(l1);
    const double d2 = l3 - l2;
    if (ok(d1) && ok(d2)) {
      const double inner = f12(l2) * ((l1 - l3) / d2) / d1 + 1.0;
      if (ok(inner)) out.cos2alpha = 2.0 / inner - 1.0;
    }
  }
  {
    const double d = (l3 - l1) * (l3 - l2);
    if (ok(d)) out.cos2beta = 2.0 * f12(l3) / d - 1.0;
  }
  {
    const double d = f23(l3);
    if (ok(d)) {
      const double inner = f13(l3) / d + 1.0;
      if (ok(inner)) out.cos2gamma = 2.0 / inner - 1.0;
    }
  }
  return out;
}

NormalModeData diagonalize(const SystemParams& params) {
  params.validate();
  NormalModeData d;
  d.Omega = normal_frequencies(params);
  const EulerResult e = euler_angles(params, d.Omega);
  d.euler = e.angles;
  d.mode_matrix = e.mode_matrix;
  d.degenerate = e.degenerate;
  d.r = squeeze_parameters(params, d.Omega);
  d.g = coupling_strengths(params);
  const QuadratureCoefficients qc = quadrature_coefficients(params, d.Omega);
  d.omega_tilde = qc.omega_tilde;
  d.g_frak = qc.g_frak;
  return d;
}

}  // namespace usc_trio
