#include "usc_trio/isotropic.hpp"

#include <cmath>
#include <limits>

namespace usc_trio {

namespace {

double cosh2_sinh2(double s) {
  const double c = std::cosh(s);
  const double h = std::sinh(s);
  return c * c * h * h;
}

// 1 - exp[-Gt (1 - cos(2W/G))] cos(Gt sin(2W/G))
double bracket(double Omega, double t, double gamma) {
  const double x = 2.0 * Omega / gamma;
  const double half = std::sin(0.5 * x);
  return 1.0 - std::exp(-2.0 * gamma * t * half * half) * std::cos(gamma * t * std::sin(x));
}

}  // namespace

void IsotropicParams::validate() const {
  if (!(omega_r > 0.0) || !std::isfinite(omega_r)) throw DomainError("omega_r must be positive");
  const double w2 = omega_r * omega_r;
  if (!(J > -0.5 * w2 && J < w2)) {
    throw DomainError("isotropic coupling outside (-omega_r^2/2, omega_r^2)");
  }
  if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
}

SystemParams IsotropicParams::to_system() const {
  SystemParams s;
  s.omega1 = s.omega2 = s.omega3 = omega_r;
  s.J12 = s.J13 = s.J23 = J;
  s.gamma = gamma;
  return s;
}

IsoFrequencies iso_frequencies(const IsotropicParams& p) {
  p.validate();
  const double w2 = p.omega_r * p.omega_r;
  return {std::sqrt(w2 + 2.0 * p.J), std::sqrt(w2 - p.J)};
}

IsoWeights printed_iso_weights() {
  return {{24.0 / 50.0, 1.0 / 50.0, 1.5}, {76.0 / 50.0, 99.0 / 50.0, 0.5}};
}

IsoWeights symmetric_iso_weights() {
  return {{2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0}, {4.0 / 3.0, 4.0 / 3.0, 4.0 / 3.0}};
}

Vec3 iso_excitations(const IsotropicParams& p, double t, const IsoWeights& weights) {
  const IsoFrequencies f = iso_frequencies(p);
  const double s1 = 0.5 * std::log(f.Omega1 / p.omega_r);
  const double s2 = 0.5 * std::log(f.Omega2 / p.omega_r);
  const double term1 = cosh2_sinh2(s1) * bracket(f.Omega1, t, p.gamma);
  const double term2 = cosh2_sinh2(s2) * bracket(f.Omega2, t, p.gamma);
  Vec3 n;
  for (int j = 0; j < 3; ++j) n[j] = weights.w1[j] * term1 + weights.w2[j] * term2;
  return n;
}

Vec3 iso_excitations(const IsotropicParams& p, double t) {
  return iso_excitations(p, t, printed_iso_weights());
}

Vec3 iso_steady(const IsotropicParams& p) {
  p.validate();
  const double w2 = p.omega_r * p.omega_r;
  const double J = p.J;
  const double common = w2 * (w2 + 2.0 * J) * (w2 - J);
  return {J * J * (43.0 * w2 + 14.0 * J) / (200.0 * common),
          J * J * (103.0 * w2 + 149.0 * J) / (800.0 * common),
          J * J * (13.0 * w2 - 10.0 * J) / (32.0 * common)};
}

double iso_steady_symmetric(const IsotropicParams& p) {
  p.validate();
  const double w2 = p.omega_r * p.omega_r;
  return p.J * p.J / (4.0 * (w2 + 2.0 * p.J) * (w2 - p.J));
}

double iso_t_steady(const IsotropicParams& p) {
  const IsoFrequencies f = iso_frequencies(p);
  double worst = 0.0;
  for (double Omega : {f.Omega1, f.Omega2}) {
    const double half = std::sin(Omega / p.gamma);  // sin(x/2), x = 2 Omega / Gamma
    const double rate = 2.0 * p.gamma * half * half;
    if (!(rate > 1e-300) || rate < 1e-15 * p.gamma) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, 1.0 / rate);
  }
  return worst;
}

}  // namespace usc_trio
