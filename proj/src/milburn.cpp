#include "usc_trio/milburn.hpp"

#include <cmath>
#include <vector>

namespace usc_trio {

namespace {

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("time must be finite and non-negative");
}

void require_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw DomainError("gamma must be finite and positive");
  }
}

template <typename Kernel>
Mat6c apply_kernel(const MilburnPropagator& prop, Kernel&& kernel) {
  Mat6c xi;
  for (int n = 0; n < 6; ++n) {
    for (int m = 0; m < 6; ++m) xi(n, m) = prop.M(n, m) * kernel(prop.lambda[n] - prop.lambda[m]);
  }
  return prop.A * xi * prop.A.adjoint();
}

}  // namespace

MilburnPropagator build_propagator(const SystemParams& params) {
  MilburnPropagator p;
  p.params = params;
  p.modes = diagonalize(params);
  p.A = compose_A(p.modes, params);
  p.A_inv = compose_A_inverse(p.modes, params);
  p.M = p.A_inv * p.A_inv.adjoint();
  p.lambda = signed_frequencies(p.modes.Omega);
  return p;
}

cplx milburn_kernel(double delta_lambda, double t, double gamma) {
  const double x = delta_lambda / gamma;
  // gamma t (e^{ix} - 1), with 1 - cos x = 2 sin^2(x/2) to avoid cancellation.
  const double s = std::sin(0.5 * x);
  const double re = -2.0 * gamma * t * s * s;
  const double im = gamma * t * std::sin(x);
  return std::exp(cplx(re, im));
}

CovarianceMatrix covariance(const MilburnPropagator& prop, double t, double gamma) {
  require_time(t);
  require_gamma(gamma);
  CovarianceMatrix c;
  c.t = t;
  c.gamma = gamma;
  c.entries = apply_kernel(prop, [&](double dl) { return milburn_kernel(dl, t, gamma); });
  return c;
}

CovarianceMatrix covariance_schrodinger(const MilburnPropagator& prop, double t) {
  require_time(t);
  CovarianceMatrix c;
  c.t = t;
  c.entries = apply_kernel(prop, [&](double dl) { return std::polar(1.0, dl * t); });
  return c;
}

CovarianceMatrix covariance_steady(const MilburnPropagator& prop, double gamma) {
  require_gamma(gamma);
  CovarianceMatrix c;
  c.t = std::numeric_limits<double>::infinity();
  c.gamma = gamma;
  c.entries = apply_kernel(prop, [&](double dl) {
    const double s = std::sin(0.5 * dl / gamma);
    return cplx(2.0 * s * s < 1e-14 ? 1.0 : 0.0, 0.0);
  });
  return c;
}

int poisson_truncation(double mean, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
  if (!(mean >= 0.0)) throw DomainError("Poisson mean must be non-negative");
  if (mean == 0.0) return 0;
  const int kmax = static_cast<int>(std::ceil(mean + 40.0 * std::sqrt(mean + 1.0) + 60.0));
  std::vector<double> w(kmax + 1);
  const double log_mean = std::log(mean);
  for (int k = 0; k <= kmax; ++k) {
    w[k] = std::exp(-mean + k * log_mean - std::lgamma(k + 1.0));
  }
  // tail[k] = sum_{j > k} w[j], accumulated from the far end.
  double tail = 0.0;
  int best = kmax;
  for (int k = kmax; k >= 0; --k) {
    if (tail < epsilon) best = k;
    else break;
    tail += w[k];
  }
  return best;
}

CovarianceMatrix covariance_series_oracle(const MilburnPropagator& prop, double t, double gamma,
                                          double epsilon) {
  require_time(t);
  require_gamma(gamma);
  const double mean = gamma * t;
  const int K = poisson_truncation(mean, epsilon);
  Mat6c sum = Mat6c::Zero();
  const double log_mean = mean > 0.0 ? std::log(mean) : 0.0;
  for (int k = 0; k <= K; ++k) {
    const double weight =
        mean > 0.0 ? std::exp(-mean + k * log_mean - std::lgamma(k + 1.0)) : (k == 0 ? 1.0 : 0.0);
    const Mat6c h = prop.A * mode_phase_diag(prop.lambda, k / gamma) * prop.A_inv;
    sum += weight * (h * h.adjoint());
  }
  CovarianceMatrix c;
  c.t = t;
  c.gamma = gamma;
  c.entries = sum;
  return c;
}

}  // namespace usc_trio
