#pragma once

#include <limits>

#include "usc_trio/model.hpp"
#include "usc_trio/symplectic.hpp"
#include "usc_trio/types.hpp"

namespace usc_trio {

/// Precomputed factorization H(k) = A D(k) A^-1 of the Milburn kick operator.
/// sigma(t) = A (M o K(t)) A^+ with M = A^-1 (A^-1)^+ and an element-wise
/// Poisson kernel K, so each time point costs two 6x6 products.
struct MilburnPropagator {
  SystemParams params;
  NormalModeData modes;
  SymplecticMatrix A;
  SymplecticMatrix A_inv;
  Mat6c M;
  Vec6 lambda;
};

/// Ladder-basis covariance sigma_nm = <{A_n, A_m^+}>; vacuum is the identity.
/// gamma is +inf for Schrodinger evolution.
struct CovarianceMatrix {
  Mat6c entries = Mat6c::Identity();
  double t = 0.0;
  double gamma = std::numeric_limits<double>::infinity();
};

MilburnPropagator build_propagator(const SystemParams& params);

/// Exact Milburn covariance at time t (t >= 0, gamma > 0).
CovarianceMatrix covariance(const MilburnPropagator& prop, double t, double gamma);

/// gamma -> infinity: unitary evolution, no damping.
CovarianceMatrix covariance_schrodinger(const MilburnPropagator& prop, double t);

/// t -> infinity: keeps only kernel entries that never decay, i.e. pairs with
/// 1 - cos((lambda_n - lambda_m) / gamma) = 0 (within 1e-14).
CovarianceMatrix covariance_steady(const MilburnPropagator& prop, double gamma);

/// Smallest K with Poisson(mean) tail mass beyond K below epsilon. Weights are
/// evaluated in log space and the tail is summed explicitly.
int poisson_truncation(double mean, double epsilon);

/// Direct truncated Poisson sum over kicks, forming H(k) per term. Cross-check
/// for `covariance` only.
CovarianceMatrix covariance_series_oracle(const MilburnPropagator& prop, double t, double gamma,
                                          double epsilon);

/// The Poisson-resummed kernel exp(gamma t (exp(i dl / gamma) - 1)).
cplx milburn_kernel(double delta_lambda, double t, double gamma);

}  // namespace usc_trio
