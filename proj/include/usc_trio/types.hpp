#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace usc_trio {

using cplx = std::complex<double>;

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat4c = Eigen::Matrix<cplx, 4, 4>;
using Mat6c = Eigen::Matrix<cplx, 6, 6>;

/// Parameters outside the physical domain (unbound potential, bad frequencies,
/// numerical corruption of the cubic roots).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A covariance matrix (or a quantity derived from one) violates a physical
/// bound by more than float noise.
class NonPhysicalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fock-space observables are not stable under a cutoff increase.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest absolute entry.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

}  // namespace usc_trio
