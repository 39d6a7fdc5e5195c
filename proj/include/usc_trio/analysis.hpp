#pragma once

#include <array>
#include <string_view>

#include "usc_trio/types.hpp"

namespace usc_trio {

enum class Mode { a = 0, b = 1, c = 2 };
enum class ModePair { ab = 0, ac = 1, bc = 2 };

std::array<int, 2> modes_of(ModePair pair);
ModePair pair_of(int k, int l);
std::string_view name(ModePair pair);
std::string_view name(Mode mode);

/// <N_j> = (sigma_{2j-1,2j-1} - 1) / 2. Values in [-1e-6, 0) are clamped to 0;
/// anything lower throws NonPhysicalError.
Vec3 mean_excitations(const Mat6c& sigma);

/// 4x4 covariance of the two listed modes (ladder ordering preserved).
Mat4c reduce_two_mode(const Mat6c& sigma, ModePair pair);

/// Symplectic eigenvalues (descending) of a Hermitian ladder-basis covariance
/// of even dimension, from the spectrum of Z sigma with Z = diag(1, -1, ...).
/// Throws std::invalid_argument for non-Hermitian input.
Eigen::VectorXd symplectic_spectrum(const Eigen::MatrixXcd& sigma);

/// Partial transpose of mode k in the ladder basis: swap its a/a+ rows and
/// columns.
Eigen::MatrixXcd partial_transpose(const Eigen::MatrixXcd& sigma, int mode);

struct PairNegativity {
  double E = 0.0;
  double nu_min = 1.0;
};

/// Two-mode logarithmic negativity. The seralian
/// Delta = det sigma_k + det sigma_l - 2 det sigma_kl screens for
/// non-physical reduced states; nu_min is the smallest symplectic eigenvalue
/// of the partially transposed reduced covariance.
PairNegativity log_negativity_pair(const Mat6c& sigma, ModePair pair);

/// One-vs-two negativity E_{k|lm} from the full partially transposed matrix.
double log_negativity_one_vs_two(const Mat6c& sigma, Mode mode);

struct ExcitationReport {
  Vec3 N = Vec3::Zero();
  Vec3 Nbi = Vec3::Zero();    // N_{a|b}, N_{a|c}, N_{b|c}
  Vec3 Ntri = Vec3::Zero();   // N_{a|bc}, N_{b|ac}, N_{c|ab}
  Vec3 delta = Vec3::Zero();  // delta^a_{bc}, delta^b_{ac}, delta^c_{ab}
};

ExcitationReport excitation_measures(const Vec3& N);

struct PolygamyCheck {
  bool holds = true;
  Vec3 residuals = Vec3::Zero();
};

PolygamyCheck polygamy_check(const ExcitationReport& report, double tol = 1e-9);

struct EntanglementReport {
  Vec3 E = Vec3::Zero();          // E_ab, E_ac, E_bc
  Vec3 nu_tilde = Vec3::Ones();   // minimal PT symplectic eigenvalue per pair
  Vec3 E_one_two = Vec3::Zero();  // E_{a|bc}, E_{b|ac}, E_{c|ab}
  Vec3 monogamy_residual = Vec3::Zero();
};

EntanglementReport entanglement_report(const Mat6c& sigma);

}  // namespace usc_trio
