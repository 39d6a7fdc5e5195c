#include "usc_trio/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

namespace usc_trio {

namespace {

constexpr double kClamp = 1e-9;
// Symplectic eigenvalues within this distance of 1 are round-off, so the
// partial transpose is taken as physical and contributes no negativity.
constexpr double kNuNoise = 1e-12;

double negativity_term(double nu) { return nu < 1.0 - kNuNoise ? -std::log(nu) : 0.0; }

double block_det(const Mat6c& s, int row_mode, int col_mode) {
  return s.block<2, 2>(2 * row_mode, 2 * col_mode).determinant().real();
}

}  // namespace

std::array<int, 2> modes_of(ModePair pair) {
  switch (pair) {
    case ModePair::ab: return {0, 1};
    case ModePair::ac: return {0, 2};
    case ModePair::bc: return {1, 2};
  }
  throw std::invalid_argument("invalid mode pair");
}

ModePair pair_of(int k, int l) {
  if (k > l) std::swap(k, l);
  if (k == 0 && l == 1) return ModePair::ab;
  if (k == 0 && l == 2) return ModePair::ac;
  if (k == 1 && l == 2) return ModePair::bc;
  throw std::invalid_argument("invalid mode pair");
}

std::string_view name(ModePair pair) {
  switch (pair) {
    case ModePair::ab: return "ab";
    case ModePair::ac: return "ac";
    case ModePair::bc: return "bc";
  }
  return "?";
}

std::string_view name(Mode mode) {
  switch (mode) {
    case Mode::a: return "a";
    case Mode::b: return "b";
    case Mode::c: return "c";
  }
  return "?";
}

Vec3 mean_excitations(const Mat6c& sigma) {
  Vec3 n;
  for (int j = 0; j < 3; ++j) {
    const double v = 0.5 * (sigma(2 * j, 2 * j).real() - 1.0);
    if (v < -1e-6) throw NonPhysicalError("negative mean excitation number");
    n[j] = std::max(0.0, v);
  }
  return n;
}

Mat4c reduce_two_mode(const Mat6c& sigma, ModePair pair) {
  const auto [k, l] = modes_of(pair);
  const std::array<int, 4> idx{2 * k, 2 * k + 1, 2 * l, 2 * l + 1};
  Mat4c out;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) out(i, j) = sigma(idx[i], idx[j]);
  }
  return out;
}

Eigen::VectorXd symplectic_spectrum(const Eigen::MatrixXcd& sigma) {
  const Eigen::Index dim = sigma.rows();
  if (dim != sigma.cols() || dim % 2 != 0 || dim == 0) {
    throw std::invalid_argument("covariance must be square with even dimension");
  }
  const double scale = std::max(1.0, max_abs(sigma));
  if (max_abs((sigma - sigma.adjoint()).eval()) > 1e-8 * scale) {
    throw std::invalid_argument("covariance matrix is not Hermitian");
  }
  const Eigen::MatrixXcd herm = 0.5 * (sigma + sigma.adjoint());
  Eigen::VectorXd z(dim);
  for (Eigen::Index i = 0; i < dim; ++i) z[i] = (i % 2 == 0) ? 1.0 : -1.0;

  const Eigen::Index n = dim / 2;
  Eigen::VectorXd nu(n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
  if (es.eigenvalues().minCoeff() > 0.0) {
    // Z sigma is similar to sqrt(sigma) Z sqrt(sigma), which is Hermitian and
    // by Sylvester inertia has exactly n positive eigenvalues +nu.
    const Eigen::MatrixXcd root = es.eigenvectors() *
                                  es.eigenvalues().cwiseSqrt().asDiagonal() *
                                  es.eigenvectors().adjoint();
    const Eigen::MatrixXcd h = root * z.asDiagonal() * root;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> hs(0.5 * (h + h.adjoint()),
                                                       Eigen::EigenvaluesOnly);
    const Eigen::VectorXd ev = hs.eigenvalues();  // ascending
    for (Eigen::Index i = 0; i < n; ++i) nu[i] = ev[dim - 1 - i];
  } else {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ces(z.asDiagonal() * herm, false);
    std::vector<double> mags(dim);
    for (Eigen::Index i = 0; i < dim; ++i) mags[i] = std::abs(ces.eigenvalues()[i]);
    std::sort(mags.begin(), mags.end(), std::greater<>());
    for (Eigen::Index i = 0; i < n; ++i) nu[i] = mags[2 * i];
  }
  return nu;
}

Eigen::MatrixXcd partial_transpose(const Eigen::MatrixXcd& sigma, int mode) {
  Eigen::MatrixXcd out = sigma;
  out.row(2 * mode).swap(out.row(2 * mode + 1));
  out.col(2 * mode).swap(out.col(2 * mode + 1));
  return out;
}

PairNegativity log_negativity_pair(const Mat6c& sigma, ModePair pair) {
  const auto [k, l] = modes_of(pair);
  const double delta = block_det(sigma, k, k) + block_det(sigma, l, l) - 2.0 * block_det(sigma, k, l);
  const double det4 = reduce_two_mode(sigma, pair).determinant().real();
  double inner = delta * delta - 4.0 * det4;
  if (inner < -kClamp) {
    throw NonPhysicalError("two-mode state has negative seralian discriminant");
  }
  // The seralian root loses sqrt(eps) near a double root (product states,
  // nu_- ~ nu_+ ~ 1), so nu_min is read off the Hermitian spectrum instead.
  const Eigen::VectorXd nu = symplectic_spectrum(partial_transpose(reduce_two_mode(sigma, pair), 0));
  if (!(nu[1] > 0.0)) {
    throw NonPhysicalError("non-positive partially transposed symplectic eigenvalue");
  }
  PairNegativity out;
  out.nu_min = nu[1];
  out.E = negativity_term(out.nu_min);
  return out;
}

double log_negativity_one_vs_two(const Mat6c& sigma, Mode mode) {
  const Eigen::VectorXd nu = symplectic_spectrum(partial_transpose(sigma, static_cast<int>(mode)));
  double e = 0.0;
  for (Eigen::Index i = 0; i < nu.size(); ++i) {
    if (!(nu[i] > 0.0)) throw NonPhysicalError("non-positive symplectic eigenvalue");
    e += negativity_term(nu[i]);
  }
  return e;
}

ExcitationReport excitation_measures(const Vec3& N) {
  ExcitationReport r;
  r.N = N;
  r.Nbi[0] = std::sqrt(N[0] * N[1]);
  r.Nbi[1] = std::sqrt(N[0] * N[2]);
  r.Nbi[2] = std::sqrt(N[1] * N[2]);
  r.Ntri[0] = std::sqrt(N[0] * r.Nbi[2]);
  r.Ntri[1] = std::sqrt(N[1] * r.Nbi[1]);
  r.Ntri[2] = std::sqrt(N[2] * r.Nbi[0]);
  r.delta[0] = r.Nbi[0] + r.Nbi[1] - r.Ntri[0];
  r.delta[1] = r.Nbi[0] + r.Nbi[2] - r.Ntri[1];
  r.delta[2] = r.Nbi[1] + r.Nbi[2] - r.Ntri[2];
  return r;
}

PolygamyCheck polygamy_check(const ExcitationReport& report, double tol) {
  PolygamyCheck c;
  c.residuals = report.delta;
  c.holds = report.delta.minCoeff() >= -tol;
  return c;
}

EntanglementReport entanglement_report(const Mat6c& sigma) {
  EntanglementReport r;
  for (ModePair p : {ModePair::ab, ModePair::ac, ModePair::bc}) {
    const PairNegativity pn = log_negativity_pair(sigma, p);
    r.E[static_cast<int>(p)] = pn.E;
    r.nu_tilde[static_cast<int>(p)] = pn.nu_min;
  }
  for (int k = 0; k < 3; ++k) {
    r.E_one_two[k] = log_negativity_one_vs_two(sigma, static_cast<Mode>(k));
    const int l = (k + 1) % 3;
    const int m = (k + 2) % 3;
    r.monogamy_residual[k] = r.E_one_two[k] - r.E[static_cast<int>(pair_of(k, l))] -
                             r.E[static_cast<int>(pair_of(k, m))];
  }
  return r;
}

}  // namespace usc_trio
