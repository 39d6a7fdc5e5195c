// Acceptance gate: one pass/fail line per criterion. Criteria known to be
// unattainable are listed in kExpectedFailures; the process exits 0 only when
// the observed failures are exactly that set, so an unexpected pass is also
// reported.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "usc_trio/analysis.hpp"
#include "usc_trio/commands.hpp"
#include "usc_trio/fock_oracle.hpp"
#include "usc_trio/isotropic.hpp"
#include "usc_trio/milburn.hpp"
#include "usc_trio/model.hpp"
#include "usc_trio/run_config.hpp"
#include "usc_trio/symplectic.hpp"
#include "usc_trio/verify.hpp"

using namespace usc_trio;

namespace {

// 4: Milburn states are Poisson mixtures of Gaussians, so Gaussian-formula
//    negativity differs from the exact Fock value by ~1e-3.
// 7: the isotropic trio is permutation symmetric; all steady values coincide.
// 8: the open chain is mirror symmetric about b, which pairs a|b with b|c,
//    not a|c with b|c.
const std::set<int> kExpectedFailures{4, 7, 8};

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> notes;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

SystemParams trio(double j12, double j13, double j23, double gamma) {
  SystemParams p;
  p.J12 = j12;
  p.J13 = j13;
  p.J23 = j23;
  p.gamma = gamma;
  return p;
}

std::string describe(const SystemParams& p) {
  std::ostringstream os;
  os << "omega=(" << p.omega1 << "," << p.omega2 << "," << p.omega3 << ") J=(" << p.J12 << ","
     << p.J13 << "," << p.J23 << ") gamma=" << p.gamma;
  return os.str();
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

double nu_min_full(const Mat6c& sigma) { return symplectic_spectrum(sigma).minCoeff(); }

// Every pipeline state sampled by criteria 3-9 passes through here for the
// polygamy and monogamy checks of criterion 10.
struct StateLog {
  long states = 0;
  double worst_delta = 1e300;
  std::string worst_delta_at;
  double worst_monogamy = 1e300;
  std::string worst_monogamy_at;
  long monogamy_violations = 0;

  void record(const Mat6c& sigma, const SystemParams& p, double t) {
    ++states;
    const ExcitationReport ex = excitation_measures(mean_excitations(sigma));
    const EntanglementReport en = entanglement_report(sigma);
    const std::string where = describe(p) + " t=" + fmt(t);
    if (ex.delta.minCoeff() < worst_delta) {
      worst_delta = ex.delta.minCoeff();
      worst_delta_at = where;
    }
    const double mono = en.monogamy_residual.minCoeff();
    if (mono < -1e-9) ++monogamy_violations;
    if (mono < worst_monogamy) {
      worst_monogamy = mono;
      worst_monogamy_at = where;
    }
  }
};

StateLog g_states;

// Grid states for physicality are shared between criteria 3, 4 and 5.
double g_grid_nu_min = 1e300;
long g_grid_states = 0;

void record_grid(const Mat6c& sigma, const SystemParams& p, double t) {
  g_grid_nu_min = std::min(g_grid_nu_min, nu_min_full(sigma));
  ++g_grid_states;
  g_states.record(sigma, p, t);
}

Outcome criterion_1() {
  std::mt19937_64 rng(101);
  double worst_eig = 0.0;
  double worst_offdiag = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const SystemParams p = sample_bound_state(rng);
    const Mat3 v = p.potential();
    const Vec3 omega = normal_frequencies(p);
    Eigen::SelfAdjointEigenSolver<Mat3> es(v);
    std::array<double, 3> ours{omega[0] * omega[0], omega[1] * omega[1], omega[2] * omega[2]};
    std::sort(ours.begin(), ours.end());
    for (int k = 0; k < 3; ++k) {
      const double ref = es.eigenvalues()[k];
      worst_eig = std::max(worst_eig, std::abs(ours[k] - ref) / std::abs(ref));
    }
    const EulerResult e = euler_angles(p, omega);
    const Mat3 r = zyz_rotation(e.angles).transpose();
    Mat3 d = r.transpose() * v * r;
    const double scale = std::max(1.0, v.cwiseAbs().maxCoeff());
    d.diagonal().setZero();
    worst_offdiag = std::max(worst_offdiag, d.cwiseAbs().maxCoeff() / scale);
  }
  Outcome o;
  o.pass = worst_eig <= 1e-10 && worst_offdiag <= 1e-10;
  o.summary = "1000 sets: eigenvalue rel " + fmt(worst_eig) + ", off-diagonal " + fmt(worst_offdiag) +
              " (tol 1e-10)";
  return o;
}

Outcome criterion_2() {
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  std::uniform_real_distribution<double> ratio(0.3, 3.0);
  std::uniform_real_distribution<double> squeeze(-1.5, 1.5);
  std::uniform_real_distribution<double> freq(0.1, 3.0);
  double worst = 0.0;
  std::string worst_name;
  auto check = [&](const Mat6c& s, const char* what) {
    const SymplecticResiduals r = symplectic_residuals(s);
    const double m = std::max(r.det, r.form);
    if (m > worst) {
      worst = m;
      worst_name = what;
    }
  };
  for (int i = 0; i < 1000; ++i) {
    const SystemParams p = sample_bound_state(rng);
    const NormalModeData modes = diagonalize(p);
    check(rotation_12(angle(rng), ratio(rng)), "S12");
    check(rotation_13(angle(rng), ratio(rng)), "S13");
    check(squeeze_123(Vec3(squeeze(rng), squeeze(rng), squeeze(rng))), "S123");
    check(mode_phase_diag(signed_frequencies(Vec3(freq(rng), freq(rng), freq(rng))), 10.0 * angle(rng)),
          "phase");
    check(compose_A(modes, p), "A");
    check(compose_A_inverse(modes, p), "A^-1");
  }
  Outcome o;
  o.pass = worst <= 1e-10;
  o.summary = "1000 inputs x 6 constructions: max(det, form) residual " + fmt(worst) + " (" + worst_name +
              ", tol 1e-10)";
  return o;
}

Outcome criterion_3() {
  double worst = 0.0;
  std::string worst_at;
  int points = 0;
  for (double J : {0.05, 0.1, 0.2, 0.3, 0.4}) {
    for (double gamma : {1.0, 10.0, 50.0, 100.0, 200.0}) {
      const SystemParams p = trio(J, 0.5 * J, J, gamma);
      const MilburnPropagator prop = build_propagator(p);
      for (double gt : linspace(0.0, 100.0, 20)) {
        const double t = gt / gamma;
        const Mat6c exact = covariance(prop, t, gamma).entries;
        const Mat6c series = covariance_series_oracle(prop, t, gamma, 1e-14).entries;
        const double d = max_abs((exact - series).eval());
        if (d > worst) {
          worst = d;
          worst_at = describe(p) + " t=" + fmt(t);
        }
        record_grid(exact, p, t);
        ++points;
      }
    }
  }
  Outcome o;
  o.pass = worst <= 1e-8;
  o.summary = std::to_string(points) + " (J, gamma, gamma t) points: max |sigma - sigma_series| " + fmt(worst) +
              " (tol 1e-8)";
  o.notes.push_back("worst at " + worst_at);
  return o;
}

Outcome criterion_4() {
  // Unit frequencies, |J| <= 0.1: both open-chain labelings and the J13 / J23
  // variations around them.
  const std::vector<std::array<double, 3>> couplings{
      {0.1, 0.0, 0.1}, {0.1, 0.1, 0.0}, {0.1, 0.05, 0.1}, {0.1, 0.1, 0.1}, {0.1, 0.1, 0.05}};
  FockConfig fc;
  fc.cutoff = 8;
  double worst_n = 0.0;  // ratio to the applicable tolerance
  double worst_n_rel = 0.0;
  double worst_e = 0.0;
  std::string worst_e_at;
  int points = 0;
  for (const auto& j : couplings) {
    SystemParams base = trio(j[0], j[1], j[2], 100.0);
    const FockEvolver fock(build_hamiltonian(base, fc), fc);
    for (double gamma : {10.0, 50.0, 100.0}) {
      SystemParams p = base;
      p.gamma = gamma;
      const MilburnPropagator prop = build_propagator(p);
      for (double t : linspace(0.0, 50.0, 20)) {
        const Mat6c sigma = covariance(prop, t, gamma).entries;
        record_grid(sigma, p, t);
        const Vec3 n = mean_excitations(sigma);
        const Vec3 e = entanglement_report(sigma).E;
        const FockObservables f = observables(fock.density(t, gamma), fc);
        for (int k = 0; k < 3; ++k) {
          const double dn = std::abs(n[k] - f.N[k]);
          const double tol = n[k] < 1e-4 ? 1e-8 : 1e-4 * n[k];
          worst_n = std::max(worst_n, dn / tol);
          if (n[k] >= 1e-4) worst_n_rel = std::max(worst_n_rel, dn / n[k]);
          const double de = std::abs(e[k] - f.E[k]);
          if (de > worst_e) {
            worst_e = de;
            worst_e_at = describe(p) + " t=" + fmt(t) + " pair " + std::string(name(static_cast<ModePair>(k)));
          }
        }
        ++points;
      }
    }
  }
  Outcome o;
  const bool n_ok = worst_n <= 1.0;
  const bool e_ok = worst_e <= 1e-4;
  o.pass = n_ok && e_ok;
  o.summary = std::to_string(points) + " points, cutoff 8: <N> " + (n_ok ? "ok" : "FAIL") + " (max rel " +
              fmt(worst_n_rel) + ", worst/tol " + fmt(worst_n) + "); E " + (e_ok ? "ok" : "FAIL") +
              " (max abs " + fmt(worst_e) + ", tol 1e-4)";
  o.notes.push_back("worst E gap at " + worst_e_at);
  o.notes.push_back("second moments agree; the Milburn state is a Poisson mixture of Gaussian states, so the "
                    "Gaussian log-negativity formula does not give its exact negativity");
  return o;
}

Outcome criterion_5() {
  // Schrodinger limit on the Fock-comparison configurations.
  double worst_pure = 0.0;
  long pure_states = 0;
  for (const auto& j : std::vector<std::array<double, 3>>{{0.1, 0.0, 0.1}, {0.1, 0.1, 0.0}, {0.1, 0.1, 0.1}}) {
    SystemParams p = trio(j[0], j[1], j[2], 100.0);
    p.schrodinger_limit = true;
    const MilburnPropagator prop = build_propagator(p);
    for (double t : linspace(0.0, 50.0, 20)) {
      const Eigen::VectorXd nu = symplectic_spectrum(covariance_schrodinger(prop, t).entries);
      worst_pure = std::max(worst_pure, (nu.array() - 1.0).abs().maxCoeff());
      ++pure_states;
    }
  }
  Outcome o;
  o.pass = g_grid_nu_min >= 1.0 - 1e-9 && worst_pure <= 1e-9;
  o.summary = std::to_string(g_grid_states) + " grid states: min nu " + fmt(g_grid_nu_min) +
              " (>= 1 - 1e-9); " + std::to_string(pure_states) + " Schrodinger states: max |nu - 1| " +
              fmt(worst_pure) + " (tol 1e-9)";
  return o;
}

Outcome criterion_6() {
  Outcome o;
  double worst_pinned = 0.0;
  double worst_fock = 0.0;
  double worst_printed = 0.0;
  for (double J : {0.1, 0.3, 0.5, 0.7}) {
    const IsotropicParams ip{1.0, J, 100.0};
    const SystemParams p = ip.to_system();
    const Vec3 pipeline = mean_excitations(covariance_steady(build_propagator(p), p.gamma).entries);
    const Vec3 printed = iso_steady(ip);
    const double pinned = iso_steady_symmetric(ip);
    worst_pinned = std::max(worst_pinned, (pipeline.array() - pinned).abs().maxCoeff());
    worst_printed = std::max(worst_printed, (pipeline - printed).cwiseAbs().maxCoeff());

    // Truncation splits the exact degeneracy Omega1 = 2 Omega2 at J = 0.5, so
    // the Fock value is taken at a late finite time instead of t -> inf.
    FockConfig fc;
    fc.cutoff = J <= 0.3 ? 10 : 12;
    const FockEvolver fock(build_hamiltonian(p, fc), fc);
    const Vec3 fn = observables(fock.density(40.0 * iso_t_steady(ip), p.gamma), fc).N;
    const double rel = (fn.array() - pinned).abs().maxCoeff() / pinned;
    worst_fock = std::max(worst_fock, rel);

    std::ostringstream os;
    os.precision(10);
    os << "J=" << J << ": pipeline (" << pipeline[0] << ", " << pipeline[1] << ", " << pipeline[2]
       << "), printed (" << printed[0] << ", " << printed[1] << ", " << printed[2] << "), pinned " << pinned
       << ", Fock(cutoff " << fc.cutoff << ") rel " << fmt(rel);
    o.notes.push_back(os.str());
  }
  // The printed formulas do not hold; the discrepancy is recorded above and
  // the pinned symmetric value is asserted, confirmed by the Fock oracle.
  const IsotropicParams half{1.0, 0.5, 100.0};
  const double eq = iso_steady_symmetric(half);
  o.notes.push_back("J=0.5: all three modes equal " + fmt(eq) + "; printed <N2> formula gives " +
                    fmt(iso_steady(half)[1]));
  o.pass = worst_pinned <= 1e-8 && worst_fock <= 1e-3 && std::abs(eq - 0.0625) <= 1e-12;
  o.summary = "printed values off by up to " + fmt(worst_printed) + " (recorded); pipeline vs pinned " +
              fmt(worst_pinned) + " (tol 1e-8); Fock vs pinned rel " + fmt(worst_fock) + " (tol 1e-3)";
  return o;
}

Outcome criterion_7() {
  int below_ok = 0;
  int above_ok = 0;
  double spread = 0.0;
  for (int i = 1; i <= 50; ++i) {
    for (bool upper : {false, true}) {
      const double J = upper ? 0.5 + 0.5 * i / 51.0 : 0.5 * i / 51.0;
      const SystemParams p = IsotropicParams{1.0, J, 100.0}.to_system();
      const Vec3 n = mean_excitations(covariance_steady(build_propagator(p), p.gamma).entries);
      spread = std::max(spread, n.maxCoeff() - n.minCoeff());
      if (!upper && n[2] > n[0] && n[0] > n[1]) ++below_ok;
      if (upper && n[2] < n[0] && n[0] < n[1]) ++above_ok;
    }
  }
  Outcome o;
  o.pass = below_ok == 50 && above_ok == 50;
  o.summary = "N3 > N1 > N2 at " + std::to_string(below_ok) + "/50 points with J < 1/2, inverted at " +
              std::to_string(above_ok) + "/50 with J > 1/2; max spread between modes " + fmt(spread);
  o.notes.push_back("the pipeline (and the Fock oracle) give identical steady values on all three modes");
  return o;
}

Outcome criterion_8() {
  double worst_e = 0.0;
  double worst_n = 0.0;
  double mirror_e = 0.0;
  double mirror_n = 0.0;
  for (double gamma : {10.0, 50.0, 100.0}) {
    const SystemParams p = trio(0.1, 0.0, 0.1, gamma);
    const MilburnPropagator prop = build_propagator(p);
    for (double t : linspace(0.0, 50.0, 51)) {
      const Mat6c sigma = covariance(prop, t, gamma).entries;
      g_states.record(sigma, p, t);
      const Vec3 e = entanglement_report(sigma).E;
      const ExcitationReport ex = excitation_measures(mean_excitations(sigma));
      worst_e = std::max(worst_e, std::abs(e[1] - e[2]));
      worst_n = std::max(worst_n, std::abs(ex.Nbi[1] - ex.Nbi[2]));
      mirror_e = std::max(mirror_e, std::abs(e[0] - e[2]));
      mirror_n = std::max(mirror_n, std::abs(ex.N[0] - ex.N[2]));
    }
  }
  Outcome o;
  o.pass = worst_e <= 1e-9 && worst_n <= 1e-9;
  o.summary = "J13 = 0: max |E_ac - E_bc| " + fmt(worst_e) + ", max |N_a|c - N_b|c| " + fmt(worst_n) +
              " (tol 1e-9)";
  o.notes.push_back("mirror identities hold instead: max |E_ab - E_bc| " + fmt(mirror_e) + ", max |N_a - N_c| " +
                    fmt(mirror_n));
  return o;
}

Outcome criterion_9() {
  double worst_n3 = 0.0;
  double worst_e = 0.0;
  int states = 0;
  for (double j12 : {0.1, 0.5}) {
    for (double gamma : {10.0, 50.0, 100.0}) {
      const SystemParams p = trio(j12, 0.0, 0.0, gamma);
      const MilburnPropagator prop = build_propagator(p);
      for (double t : linspace(0.0, 50.0, 51)) {
        const Mat6c sigma = covariance(prop, t, gamma).entries;
        g_states.record(sigma, p, t);
        const Vec3 e = entanglement_report(sigma).E;
        worst_n3 = std::max(worst_n3, mean_excitations(sigma)[2]);
        worst_e = std::max({worst_e, e[1], e[2]});
        ++states;
      }
    }
  }
  Outcome o;
  o.pass = worst_n3 <= 1e-12 && worst_e == 0.0;
  o.summary = std::to_string(states) + " states with J13 = J23 = 0: max N3 " + fmt(worst_n3) +
              " (tol 1e-12), max E_ac, E_bc " + fmt(worst_e) + " (must be 0)";
  return o;
}

Outcome criterion_10() {
  std::mt19937_64 rng(1010);
  std::uniform_real_distribution<double> exponent(-12.0, 3.0);
  std::bernoulli_distribution zero(0.05);
  double worst_random = 1e300;
  for (int i = 0; i < 100000; ++i) {
    Vec3 n;
    for (int k = 0; k < 3; ++k) n[k] = zero(rng) ? 0.0 : std::pow(10.0, exponent(rng));
    worst_random = std::min(worst_random, excitation_measures(n).delta.minCoeff());
  }
  Outcome o;
  o.pass = g_states.worst_delta >= -1e-9 && worst_random >= -1e-9;
  o.summary = std::to_string(g_states.states) + " sampled states: min delta " + fmt(g_states.worst_delta) +
              "; 1e5 random triples: min delta " + fmt(worst_random) + " (>= -1e-9)";
  o.notes.push_back("monogamy residual E_k|lm - E_kl - E_km: min " + fmt(g_states.worst_monogamy) + " at " +
                    g_states.worst_monogamy_at + "; " + std::to_string(g_states.monogamy_violations) +
                    " states below -1e-9 (finding, not gated)");
  return o;
}

Outcome criterion_11() {
  double worst = 0.0;
  std::string worst_at;
  for (double J : {0.1, 0.3, 0.5, 0.7}) {
    for (double gamma : {10.0, 50.0, 100.0}) {
      const IsotropicParams ip{1.0, J, gamma};
      const SystemParams p = ip.to_system();
      const MilburnPropagator prop = build_propagator(p);
      const double ts = iso_t_steady(ip);
      const Vec3 inf = mean_excitations(covariance_steady(prop, gamma).entries);
      Vec3 peak = Vec3::Zero();
      for (double t : linspace(0.0, 10.0 * ts, 4001)) {
        peak = peak.cwiseMax(mean_excitations(covariance(prop, t, gamma).entries));
      }
      const Vec3 end = mean_excitations(covariance(prop, 10.0 * ts, gamma).entries);
      for (int k = 0; k < 3; ++k) {
        const double ratio = std::abs(end[k] - inf[k]) / peak[k];
        if (ratio > worst) {
          worst = ratio;
          worst_at = "J=" + fmt(J) + " gamma=" + fmt(gamma);
        }
      }
    }
  }
  Outcome o;
  o.pass = worst <= 0.05;
  o.summary = "12 isotropic runs: max |N(10 t_ss) - N_inf| / max_t N = " + fmt(worst) + " (tol 0.05, at " +
              worst_at + ")";
  return o;
}

Outcome criterion_12() {
  RunConfig cfg;
  cfg.params = trio(0.1, 0.0, 0.1, 50.0);
  cfg.outputs.covariance = true;
  cfg.n_points = 201;
  auto run = [&](const char* threads) {
    setenv("USC_TRIO_THREADS", threads, 1);
    std::ostringstream out, diag;
    const int code = cmd_simulate(cfg, out, diag);
    unsetenv("USC_TRIO_THREADS");
    return std::make_pair(code, out.str());
  };
  const auto a = run("1");
  const auto b = run("1");
  const auto c = run("4");
  Outcome o;
  o.pass = a.first == 0 && a == b && a == c && !a.second.empty();
  o.summary = "cmd_simulate x3 (1, 1, 4 threads): " + std::to_string(a.second.size()) + " bytes, " +
              (a == b && a == c ? "byte-identical" : "DIFFERENT");
  return o;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
  double max_seconds;  // <= 0: no runtime requirement
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "diagonalization oracle", criterion_1, 5.0},
      {2, "symplectic suite", criterion_2, 5.0},
      {3, "closed form vs series", criterion_3, 30.0},
      {4, "Fock-oracle equivalence", criterion_4, 300.0},
      {5, "physicality", criterion_5, 0.0},
      {6, "isotropic steady regression", criterion_6, 60.0},
      {7, "isotropic ordering", criterion_7, 0.0},
      {8, "open-chain a|c vs b|c", criterion_8, 0.0},
      {9, "extinction implies separability", criterion_9, 0.0},
      {10, "polygamy", criterion_10, 0.0},
      {11, "t_steady property", criterion_11, 0.0},
      {12, "determinism", criterion_12, 0.0},
  };

  std::set<int> failed;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& ex) {
      o.pass = false;
      o.summary = std::string("exception: ") + ex.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.max_seconds > 0.0 && secs > c.max_seconds) {
      o.pass = false;
      o.summary += "; runtime over " + fmt(c.max_seconds) + " s";
    }
    if (!o.pass) failed.insert(c.id);
    const bool expected = kExpectedFailures.count(c.id) > 0;
    std::printf("criterion %2d %s %s: %s [%.2f s]%s\n", c.id, o.pass ? "PASS" : "FAIL", c.title, o.summary.c_str(),
                secs, !o.pass && expected ? " (known)" : "");
    for (const std::string& n : o.notes) std::printf("             %s\n", n.c_str());
    std::fflush(stdout);
  }

  std::vector<int> unexpected;
  for (int id : failed) {
    if (!kExpectedFailures.count(id)) unexpected.push_back(id);
  }
  std::vector<int> xpass;
  for (int id : kExpectedFailures) {
    if (!failed.count(id)) xpass.push_back(id);
  }
  std::printf("summary: %zu/12 pass", 12 - failed.size());
  for (int id : unexpected) std::printf("; unexpected FAIL %d", id);
  for (int id : xpass) std::printf("; unexpected PASS %d", id);
  std::printf("\n");
  return unexpected.empty() && xpass.empty() ? EXIT_SUCCESS : EXIT_FAILURE;
}
