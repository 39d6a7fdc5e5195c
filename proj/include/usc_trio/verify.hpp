#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "usc_trio/model.hpp"
#include "usc_trio/run_config.hpp"

namespace usc_trio {

struct VerifyOptions {
  /// Replace the mode-1/mode-3 rotation by its misprinted form (negative control).
  bool inject_misprinted_s13 = false;
  int random_samples = 200;
  std::uint64_t seed = 20261016;
};

struct SuiteResult {
  std::string name;
  bool skipped = false;
  bool pass = true;
  double max_residual = 0.0;
  double tolerance = 0.0;
  long samples = 0;
  std::string detail;
};

/// Random point of the bound-state manifold: omega_j in [0.3, 2], couplings up
/// to 0.95 sqrt(omega_j omega_k) in magnitude, gamma in [5, 200]. Rejection
/// sampled on the leading minors.
SystemParams sample_bound_state(std::mt19937_64& rng);

/// Cross-oracle and invariant suites on the config parameters plus random
/// draws. Suite order is fixed; `purity` runs only in the Schrodinger limit
/// and `mixedness` only without it.
std::vector<SuiteResult> run_verify_suites(const RunConfig& cfg, const VerifyOptions& opts);

/// One JSON object per line.
std::string to_json_line(const SuiteResult& r);

}  // namespace usc_trio
