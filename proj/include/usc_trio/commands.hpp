#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "usc_trio/milburn.hpp"
#include "usc_trio/run_config.hpp"
#include "usc_trio/verify.hpp"

namespace usc_trio {

namespace exit_code {
constexpr int ok = 0;
constexpr int verify_failed = 1;
constexpr int config_error = 2;
constexpr int nonphysical = 3;
}  // namespace exit_code

/// Covariance at t in the evolution mode selected by prop.params.
CovarianceMatrix evolve(const MilburnPropagator& prop, double t);

/// Data columns after the leading t (or sweep value) column, in schema order:
/// excitations, polygamy, entanglement, covariance, then oracle deviations.
std::vector<std::string> data_columns(const RunConfig& cfg);

/// Formats with 17 significant digits.
std::string format_number(double x);

/// Writes the simulate CSV. Throws ConfigError, DomainError or
/// NonPhysicalError (the latter names the offending t).
void simulate(const RunConfig& cfg, std::ostream& out, std::ostream& diag);

/// Writes the sweep CSV: sweep value, t, data columns, resonance flag
/// (omega1 + omega3 = 4 omega2). Invalid points are skipped and reported.
void sweep(const RunConfig& cfg, std::ostream& out, std::ostream& diag);

/// Runs every suite, writes JSON lines, returns true iff none failed.
bool verify(const RunConfig& cfg, const VerifyOptions& opts, std::ostream& out, std::ostream& diag);

/// Wrappers mapping exceptions to exit codes.
int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& diag);
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& diag);
int cmd_verify(const RunConfig& cfg, const VerifyOptions& opts, std::ostream& out, std::ostream& diag);

}  // namespace usc_trio
