#pragma once

#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "usc_trio/model.hpp"

namespace usc_trio {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Column groups, in schema order.
struct OutputSelection {
  bool excitations = true;
  bool polygamy = true;
  bool entanglement = true;
  bool covariance = false;
};

/// Flat `key = value` run description. Missing keys keep these defaults.
struct RunConfig {
  SystemParams params;

  double t_start = 0.0;
  double t_end = 50.0;
  int n_points = 101;

  std::string sweep_param;  // empty: no sweep
  double sweep_min = 0.0;
  double sweep_max = 0.0;
  int sweep_steps = 0;

  OutputSelection outputs;

  bool fock_oracle = false;
  int fock_cutoff = 8;
  bool series_oracle = false;
  double series_epsilon = 1e-12;

  std::string out_path;  // empty or "-": standard output

  /// Throws ConfigError on a non-monotone grid, bad counts, unknown sweep
  /// axis or out-of-range oracle settings. Bound-state validity of the
  /// parameters themselves is checked by the commands.
  void validate() const;

  std::vector<double> time_grid() const;
  /// Empty when sweep_steps == 0 or sweep_max < sweep_min.
  std::vector<double> sweep_values() const;
};

/// Sweepable axes. `J` sets all three couplings, `omega_r` all three bare
/// frequencies.
const std::vector<std::string>& sweep_axes();
void set_sweep_value(SystemParams& params, const std::string& axis, double value);

/// Assigns one key. Throws ConfigError for unknown keys or unparsable values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Parses `key = value` lines; `#` starts a comment. `source` names the input
/// in error messages.
RunConfig parse_config(std::istream& in, const std::string& source);
RunConfig load_config(const std::string& path);

/// Applies one `key=value` override.
void apply_override(RunConfig& cfg, const std::string& assignment);

}  // namespace usc_trio
