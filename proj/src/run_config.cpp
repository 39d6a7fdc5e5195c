#include "usc_trio/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace usc_trio {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used == v.size() && std::isfinite(x)) return x;
  } catch (const std::exception&) {
  }
  throw ConfigError("key '" + key + "': expected a finite number, got '" + v + "'");
}

int to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long x = std::stol(v, &used);
    if (used == v.size() && x >= -1000000000L && x <= 1000000000L) return static_cast<int>(x);
  } catch (const std::exception&) {
  }
  throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "off" || v == "no") return false;
  throw ConfigError("key '" + key + "': expected a boolean, got '" + v + "'");
}

OutputSelection to_outputs(const std::string& v) {
  OutputSelection out{false, false, false, false};
  std::stringstream ss(v);
  std::string item;
  bool any = false;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    if (item == "excitations") out.excitations = true;
    else if (item == "polygamy") out.polygamy = true;
    else if (item == "entanglement") out.entanglement = true;
    else if (item == "covariance") out.covariance = true;
    else throw ConfigError("key 'outputs': unknown group '" + item + "'");
    any = true;
  }
  if (!any) throw ConfigError("key 'outputs': no group selected");
  return out;
}

}  // namespace

const std::vector<std::string>& sweep_axes() {
  static const std::vector<std::string> axes{"omega1", "omega2", "omega3", "J12", "J13",
                                             "J23",    "gamma",  "J",      "omega_r"};
  return axes;
}

void set_sweep_value(SystemParams& p, const std::string& axis, double v) {
  if (axis == "omega1") p.omega1 = v;
  else if (axis == "omega2") p.omega2 = v;
  else if (axis == "omega3") p.omega3 = v;
  else if (axis == "J12") p.J12 = v;
  else if (axis == "J13") p.J13 = v;
  else if (axis == "J23") p.J23 = v;
  else if (axis == "gamma") p.gamma = v;
  else if (axis == "J") p.J12 = p.J13 = p.J23 = v;
  else if (axis == "omega_r") p.omega1 = p.omega2 = p.omega3 = v;
  else throw ConfigError("unknown sweep axis '" + axis + "'");
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "omega1") c.params.omega1 = to_double(key, value);
  else if (key == "omega2") c.params.omega2 = to_double(key, value);
  else if (key == "omega3") c.params.omega3 = to_double(key, value);
  else if (key == "J12") c.params.J12 = to_double(key, value);
  else if (key == "J13") c.params.J13 = to_double(key, value);
  else if (key == "J23") c.params.J23 = to_double(key, value);
  else if (key == "gamma") c.params.gamma = to_double(key, value);
  else if (key == "schrodinger_limit") c.params.schrodinger_limit = to_bool(key, value);
  else if (key == "t_start") c.t_start = to_double(key, value);
  else if (key == "t_end") c.t_end = to_double(key, value);
  else if (key == "n_points") c.n_points = to_int(key, value);
  else if (key == "sweep_param") c.sweep_param = value;
  else if (key == "sweep_min") c.sweep_min = to_double(key, value);
  else if (key == "sweep_max") c.sweep_max = to_double(key, value);
  else if (key == "sweep_steps") c.sweep_steps = to_int(key, value);
  else if (key == "outputs") c.outputs = to_outputs(value);
  else if (key == "fock_oracle") c.fock_oracle = to_bool(key, value);
  else if (key == "fock_cutoff") c.fock_cutoff = to_int(key, value);
  else if (key == "series_oracle") c.series_oracle = to_bool(key, value);
  else if (key == "series_epsilon") c.series_epsilon = to_double(key, value);
  else if (key == "out_path") c.out_path = value;
  else throw ConfigError("unknown key '" + key + "'");
}

void RunConfig::validate() const {
  if (!(t_start >= 0.0)) throw ConfigError("t_start must be >= 0");
  if (n_points < 2) throw ConfigError("n_points must be >= 2");
  if (!(t_end > t_start)) throw ConfigError("t_end must exceed t_start");
  if (!sweep_param.empty()) {
    const auto& axes = sweep_axes();
    if (std::find(axes.begin(), axes.end(), sweep_param) == axes.end()) {
      throw ConfigError("unknown sweep axis '" + sweep_param + "'");
    }
  }
  if (sweep_steps < 0) throw ConfigError("sweep_steps must be >= 0");
  if (fock_cutoff < 2 || fock_cutoff > 14) throw ConfigError("fock_cutoff must lie in [2, 14]");
  if (!(series_epsilon > 0.0 && series_epsilon < 1.0)) {
    throw ConfigError("series_epsilon must lie in (0, 1)");
  }
  if (!(params.gamma > 0.0)) throw ConfigError("gamma must be positive");
}

std::vector<double> RunConfig::time_grid() const {
  std::vector<double> t(static_cast<std::size_t>(n_points));
  const double step = (t_end - t_start) / (n_points - 1);
  for (int i = 0; i < n_points; ++i) t[i] = t_start + i * step;
  t.back() = t_end;
  return t;
}

std::vector<double> RunConfig::sweep_values() const {
  std::vector<double> v;
  if (sweep_steps == 0 || sweep_max < sweep_min) return v;
  if (sweep_steps == 1) return {sweep_min};
  const double step = (sweep_max - sweep_min) / (sweep_steps - 1);
  for (int i = 0; i < sweep_steps; ++i) v.push_back(sweep_min + i * step);
  v.back() = sweep_max;
  return v;
}

RunConfig parse_config(std::istream& in, const std::string& source) {
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    try {
      apply_setting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError(source + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  return parse_config(in, path);
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("override '" + assignment + "' is not key=value");
  apply_setting(cfg, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

}  // namespace usc_trio
