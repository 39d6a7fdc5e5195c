#include "usc_trio/commands.hpp"

#include <cmath>
#include <cstdio>
#include <memory>
#include <optional>
#include <sstream>

#include "usc_trio/analysis.hpp"
#include "usc_trio/fock_oracle.hpp"
#include "usc_trio/isotropic.hpp"
#include "usc_trio/parallel.hpp"

namespace usc_trio {

namespace {

constexpr double kPhysicalTol = 1e-9;

struct Oracles {
  std::unique_ptr<FockEvolver> fock;
  bool series = false;
};

Oracles make_oracles(const RunConfig& cfg, std::ostream& diag) {
  Oracles o;
  if (cfg.fock_oracle) {
    FockConfig fc;
    fc.cutoff = cfg.fock_cutoff;
    o.fock = std::make_unique<FockEvolver>(build_hamiltonian(cfg.params, fc), fc);
  }
  if (cfg.series_oracle && cfg.params.schrodinger_limit) {
    diag << "note: series oracle has no Schrodinger-limit form; column omitted\n";
  }
  o.series = cfg.series_oracle && !cfg.params.schrodinger_limit;
  return o;
}

std::vector<double> evaluate(const RunConfig& cfg, const MilburnPropagator& prop, const Oracles& oracles,
                             double t) {
  const CovarianceMatrix cov = evolve(prop, t);
  const Mat6c& sigma = cov.entries;
  const double nu_min = symplectic_spectrum(sigma).minCoeff();
  if (nu_min < 1.0 - kPhysicalTol) {
    throw NonPhysicalError("symplectic eigenvalue " + format_number(nu_min) + " < 1 at t=" + format_number(t));
  }
  const Vec3 n = mean_excitations(sigma);
  const ExcitationReport ex = excitation_measures(n);

  std::vector<double> row;
  if (cfg.outputs.excitations) row.insert(row.end(), n.data(), n.data() + 3);
  if (cfg.outputs.polygamy) {
    row.insert(row.end(), ex.Nbi.data(), ex.Nbi.data() + 3);
    row.insert(row.end(), ex.Ntri.data(), ex.Ntri.data() + 3);
    row.insert(row.end(), ex.delta.data(), ex.delta.data() + 3);
  }
  EntanglementReport ent;
  if (cfg.outputs.entanglement || oracles.fock) ent = entanglement_report(sigma);
  if (cfg.outputs.entanglement) {
    row.insert(row.end(), ent.E.data(), ent.E.data() + 3);
    row.insert(row.end(), ent.E_one_two.data(), ent.E_one_two.data() + 3);
    row.push_back(nu_min);
  }
  if (cfg.outputs.covariance) {
    for (int i = 0; i < 6; ++i) {
      for (int j = i; j < 6; ++j) {
        row.push_back(sigma(i, j).real());
        row.push_back(sigma(i, j).imag());
      }
    }
  }
  if (oracles.fock) {
    const FockEvolver& f = *oracles.fock;
    const FockObservables o = observables(
        cfg.params.schrodinger_limit ? f.density_schrodinger(t) : f.density(t, cfg.params.gamma), f.config());
    for (int j = 0; j < 3; ++j) row.push_back(n[j] - o.N[j]);
    for (int j = 0; j < 3; ++j) row.push_back(ent.E[j] - o.E[j]);
  }
  if (oracles.series) {
    const Mat6c series = covariance_series_oracle(prop, t, cfg.params.gamma, cfg.series_epsilon).entries;
    row.push_back(max_abs((sigma - series).eval()));
  }
  return row;
}

void write_row(std::ostream& out, const std::vector<double>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << ',';
    out << format_number(row[i]);
  }
  out << '\n';
}

void write_header(std::ostream& out, const std::vector<std::string>& cols) {
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) out << ',';
    out << cols[i];
  }
  out << '\n';
}

bool is_isotropic(const SystemParams& p) {
  return p.omega1 == p.omega2 && p.omega2 == p.omega3 && p.J12 == p.J13 && p.J13 == p.J23;
}

bool resonant(const SystemParams& p) {
  const double lhs = p.omega1 + p.omega3;
  return std::abs(lhs - 4.0 * p.omega2) <= 1e-9 * std::max(1.0, lhs);
}

}  // namespace

CovarianceMatrix evolve(const MilburnPropagator& prop, double t) {
  return prop.params.schrodinger_limit ? covariance_schrodinger(prop, t)
                                       : covariance(prop, t, prop.params.gamma);
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string> data_columns(const RunConfig& cfg) {
  std::vector<std::string> c;
  if (cfg.outputs.excitations) c.insert(c.end(), {"N1", "N2", "N3"});
  if (cfg.outputs.polygamy) {
    c.insert(c.end(), {"Nab", "Nac", "Nbc", "Na_bc", "Nb_ac", "Nc_ab", "delta_a", "delta_b", "delta_c"});
  }
  if (cfg.outputs.entanglement) {
    c.insert(c.end(), {"E_ab", "E_ac", "E_bc", "E_a_bc", "E_b_ac", "E_c_ab", "nu_min"});
  }
  if (cfg.outputs.covariance) {
    for (int i = 1; i <= 6; ++i) {
      for (int j = i; j <= 6; ++j) {
        const std::string base = "s" + std::to_string(i) + std::to_string(j);
        c.push_back(base + "_re");
        c.push_back(base + "_im");
      }
    }
  }
  if (cfg.fock_oracle) {
    c.insert(c.end(), {"fock_dN1", "fock_dN2", "fock_dN3", "fock_dE_ab", "fock_dE_ac", "fock_dE_bc"});
  }
  if (cfg.series_oracle && !cfg.params.schrodinger_limit) c.push_back("series_dsigma");
  return c;
}

void simulate(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
  cfg.validate();
  cfg.params.validate();
  const MilburnPropagator prop = build_propagator(cfg.params);
  const Oracles oracles = make_oracles(cfg, diag);
  const std::vector<double> grid = cfg.time_grid();

  std::vector<std::vector<double>> rows(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    rows[i] = evaluate(cfg, prop, oracles, grid[i]);
    rows[i].insert(rows[i].begin(), grid[i]);
  });

  std::vector<std::string> header{"t"};
  const auto cols = data_columns(cfg);
  header.insert(header.end(), cols.begin(), cols.end());
  write_header(out, header);
  for (const auto& row : rows) write_row(out, row);
}

void sweep(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
  cfg.validate();
  if (cfg.sweep_param.empty()) throw ConfigError("sweep requires sweep_param");
  const std::vector<double> values = cfg.sweep_values();

  struct Point {
    std::optional<std::vector<double>> row;
    std::string skipped;
  };
  std::vector<Point> points(values.size());
  parallel_for(values.size(), [&](std::size_t i) {
    RunConfig local = cfg;
    set_sweep_value(local.params, cfg.sweep_param, values[i]);
    try {
      local.params.validate();
    } catch (const DomainError& e) {
      points[i].skipped = e.what();
      return;
    }
    double t = cfg.t_end;
    if (is_isotropic(local.params) && !local.params.schrodinger_limit) {
      const double tss = iso_t_steady({local.params.omega1, local.params.J12, local.params.gamma});
      if (std::isfinite(tss)) t = 10.0 * tss;
    }
    const MilburnPropagator prop = build_propagator(local.params);
    std::ostringstream sink;
    const Oracles oracles = make_oracles(local, sink);
    std::vector<double> row = evaluate(local, prop, oracles, t);
    row.insert(row.begin(), {values[i], t});
    row.push_back(resonant(local.params) ? 1.0 : 0.0);
    points[i].row = std::move(row);
  });

  std::vector<std::string> header{cfg.sweep_param, "t"};
  const auto cols = data_columns(cfg);
  header.insert(header.end(), cols.begin(), cols.end());
  header.push_back("resonant");
  write_header(out, header);
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].row) {
      write_row(out, *points[i].row);
    } else {
      ++skipped;
      diag << "skipped " << cfg.sweep_param << "=" << format_number(values[i]) << ": " << points[i].skipped
           << '\n';
    }
  }
  if (skipped) diag << "sweep: " << skipped << " of " << points.size() << " points skipped\n";
}

bool verify(const RunConfig& cfg, const VerifyOptions& opts, std::ostream& out, std::ostream& diag) {
  cfg.validate();
  const auto results = run_verify_suites(cfg, opts);
  const SuiteResult* first_failure = nullptr;
  for (const auto& r : results) {
    out << to_json_line(r) << '\n';
    if (!r.skipped && !r.pass && !first_failure) first_failure = &r;
  }
  if (first_failure) {
    diag << "verify: suite '" << first_failure->name << "' failed (residual "
         << format_number(first_failure->max_residual) << " > " << format_number(first_failure->tolerance)
         << ")\n";
    return false;
  }
  return true;
}

namespace {

template <typename Fn>
int guarded(std::ostream& diag, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    diag << "config error: " << e.what() << '\n';
    return exit_code::config_error;
  } catch (const DomainError& e) {
    diag << "config error: " << e.what() << '\n';
    return exit_code::config_error;
  } catch (const NonPhysicalError& e) {
    diag << "physicality violation: " << e.what() << '\n';
    return exit_code::nonphysical;
  }
}

}  // namespace

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
  return guarded(diag, [&] {
    simulate(cfg, out, diag);
    return exit_code::ok;
  });
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
  return guarded(diag, [&] {
    sweep(cfg, out, diag);
    return exit_code::ok;
  });
}

int cmd_verify(const RunConfig& cfg, const VerifyOptions& opts, std::ostream& out, std::ostream& diag) {
  return guarded(diag, [&] { return verify(cfg, opts, out, diag) ? exit_code::ok : exit_code::verify_failed; });
}

}  // namespace usc_trio
