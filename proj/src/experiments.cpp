// Copyright 2026 The qpcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qpcsim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "qpcsim/csv.hpp"

namespace qpcsim {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kDisentangleCutoff = 1e-3;  // concurrence level defining tau_D
constexpr double kCrossPathTol = 1e-6;

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

double from_optional(const std::optional<double>& v) { return v ? *v : kNan; }

/// First tau at which the series falls to or below the cutoff,
/// interpolated between the bracketing samples.
std::optional<double> crossing_time_below(const std::vector<double>& taus,
                                          const std::vector<double>& values,
                                          double cutoff) {
  if (values.empty()) return std::nullopt;
  if (values[0] <= cutoff) return taus[0];
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] <= cutoff) {
      const double frac = (values[i - 1] - cutoff) / (values[i - 1] - values[i]);
      return taus[i - 1] + frac * (taus[i] - taus[i - 1]);
    }
  }
  return std::nullopt;
}

void echo_common(ScenarioResult& result, const ScenarioConfig& cfg) {
  result.metadata.emplace_back("scenario", scenario_name(cfg.scenario));
  if (cfg.scenario == Scenario::optimal_coupling) {
    std::string grid_str;
    for (std::size_t i = 0; i < cfg.alpha_grid.size(); ++i) {
      if (i) grid_str += ',';
      grid_str += format_real(cfg.alpha_grid[i]);
    }
    result.metadata.emplace_back("alpha-grid", grid_str);
  } else {
    result.metadata.emplace_back("alpha", format_real(cfg.alpha));
  }
  if (cfg.scenario == Scenario::single_dd || cfg.scenario == Scenario::optimal_coupling) {
    result.metadata.emplace_back("theta", format_real(cfg.theta_deg));
    result.metadata.emplace_back("phi", format_real(cfg.phi_deg));
  }
  result.metadata.emplace_back("delta", format_real(cfg.delta));
  result.metadata.emplace_back("tau-max", format_real(cfg.grid.tau_max));
  result.metadata.emplace_back("dt", format_real(cfg.grid.dt));
  result.metadata.emplace_back("stride", std::to_string(cfg.grid.stride));
  if (cfg.scenario == Scenario::single_dd || cfg.scenario == Scenario::optimal_coupling) {
    result.metadata.emplace_back("level", format_real(cfg.threshold_level));
  }
  if (cfg.scenario == Scenario::singlet_pair || cfg.scenario == Scenario::measure_compare) {
    result.metadata.emplace_back("thorough", cfg.thorough ? "true" : "false");
  }
}

/// Verify that contracting the tomographed channel against the initial
/// pair state reproduces the directly integrated trajectory. Checks 5
/// evenly spread samples, or all of them in thorough mode.
double cross_path_check(const Trajectory& traj, const std::vector<ChoiMatrix>& chois,
                        bool thorough) {
  const std::size_t n = traj.states.size();
  std::vector<std::size_t> indices;
  if (thorough || n <= 5) {
    indices.resize(n);
    for (std::size_t i = 0; i < n; ++i) indices[i] = i;
  } else {
    for (int k = 0; k < 5; ++k) indices.push_back(k * (n - 1) / 4);
  }

  const DensityMatrix& rho0 = traj.states.front();
  double max_dev = 0.0;
  for (std::size_t idx : indices) {
    const DensityMatrix mapped = apply_one_sided(chois[idx], rho0);
    const double dev =
        (mapped.matrix() - traj.states[idx].matrix()).cwiseAbs().maxCoeff();
    max_dev = std::max(max_dev, dev);
    if (dev > kCrossPathTol) {
      throw numerical_error(
          "channel/integrator cross-check failed at tau=" +
          std::to_string(traj.taus[idx]) + ": deviation " + std::to_string(dev) +
          " > tolerance 1e-06");
    }
  }
  return max_dev;
}

}  // namespace

std::string scenario_name(Scenario s) {
  switch (s) {
    case Scenario::single_dd: return "single";
    case Scenario::optimal_coupling: return "optimal";
    case Scenario::singlet_pair: return "singlet";
    case Scenario::measure_compare: return "compare";
    case Scenario::tomography_dump: return "tomo";
  }
  throw std::invalid_argument("scenario_name: unknown scenario");
}

Scenario parse_scenario(const std::string& name) {
  if (name == "single") return Scenario::single_dd;
  if (name == "optimal") return Scenario::optimal_coupling;
  if (name == "singlet") return Scenario::singlet_pair;
  if (name == "compare") return Scenario::measure_compare;
  if (name == "tomo") return Scenario::tomography_dump;
  throw std::invalid_argument("unknown subcommand '" + name + "'");
}

void ScenarioConfig::validate() const {
  grid.validate();
  if (alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
  if (theta_deg < 0.0 || theta_deg > 360.0) {
    throw std::invalid_argument("theta must lie in [0, 360] degrees");
  }
  if (phi_deg < 0.0 || phi_deg > 360.0) {
    throw std::invalid_argument("phi must lie in [0, 360] degrees");
  }
  if (!(threshold_level > 0.0) || threshold_level >= 1.0) {
    throw std::invalid_argument("level must lie in (0, 1)");
  }
  if (scenario == Scenario::optimal_coupling) {
    if (alpha_grid.empty()) {
      throw std::invalid_argument("optimal requires an alpha grid (--alpha-grid)");
    }
    if (!std::is_sorted(alpha_grid.begin(), alpha_grid.end())) {
      throw std::invalid_argument("alpha grid must be ascending");
    }
    if (alpha_grid.front() < 0.0) throw std::invalid_argument("alpha must be >= 0");
    if (theta_deg != 0.0) {
      throw std::invalid_argument("optimal requires theta = 0 (localized start)");
    }
  }
}

ScenarioResult run_single_dd(const ScenarioConfig& cfg) {
  cfg.validate();
  const GeneratorParams g = GeneratorParams::normalized(cfg.alpha, cfg.delta);
  const DensityMatrix sigma0 =
      initial_state({deg_to_rad(cfg.theta_deg), deg_to_rad(cfg.phi_deg)});
  const Trajectory traj = evolve_single(sigma0, g, cfg.grid);
  const EntropySeries s = entanglement_entropy_series(traj);
  const RateSeries r = entanglement_rate(s);

  ScenarioResult result;
  result.axis = s.taus;
  result.columns.emplace_back("S", s.values);
  result.columns.emplace_back("R", r.values);
  echo_common(result, cfg);

  std::vector<double> levels{0.90, 0.95, 0.99};
  if (std::none_of(levels.begin(), levels.end(), [&](double l) {
        return std::abs(l - cfg.threshold_level) < 1e-12;
      })) {
    levels.push_back(cfg.threshold_level);
  }
  for (double level : levels) {
    char key[32];
    std::snprintf(key, sizeof key, "tau_E_%.2f", level);
    result.summary.emplace_back(key, from_optional(threshold_time(s, level)));
  }
  return result;
}

ScenarioResult find_optimal_coupling(const ScenarioConfig& cfg) {
  cfg.validate();
  if (cfg.scenario != Scenario::optimal_coupling) {
    throw std::invalid_argument("find_optimal_coupling expects the optimal scenario");
  }

  std::vector<double> times;
  times.reserve(cfg.alpha_grid.size());
  int unreached = 0;
  double alpha_opt = kNan;
  double tau_opt = std::numeric_limits<double>::infinity();
  for (double alpha : cfg.alpha_grid) {
    const GeneratorParams g = GeneratorParams::normalized(alpha, cfg.delta);
    const Trajectory traj = evolve_single(initial_state({0.0, 0.0}), g, cfg.grid);
    const EntropySeries s = entanglement_entropy_series(traj);
    const auto t = threshold_time(s, cfg.threshold_level);
    times.push_back(from_optional(t));
    if (!t) {
      ++unreached;
    } else if (*t < tau_opt) {
      tau_opt = *t;
      alpha_opt = alpha;
    }
  }
  if (!std::isfinite(tau_opt)) tau_opt = kNan;

  ScenarioResult result;
  result.axis_label = "alpha";
  result.axis = cfg.alpha_grid;
  result.columns.emplace_back("tau_E", times);
  echo_common(result, cfg);
  result.summary.emplace_back("alpha_opt", alpha_opt);
  result.summary.emplace_back("tau_E_opt", tau_opt);
  result.summary.emplace_back("unreached", static_cast<double>(unreached));
  return result;
}

ScenarioResult run_singlet_pair(const ScenarioConfig& cfg) {
  cfg.validate();
  const GeneratorParams g = GeneratorParams::normalized(cfg.alpha, cfg.delta);
  const DensityMatrix rho0{MatrixX(singlet_matrix())};
  const Trajectory traj = evolve_pair_one_sided(rho0, g, cfg.grid);

  const EntropySeries s_pair = entanglement_entropy_series(traj);
  std::vector<double> eof(traj.size()), conc(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    conc[k] = concurrence(traj.states[k]);
    eof[k] = entropy_of_formation(traj.states[k]);
  }

  const double crosscheck_dev =
      cross_path_check(traj, tomograph_series(g, cfg.grid), cfg.thorough);

  ScenarioResult result;
  result.axis = traj.taus;
  result.columns.emplace_back("EoF", eof);
  result.columns.emplace_back("S_pair", s_pair.values);
  result.columns.emplace_back("C", conc);
  echo_common(result, cfg);

  const auto tau_d = crossing_time_below(traj.taus, conc, kDisentangleCutoff);
  const double saturation = s_pair.values.back();
  const auto tau_e2 = saturation > 0.0
                          ? threshold_time(s_pair, 0.9 * saturation)
                          : std::nullopt;
  result.summary.emplace_back("tau_D", from_optional(tau_d));
  result.summary.emplace_back("tau_E2", from_optional(tau_e2));
  result.summary.emplace_back(
      "tau_E2_over_tau_D",
      (tau_d && tau_e2 && *tau_d > 0.0) ? *tau_e2 / *tau_d : kNan);
  result.summary.emplace_back("S_pair_end", saturation);
  result.summary.emplace_back("crosscheck_dev", crosscheck_dev);
  return result;
}

DensityMatrix collapse_average(const DensityMatrix& rho) {
  if (rho.dim() != 4) {
    throw std::invalid_argument("collapse_average: state must be 4x4");
  }
  const Matrix4 projectors[2] = {
      Matrix4(tensor_product(projector_left(), identity2())),
      Matrix4(tensor_product(projector_right(), identity2())),
  };
  Matrix4 averaged = Matrix4::Zero();
  double total_weight = 0.0;
  for (const Matrix4& p : projectors) {
    const double prob = (p * rho.matrix()).trace().real();
    if (prob <= 1e-12) continue;  // degenerate branch, dropped
    const Matrix4 branch = p * rho.matrix() * p;
    averaged += prob * (branch / branch.trace().real());
    total_weight += prob;
  }
  if (total_weight <= 1e-12) {
    throw std::invalid_argument("collapse_average: both branch probabilities vanish");
  }
  return DensityMatrix(MatrixX(averaged));
}

ScenarioResult run_measure_compare(const ScenarioConfig& cfg) {
  cfg.validate();
  const GeneratorParams g = GeneratorParams::normalized(cfg.alpha, cfg.delta);
  const DensityMatrix rho0{MatrixX(singlet_matrix())};
  const DensityMatrix rho_m0 = collapse_average(rho0);

  const Trajectory traj = evolve_pair_one_sided(rho0, g, cfg.grid);
  const Trajectory traj_m = evolve_pair_one_sided(rho_m0, g, cfg.grid);

  const std::size_t n = traj.size();
  std::vector<double> dist(n), eof_s(n), eof_m(n);
  for (std::size_t k = 0; k < n; ++k) {
    dist[k] = frobenius_distance(traj_m.states[k].matrix(), traj.states[k].matrix());
    eof_s[k] = entropy_of_formation(traj.states[k]);
    eof_m[k] = entropy_of_formation(traj_m.states[k]);
  }

  const auto chois = tomograph_series(g, cfg.grid);
  const double dev_s = cross_path_check(traj, chois, cfg.thorough);
  const double dev_m = cross_path_check(traj_m, chois, cfg.thorough);

  ScenarioResult result;
  result.axis = traj.taus;
  result.columns.emplace_back("D", dist);
  result.columns.emplace_back("EoF_schrodinger", eof_s);
  result.columns.emplace_back("EoF_measured", eof_m);
  echo_common(result, cfg);
  result.summary.emplace_back("D_0", dist.front());
  result.summary.emplace_back("D_end", dist.back());
  result.summary.emplace_back("D_max", *std::max_element(dist.begin(), dist.end()));
  result.summary.emplace_back("EoF_schrodinger_end", eof_s.back());
  result.summary.emplace_back("EoF_measured_end", eof_m.back());
  result.summary.emplace_back("crosscheck_dev", std::max(dev_s, dev_m));
  return result;
}

ScenarioResult run_tomography_dump(const ScenarioConfig& cfg) {
  cfg.validate();
  const GeneratorParams g = GeneratorParams::normalized(cfg.alpha, cfg.delta);
  const auto chois = tomograph_series(g, cfg.grid);
  const std::size_t n = chois.size();

  ScenarioResult result;
  result.axis = sample_taus(cfg.grid);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      std::vector<double> re(n), im(n);
      for (std::size_t k = 0; k < n; ++k) {
        re[k] = chois[k].mat(r, c).real();
        im[k] = chois[k].mat(r, c).imag();
      }
      const std::string suffix = std::to_string(r) + std::to_string(c);
      result.columns.emplace_back("re_J" + suffix, std::move(re));
      result.columns.emplace_back("im_J" + suffix, std::move(im));
    }
  }
  std::vector<double> min_eig(n), tp_dev(n), herm_dev(n);
  for (std::size_t k = 0; k < n; ++k) {
    const CptpReport report = verify_cptp(chois[k]);
    min_eig[k] = report.min_eigenvalue;
    tp_dev[k] = report.tp_deviation;
    herm_dev[k] = report.hermiticity_deviation;
  }
  result.columns.emplace_back("min_eig", std::move(min_eig));
  result.columns.emplace_back("tp_dev", std::move(tp_dev));
  result.columns.emplace_back("herm_dev", std::move(herm_dev));
  echo_common(result, cfg);
  return result;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  switch (cfg.scenario) {
    case Scenario::single_dd: return run_single_dd(cfg);
    case Scenario::optimal_coupling: return find_optimal_coupling(cfg);
    case Scenario::singlet_pair: return run_singlet_pair(cfg);
    case Scenario::measure_compare: return run_measure_compare(cfg);
    case Scenario::tomography_dump: return run_tomography_dump(cfg);
  }
  throw std::invalid_argument("run_scenario: unknown scenario");
}

std::vector<double> linear_grid(double start, double stop, int n) {
  if (n < 2) throw std::invalid_argument("grid needs at least 2 points");
  if (stop <= start) throw std::invalid_argument("grid needs stop > start");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = start + (stop - start) * i / (n - 1);
  }
  out.back() = stop;
  return out;
}

std::vector<double> log_grid(double start, double stop, int n) {
  if (n < 2) throw std::invalid_argument("grid needs at least 2 points");
  if (start <= 0.0) throw std::invalid_argument("log grid needs start > 0");
  if (stop <= start) throw std::invalid_argument("grid needs stop > start");
  std::vector<double> out(static_cast<std::size_t>(n));
  const double ratio = std::log(stop / start);
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = start * std::exp(ratio * i / (n - 1));
  }
  out.back() = stop;
  return out;
}

std::vector<double> sample_taus(const TimeGrid& grid) {
  grid.validate();
  const std::int64_t n_steps = grid.step_count();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n_steps / grid.stride) + 1);
  out.push_back(0.0);
  for (std::int64_t step = grid.stride; step <= n_steps; step += grid.stride) {
    out.push_back(static_cast<double>(step) * grid.dt);
  }
  return out;
}

}  // namespace qpcsim
