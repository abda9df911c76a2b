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

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qpcsim/channels.hpp"
#include "qpcsim/dynamics.hpp"
#include "qpcsim/entanglement.hpp"

namespace qpcsim {

// Scenario runners. Each one turns a resolved configuration into a table
// of named series over a common axis plus scalar findings. They do no I/O;
// the CLI layer owns files.

enum class Scenario {
  single_dd,        // monitored dot from a pure initial state: S and R
  optimal_coupling, // entanglement time across a coupling grid
  singlet_pair,     // dot pair from the singlet, one side monitored
  measure_compare,  // unitary-plus-dephasing vs projection-averaged start
  tomography_dump,  // channel matrices and CPTP diagnostics over time
};

std::string scenario_name(Scenario s);
Scenario parse_scenario(const std::string& name);

struct ScenarioConfig {
  Scenario scenario = Scenario::single_dd;
  double alpha = 5.0;              // gamma_d / omega0
  std::vector<double> alpha_grid;  // optimal_coupling only, ascending
  double theta_deg = 0.0;
  double phi_deg = 0.0;
  double delta = 0.0;  // epsilon / omega0
  TimeGrid grid{10.0, 1e-3, 100};
  double threshold_level = 0.95;  // of the 1-bit single-dot ceiling
  bool thorough = false;          // cross-check every sample, not just 5
  std::string out_csv;            // empty = no file
  std::string out_svg;

  void validate() const;
};

struct ScenarioResult {
  std::string axis_label = "tau";
  std::vector<double> axis;
  std::vector<std::pair<std::string, std::vector<double>>> columns;
  std::vector<std::pair<std::string, std::string>> metadata;  // resolved config echo
  std::vector<std::pair<std::string, double>> summary;        // NaN = not reached
};

/// Entropy and entanglement rate of the monitored dot. The summary lists
/// the threshold-crossing time at levels 0.90 / 0.95 / 0.99 of the 1-bit
/// ceiling (plus the configured level when it differs).
ScenarioResult run_single_dd(const ScenarioConfig& cfg);

/// Grid search for the coupling that minimizes the entanglement time from
/// a left-localized start. Couplings that never reach the level are kept
/// in the table as NaN and excluded from the argmin.
ScenarioResult find_optimal_coupling(const ScenarioConfig& cfg);

/// Dot pair prepared in the singlet with one side monitored: entanglement
/// of formation and concurrence between the dots, entropy of the pair.
ScenarioResult run_singlet_pair(const ScenarioConfig& cfg);

/// Projection-postulate average over the monitored dot's position:
/// rho_M = sum_X Tr((X (x) I) rho) * normalized((X (x) I) rho (X (x) I))
/// over X in {|L><L|, |R><R|}, dropping branches below probability 1e-12.
DensityMatrix collapse_average(const DensityMatrix& rho);

/// Frobenius distance between the evolved singlet and the evolved
/// collapse average, with the entanglement of formation of both branches.
ScenarioResult run_measure_compare(const ScenarioConfig& cfg);

/// Choi entries (32 real columns) and CPTP diagnostics per sampled tau.
ScenarioResult run_tomography_dump(const ScenarioConfig& cfg);

ScenarioResult run_scenario(const ScenarioConfig& cfg);

/// n evenly spaced values including both endpoints.
std::vector<double> linear_grid(double start, double stop, int n);

/// n logarithmically spaced values including both endpoints; start > 0.
std::vector<double> log_grid(double start, double stop, int n);

/// Sample times the integrator stores for this grid.
std::vector<double> sample_taus(const TimeGrid& grid);

}  // namespace qpcsim
