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

#include <cstdint>
#include <vector>

#include "qpcsim/hermitian.hpp"
#include "qpcsim/types.hpp"

namespace qpcsim {

// Reduced dynamics of a double dot whose charge is continuously monitored
// by a point-contact detector. The detector back-action enters as pure
// dephasing of the position coherence at rate gamma_d:
//
//   d sigma / dt = -i [H, sigma] + gamma_d (P sigma P - {P, sigma} / 2)
//
// with H = eps_L |L><L| + eps_R |R><R| + omega0 (|L><R| + |R><L|) and
// P = |R><R|. Only the detuning epsilon = eps_R - eps_L matters.
//
// All rates are in units with hbar = 1. Trajectories are parameterized by
// the dimensionless time tau = omega0 * t; when omega0 = 0 (diagnostic
// mode, no tunneling) tau is absolute time instead.

struct GeneratorParams {
  double omega0 = 1.0;   // tunneling amplitude between the dots
  double epsilon = 0.0;  // level detuning of the right dot against the left
  double gamma_d = 0.0;  // detector-induced dephasing rate

  /// omega0 = 1 so that alpha and delta are the bare parameters.
  static GeneratorParams normalized(double alpha, double delta = 0.0);

  double alpha() const { return gamma_d / omega0; }
  double delta() const { return epsilon / omega0; }

  /// Seconds of absolute time per unit of trajectory time.
  double time_unit() const { return omega0 > 0.0 ? 1.0 / omega0 : 1.0; }

  void validate() const;
};

/// Microscopic detector parameters behind gamma_d = t1 * vd / (2 pi).
struct DetectorParams {
  double t1 = 0.0;    // transmission coefficient of the point contact, in [0, 1]
  double vd = 0.0;    // applied bias voltage
  double mu_l = 0.0;  // left reservoir potential (informational)

  double gamma_d() const;
  double mu_r() const { return mu_l - vd; }
  void validate() const;
};

/// Bloch-sphere angles of a pure initial state:
/// sigma11 = cos^2(theta/2), sigma12 = sin(theta/2) cos(theta/2) e^{-i phi}.
struct InitialStateParams {
  double theta = 0.0;  // radians, [0, 2 pi]
  double phi = 0.0;    // radians, [0, 2 pi]
  void validate() const;
};

struct TimeGrid {
  double tau_max = 10.0;
  double dt = 1e-3;           // integration step, in tau
  std::int64_t stride = 100;  // output decimation

  void validate() const;
  std::int64_t step_count() const;
};

/// States sampled every `stride` integration steps, starting at tau = 0.
struct Trajectory {
  TimeGrid grid;
  std::vector<double> taus;
  std::vector<DensityMatrix> states;

  std::size_t size() const { return states.size(); }
};

DensityMatrix initial_state(const InitialStateParams& p);

/// d sigma / dt written out entrywise (the production path for 2x2 states).
Matrix2 lindblad_derivative(const Matrix2& sigma, const GeneratorParams& g);

/// The same generator evaluated through the commutator/dissipator form.
/// Agrees with lindblad_derivative to machine precision.
Matrix2 lindblad_derivative_matrix_form(const Matrix2& sigma, const GeneratorParams& g);

/// Generator for a dot pair where only the first (slow-index) dot couples
/// to the detector. The second dot idles unless omega0_2 is nonzero.
Matrix4 pair_derivative(const Matrix4& rho, const GeneratorParams& g,
                        double omega0_2 = 0.0);

/// Fixed-step RK4 over the grid. Each step re-symmetrizes the state and
/// renormalizes the trace when it drifts beyond 1e-12; every stored sample
/// is validated, and a positivity violation raises numerical_error naming
/// the offending tau.
Trajectory evolve_single(const DensityMatrix& sigma0, const GeneratorParams& g,
                         const TimeGrid& grid);

/// Same integrator on the 4x4 pair state with the one-sided generator.
Trajectory evolve_pair_one_sided(const DensityMatrix& rho0, const GeneratorParams& g,
                                 const TimeGrid& grid, double omega0_2 = 0.0);

/// The generator as an explicit superoperator on column-stacked states
/// (4x4 for one dot, 16x16 for the pair), in absolute time units.
MatrixX liouvillian(const GeneratorParams& g, int dim, double omega0_2 = 0.0);

/// exp(a) by scaling-and-squaring with a truncated Taylor series
/// (terms dropped below a 1e-18 relative cutoff).
MatrixX matrix_exponential(const MatrixX& a);

/// Independent oracle: propagate by exponentiating the superoperator
/// instead of stepping the ODE.
DensityMatrix evolve_exact_oracle(const DensityMatrix& state0, const GeneratorParams& g,
                                  double tau, double omega0_2 = 0.0);

}  // namespace qpcsim
