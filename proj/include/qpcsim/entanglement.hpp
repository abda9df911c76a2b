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

#include <optional>
#include <vector>

#include "qpcsim/dynamics.hpp"
#include "qpcsim/hermitian.hpp"

namespace qpcsim {

// Entanglement and mixedness measures. All entropies are in bits
// (logarithms base 2), so a qubit saturates at 1 and a dot pair at 2.

struct EntropySeries {
  std::vector<double> taus;
  std::vector<double> values;  // bits
};

struct RateSeries {
  std::vector<double> taus;
  std::vector<double> values;  // bits per unit tau
};

/// -sum lambda_i log2 lambda_i with 0 log 0 := 0. Eigenvalues in
/// [-1e-9, 0) are clipped to zero and the spectrum renormalized; anything
/// more negative raises numerical_error.
double von_neumann_entropy(const DensityMatrix& rho);

/// Binary entropy h(x) = -x log2 x - (1-x) log2(1-x).
double binary_entropy(double x);

/// Pointwise entropy of every stored state. For a globally pure
/// system-plus-detector state this is the entanglement with the detector.
EntropySeries entanglement_entropy_series(const Trajectory& traj);

/// dS/dtau by central differences, with second-order one-sided stencils at
/// the ends. Requires at least 3 samples on a uniform grid.
RateSeries entanglement_rate(const EntropySeries& s);

/// Wootters concurrence of a two-qubit state,
/// C = max(0, l1 - l2 - l3 - l4) with l_i the descending square roots of
/// the eigenvalues of rho (sy x sy) rho* (sy x sy).
double concurrence(const DensityMatrix& rho);

/// EoF = h((1 + sqrt(1 - C^2)) / 2), bits.
double entropy_of_formation(const DensityMatrix& rho);

/// Smallest tau with S(tau) >= level, linearly interpolated between the
/// bracketing samples; nullopt if the level is never reached.
std::optional<double> threshold_time(const EntropySeries& s, double level);

}  // namespace qpcsim
