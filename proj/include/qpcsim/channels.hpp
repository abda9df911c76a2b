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

#include <vector>

#include "qpcsim/dynamics.hpp"
#include "qpcsim/hermitian.hpp"

namespace qpcsim {

// Tomographic characterization of the detector-induced single-dot channel
// at a fixed time. Choi convention throughout:
//
//   J(L) = sum_kl |k><l| (x) L(|k><l|)     (input index slow)
//
// so a trace-preserving channel has Tr J = 2 and tracing out the output
// factor leaves the 2x2 identity.

/// Choi matrix of a single-dot channel. Plain data: invariants are probed
/// by verify_cptp, not enforced here, so defective matrices can be
/// represented and diagnosed.
struct ChoiMatrix {
  Matrix4 mat;
};

/// Operator-sum form; completeness sum K_i^dagger K_i = I holds to 1e-6
/// for any set produced by choi_to_kraus.
struct KrausSet {
  std::vector<Matrix2> ops;
};

struct CptpReport {
  double min_eigenvalue;        // of the Hermitian part; >= -1e-8 for CP
  double tp_deviation;          // Frobenius norm of Tr_out J - I
  double hermiticity_deviation; // max |J - J^dagger|
};

/// Choi matrix of the identity channel.
ChoiMatrix identity_choi();

/// Reconstruct the channel at time tau by evolving the four probe inputs
/// |L><L|, |R><R|, |+><+|, |+i><+i| and extending linearly to the
/// off-diagonal units. grid_dt is shrunk when needed so the integration
/// lands exactly on tau.
ChoiMatrix tomograph(const GeneratorParams& g, double tau, double grid_dt = 1e-3);

/// One Choi matrix per stored sample of the grid, from a single pass over
/// the four probe evolutions. Sample k equals tomograph at the same tau.
std::vector<ChoiMatrix> tomograph_series(const GeneratorParams& g, const TimeGrid& grid);

/// Eigendecompose the Choi matrix and keep every eigenvalue above 1e-10 as
/// a Kraus operator. An eigenvalue below -1e-8 means the map is not
/// completely positive and raises numerical_error.
KrausSet choi_to_kraus(const ChoiMatrix& j);

/// Action of the channel on a single-dot operator via Choi contraction.
Matrix2 apply_channel(const ChoiMatrix& j, const Matrix2& rho);

/// Operator-sum action, sum_i K rho K^dagger.
Matrix2 apply_kraus(const KrausSet& k, const Matrix2& rho);

/// (Lambda (x) I) rho for a 4x4 pair state, contracting only the slow
/// (monitored) index.
DensityMatrix apply_one_sided(const ChoiMatrix& j, const DensityMatrix& rho);

/// Diagnostics only; thresholds are the caller's business.
CptpReport verify_cptp(const ChoiMatrix& j);

}  // namespace qpcsim
