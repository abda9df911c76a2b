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

#include "qpcsim/types.hpp"

namespace qpcsim {

// Dense complex matrix kernel for the small dimensions used throughout the
// project (2 and 4 for states, up to 16 for superoperators). All functions
// are pure; none mutate their arguments.

inline constexpr int kMaxDim = 16;

// DensityMatrix construction tolerances.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = -1e-9;

/// Kronecker product a (x) b with the left factor as the slow index:
/// out(i*db + k, j*db + l) = a(i, j) * b(k, l).
template <typename DerivedA, typename DerivedB>
MatrixX tensor_product(const Eigen::MatrixBase<DerivedA>& a,
                       const Eigen::MatrixBase<DerivedB>& b) {
  const Eigen::Index da = a.rows();
  const Eigen::Index db = b.rows();
  if (da != a.cols() || db != b.cols()) {
    throw std::invalid_argument("tensor_product: factors must be square");
  }
  if (da * db > kMaxDim) {
    throw std::invalid_argument(
        "tensor_product: result dimension " + std::to_string(da * db) +
        " exceeds the supported range (max " + std::to_string(kMaxDim) + ")");
  }
  MatrixX out(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < da; ++j) {
      out.block(i * db, j * db, db, db) = Complex(a(i, j)) * b.derived();
    }
  }
  return out;
}

/// Trace out one side of a 4x4 bipartite matrix. keep = 1 keeps the slow
/// (first) factor, keep = 2 the fast (second) one. Works for any matrix,
/// not just unit-trace states, so it also serves the Choi diagnostics.
template <typename Derived>
Matrix2 partial_trace(const Eigen::MatrixBase<Derived>& m, int keep) {
  if (m.rows() != 4 || m.cols() != 4) {
    throw std::invalid_argument("partial_trace: expected a 4x4 matrix");
  }
  if (keep != 1 && keep != 2) {
    throw std::invalid_argument("partial_trace: keep must be 1 or 2");
  }
  Matrix2 out = Matrix2::Zero();
  if (keep == 1) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) out(i, j) += m(2 * i + k, 2 * j + k);
  } else {
    for (int k = 0; k < 2; ++k)
      for (int l = 0; l < 2; ++l)
        for (int i = 0; i < 2; ++i) out(k, l) += m(2 * i + k, 2 * i + l);
  }
  return out;
}

/// sqrt(sum_ij |a_ij - b_ij|^2).
template <typename DerivedA, typename DerivedB>
double frobenius_distance(const Eigen::MatrixBase<DerivedA>& a,
                          const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("frobenius_distance: dimension mismatch");
  }
  return (a.derived() - b.derived()).norm();
}

/// Largest entrywise deviation from Hermiticity, max |m - m^dagger|.
template <typename Derived>
double hermiticity_deviation(const Eigen::MatrixBase<Derived>& m) {
  return (m.derived() - m.derived().adjoint()).cwiseAbs().maxCoeff();
}

struct EigenSystem {
  Eigen::VectorXd values;  // ascending
  MatrixX vectors;         // matching columns, orthonormal
};

/// Full eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
/// The input is symmetrized as (m + m^dagger)/2 first; deviations beyond
/// 1e-8 are rejected. Convergence is declared when the off-diagonal norm
/// drops below 1e-12; more than 100 sweeps raises numerical_error.
EigenSystem hermitian_eigensystem(const MatrixX& m);

/// Eigenvalues only, ascending.
Eigen::VectorXd hermitian_eigenvalues(const MatrixX& m);

/// A square complex matrix validated as a physical state: Hermitian within
/// 1e-10, unit trace within 1e-10, and positive semidefinite within -1e-9
/// (small negative eigenvalues from integration drift are tolerated but
/// never silently repaired in the stored matrix).
class DensityMatrix {
 public:
  /// Validates on construction; throws numerical_error naming the violated
  /// tolerance otherwise.
  explicit DensityMatrix(MatrixX mat);

  const MatrixX& matrix() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }

 private:
  MatrixX mat_;
};

/// Reduced state on one side of a 4x4 density matrix.
DensityMatrix partial_trace_state(const DensityMatrix& rho, int keep);

}  // namespace qpcsim
