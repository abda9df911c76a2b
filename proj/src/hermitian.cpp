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

#include "qpcsim/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace qpcsim {

namespace {

constexpr double kJacobiOffTol = 1e-12;
constexpr int kJacobiMaxSweeps = 100;

double off_diagonal_norm(const MatrixX& a) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (i != j) s += std::norm(a(i, j));
    }
  }
  return std::sqrt(s);
}

}  // namespace

EigenSystem hermitian_eigensystem(const MatrixX& m) {
  const Eigen::Index n = m.rows();
  if (n != m.cols() || n == 0) {
    throw std::invalid_argument("hermitian_eigensystem: matrix must be square");
  }
  if (!m.allFinite()) {
    throw std::invalid_argument("hermitian_eigensystem: matrix has non-finite entries");
  }
  if (hermiticity_deviation(m) > 1e-8) {
    throw std::invalid_argument(
        "hermitian_eigensystem: matrix is not Hermitian within 1e-8");
  }

  MatrixX a = 0.5 * (m + m.adjoint());
  MatrixX v = MatrixX::Identity(n, n);

  bool converged = false;
  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= kJacobiOffTol) {
      converged = true;
      break;
    }
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double amag = std::abs(apq);
        if (amag < 1e-300) continue;

        // Phase-fix the pivot so the 2x2 block becomes real symmetric,
        // then apply the classical Jacobi rotation that annihilates it.
        const Complex phase = apq / amag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double zeta = (aqq - app) / (2.0 * amag);
        const double t =
            (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // U differs from the identity only at
        //   U(p,p) = c           U(p,q) = s
        //   U(q,p) = -s*conj(ph) U(q,q) = c*conj(ph)
        const Complex sp = s * std::conj(phase);
        const Complex cp = c * std::conj(phase);

        // a <- a U
        VectorX col_p = a.col(p) * c - a.col(q) * sp;
        VectorX col_q = a.col(p) * s + a.col(q) * cp;
        a.col(p) = col_p;
        a.col(q) = col_q;
        // a <- U^dagger a
        VectorX row_p = a.row(p).transpose() * c - a.row(q).transpose() * (s * phase);
        VectorX row_q = a.row(p).transpose() * s + a.row(q).transpose() * (c * phase);
        a.row(p) = row_p.transpose();
        a.row(q) = row_q.transpose();
        // v <- v U
        VectorX vcol_p = v.col(p) * c - v.col(q) * sp;
        VectorX vcol_q = v.col(p) * s + v.col(q) * cp;
        v.col(p) = vcol_p;
        v.col(q) = vcol_q;

        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }
  if (!converged && off_diagonal_norm(a) > kJacobiOffTol) {
    throw numerical_error(
        "hermitian_eigensystem: Jacobi iteration did not converge within " +
        std::to_string(kJacobiMaxSweeps) + " sweeps");
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&a](Eigen::Index i, Eigen::Index j) {
    return a(i, i).real() < a(j, j).real();
  });

  EigenSystem out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[k], order[k]).real();
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

Eigen::VectorXd hermitian_eigenvalues(const MatrixX& m) {
  return hermitian_eigensystem(m).values;
}

DensityMatrix::DensityMatrix(MatrixX mat) : mat_(std::move(mat)) {
  const Eigen::Index n = mat_.rows();
  if (n != mat_.cols() || (n != 2 && n != 4)) {
    throw std::invalid_argument("DensityMatrix: dimension must be 2 or 4");
  }
  if (!mat_.allFinite()) {
    throw numerical_error("density matrix has non-finite entries");
  }
  const double herm = hermiticity_deviation(mat_);
  if (herm > kHermitianTol) {
    throw numerical_error("density matrix not Hermitian: deviation " +
                          std::to_string(herm) + " > tolerance 1e-10");
  }
  const double trace_err = std::abs(mat_.trace() - Complex(1.0));
  if (trace_err > kTraceTol) {
    throw numerical_error("density matrix trace differs from 1 by " +
                          std::to_string(trace_err) + " > tolerance 1e-10");
  }
  const double min_eig = hermitian_eigenvalues(mat_).minCoeff();
  if (min_eig < kPsdTol) {
    throw numerical_error("density matrix not positive semidefinite: min eigenvalue " +
                          std::to_string(min_eig) + " < tolerance -1e-09");
  }
}

DensityMatrix partial_trace_state(const DensityMatrix& rho, int keep) {
  if (rho.dim() != 4) {
    throw std::invalid_argument("partial_trace_state: state must be 4x4");
  }
  return DensityMatrix(partial_trace(rho.matrix(), keep));
}

}  // namespace qpcsim
