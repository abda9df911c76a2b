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

#include "qpcsim/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qpcsim {

namespace {

/// Clip integrator-level negatives and renormalize to a probability vector.
Eigen::VectorXd clipped_spectrum(const Eigen::VectorXd& values) {
  Eigen::VectorXd out = values;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (out(i) < 0.0) {
      if (out(i) < kPsdTol) {
        throw numerical_error("spectrum not positive semidefinite: eigenvalue " +
                              std::to_string(out(i)) + " < tolerance -1e-09");
      }
      out(i) = 0.0;
    }
  }
  const double total = out.sum();
  if (total > 0.0) out /= total;
  return out;
}

MatrixX hermitian_sqrt(const MatrixX& m) {
  EigenSystem es = hermitian_eigensystem(m);
  Eigen::VectorXd vals = es.values;
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    vals(i) = std::sqrt(std::max(0.0, vals(i)));
  }
  return es.vectors * vals.asDiagonal() * es.vectors.adjoint();
}

}  // namespace

double von_neumann_entropy(const DensityMatrix& rho) {
  const Eigen::VectorXd spectrum =
      clipped_spectrum(hermitian_eigenvalues(rho.matrix()));
  double s = 0.0;
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
    const double p = spectrum(i);
    if (p > 0.0) s -= p * std::log2(p);
  }
  const double cap = std::log2(static_cast<double>(rho.dim()));
  return std::clamp(s, 0.0, cap);
}

double binary_entropy(double x) {
  double s = 0.0;
  if (x > 0.0) s -= x * std::log2(x);
  if (x < 1.0) s -= (1.0 - x) * std::log2(1.0 - x);
  return s;
}

EntropySeries entanglement_entropy_series(const Trajectory& traj) {
  EntropySeries out;
  out.taus = traj.taus;
  out.values.reserve(traj.states.size());
  for (const DensityMatrix& state : traj.states) {
    out.values.push_back(von_neumann_entropy(state));
  }
  return out;
}

RateSeries entanglement_rate(const EntropySeries& s) {
  const std::size_t n = s.values.size();
  if (n < 3 || s.taus.size() != n) {
    throw std::invalid_argument("entanglement_rate: need at least 3 aligned samples");
  }
  const double h = s.taus[1] - s.taus[0];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (std::abs((s.taus[i + 1] - s.taus[i]) - h) > 1e-9 * std::max(1.0, std::abs(h))) {
      throw std::invalid_argument("entanglement_rate: grid is not uniform");
    }
  }

  RateSeries out;
  out.taus = s.taus;
  out.values.resize(n);
  const auto& v = s.values;
  out.values[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    out.values[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
  }
  out.values[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
  return out;
}

double concurrence(const DensityMatrix& rho) {
  if (rho.dim() != 4) {
    throw std::invalid_argument("concurrence: state must be 4x4");
  }
  // Work on the clipped, renormalized state so integrator drift cannot
  // push the spin-flipped product off the PSD cone.
  EigenSystem es = hermitian_eigensystem(rho.matrix());
  const Eigen::VectorXd spectrum = clipped_spectrum(es.values);
  const MatrixX cleaned =
      es.vectors * spectrum.cast<Complex>().asDiagonal() * es.vectors.adjoint();

  const MatrixX flip = tensor_product(pauli_y(), pauli_y());
  const MatrixX flipped = flip * cleaned.conjugate() * flip;
  const MatrixX root = hermitian_sqrt(cleaned);
  // Hermitian counterpart of rho * flipped with the same spectrum.
  const MatrixX w = root * flipped * root;

  Eigen::VectorXd vals = hermitian_eigenvalues(w);
  Eigen::Vector4d lambdas;
  for (int i = 0; i < 4; ++i) {
    lambdas(i) = std::sqrt(std::max(0.0, vals(3 - i)));  // descending
  }
  return std::max(0.0, lambdas(0) - lambdas(1) - lambdas(2) - lambdas(3));
}

double entropy_of_formation(const DensityMatrix& rho) {
  const double c = concurrence(rho);
  return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
}

std::optional<double> threshold_time(const EntropySeries& s, double level) {
  if (!(level > 0.0)) {
    throw std::invalid_argument("threshold_time: level must be > 0");
  }
  if (s.values.empty() || s.taus.size() != s.values.size()) {
    throw std::invalid_argument("threshold_time: empty or misaligned series");
  }
  if (s.values[0] >= level) return s.taus[0];
  for (std::size_t i = 1; i < s.values.size(); ++i) {
    if (s.values[i] >= level) {
      const double frac = (level - s.values[i - 1]) / (s.values[i] - s.values[i - 1]);
      return s.taus[i - 1] + frac * (s.taus[i] - s.taus[i - 1]);
    }
  }
  return std::nullopt;
}

}  // namespace qpcsim
