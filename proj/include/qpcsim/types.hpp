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

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace qpcsim {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;
using MatrixX = Eigen::MatrixXcd;
using Vector2 = Eigen::Vector2cd;
using Vector4 = Eigen::Vector4cd;
using VectorX = Eigen::VectorXcd;

inline constexpr Complex kImag{0.0, 1.0};

/// An iteration failed to converge, or a state drifted outside its
/// numerical tolerances (positivity, trace, Hermiticity).
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An output sink could not be written.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Single-dot basis is {|L>, |R>} (electron in the left or right dot).
// Two-dot product basis is {LL, LR, RL, RR} with the monitored dot as the
// left (slow) index. Every matrix literal in the project assumes this order.

inline Matrix2 identity2() { return Matrix2::Identity(); }

inline Matrix2 pauli_x() {
  Matrix2 m;
  m << 0, 1, 1, 0;
  return m;
}

inline Matrix2 pauli_y() {
  Matrix2 m;
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

inline Matrix2 pauli_z() {
  Matrix2 m;
  m << 1, 0, 0, -1;
  return m;
}

/// Projector onto the left dot, |L><L|.
inline Matrix2 projector_left() {
  Matrix2 m = Matrix2::Zero();
  m(0, 0) = 1;
  return m;
}

/// Projector onto the right dot, |R><R|.
inline Matrix2 projector_right() {
  Matrix2 m = Matrix2::Zero();
  m(1, 1) = 1;
  return m;
}

/// Density matrix of the two-dot singlet (|LR> - |RL>)/sqrt(2).
inline Matrix4 singlet_matrix() {
  Vector4 psi;
  psi << 0, 1, -1, 0;
  psi /= std::sqrt(2.0);
  return psi * psi.adjoint();
}

}  // namespace qpcsim
