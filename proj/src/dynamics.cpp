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

#include "qpcsim/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qpcsim {

namespace {

Matrix2 single_hamiltonian(const GeneratorParams& g) {
  // Only the detuning epsilon = eps_R - eps_L is physical; put it on |R><R|.
  Matrix2 h;
  h << 0.0, g.omega0, g.omega0, g.epsilon;
  return h;
}

template <typename Mat, typename Deriv>
Trajectory integrate(const Mat& start, const TimeGrid& grid, double time_unit,
                     Deriv&& derivative) {
  grid.validate();
  const double h = grid.dt * time_unit;
  const std::int64_t n_steps = grid.step_count();

  Trajectory traj;
  traj.grid = grid;
  traj.taus.reserve(static_cast<std::size_t>(n_steps / grid.stride) + 2);
  traj.states.reserve(traj.taus.capacity());

  Mat state = start;
  auto store = [&](std::int64_t step) {
    const double tau = static_cast<double>(step) * grid.dt;
    try {
      traj.states.emplace_back(MatrixX(state));
    } catch (const numerical_error& e) {
      throw numerical_error("evolution failed at tau=" + std::to_string(tau) +
                            ": " + e.what());
    }
    traj.taus.push_back(tau);
  };

  store(0);
  for (std::int64_t step = 1; step <= n_steps; ++step) {
    const Mat k1 = derivative(state);
    const Mat k2 = derivative(Mat(state + (h / 2.0) * k1));
    const Mat k3 = derivative(Mat(state + (h / 2.0) * k2));
    const Mat k4 = derivative(Mat(state + h * k3));
    state += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    state = 0.5 * (state + state.adjoint()).eval();
    const double tr = state.trace().real();
    if (std::abs(tr - 1.0) > 1e-12) state /= tr;

    if (step % grid.stride == 0) store(step);
  }
  return traj;
}

}  // namespace

GeneratorParams GeneratorParams::normalized(double alpha, double delta) {
  GeneratorParams g{1.0, delta, alpha};
  g.validate();
  return g;
}

void GeneratorParams::validate() const {
  if (omega0 < 0.0) throw std::invalid_argument("omega0 must be >= 0");
  if (gamma_d < 0.0) throw std::invalid_argument("gamma_d must be >= 0");
}

double DetectorParams::gamma_d() const { return t1 * vd / (2.0 * std::numbers::pi); }

void DetectorParams::validate() const {
  if (t1 < 0.0 || t1 > 1.0) throw std::invalid_argument("t1 must lie in [0, 1]");
  if (vd < 0.0) throw std::invalid_argument("vd must be >= 0");
}

void InitialStateParams::validate() const {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (theta < 0.0 || theta > two_pi) {
    throw std::invalid_argument("theta must lie in [0, 2 pi]");
  }
  if (phi < 0.0 || phi > two_pi) {
    throw std::invalid_argument("phi must lie in [0, 2 pi]");
  }
}

void TimeGrid::validate() const {
  if (!(tau_max > 0.0)) throw std::invalid_argument("tau_max must be > 0");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  if (dt > 0.01 + 1e-15) throw std::invalid_argument("dt must be <= 0.01");
  if (tau_max / dt > 1e8) {
    throw std::invalid_argument("tau_max/dt must be <= 1e8");
  }
  if (stride < 1) throw std::invalid_argument("stride must be >= 1");
}

std::int64_t TimeGrid::step_count() const {
  return std::llround(tau_max / dt);
}

DensityMatrix initial_state(const InitialStateParams& p) {
  p.validate();
  const double c = std::cos(p.theta / 2.0);
  const double s = std::sin(p.theta / 2.0);
  Matrix2 sigma;
  sigma(0, 0) = c * c;
  sigma(1, 1) = 1.0 - c * c;
  sigma(0, 1) = s * c * std::exp(Complex(0.0, -p.phi));
  sigma(1, 0) = std::conj(sigma(0, 1));
  return DensityMatrix(MatrixX(sigma));
}

Matrix2 lindblad_derivative(const Matrix2& sigma, const GeneratorParams& g) {
  const Complex d11 = kImag * g.omega0 * (sigma(0, 1) - sigma(1, 0));
  const Complex d12 = kImag * g.epsilon * sigma(0, 1) +
                      kImag * g.omega0 * (sigma(0, 0) - sigma(1, 1)) -
                      0.5 * g.gamma_d * sigma(0, 1);
  Matrix2 out;
  out(0, 0) = d11;
  out(1, 1) = -d11;
  out(0, 1) = d12;
  out(1, 0) = std::conj(d12);
  return out;
}

Matrix2 lindblad_derivative_matrix_form(const Matrix2& sigma, const GeneratorParams& g) {
  const Matrix2 h = single_hamiltonian(g);
  const Matrix2 p = projector_right();
  Matrix2 out = -kImag * (h * sigma - sigma * h);
  out += g.gamma_d * (p * sigma * p - 0.5 * (p * sigma + sigma * p));
  return out;
}

Matrix4 pair_derivative(const Matrix4& rho, const GeneratorParams& g, double omega0_2) {
  Matrix4 h = tensor_product(single_hamiltonian(g), identity2());
  if (omega0_2 != 0.0) {
    h += omega0_2 * tensor_product(identity2(), pauli_x());
  }
  const Matrix4 p = tensor_product(projector_right(), identity2());
  Matrix4 out = -kImag * (h * rho - rho * h);
  out += g.gamma_d * (p * rho * p - 0.5 * (p * rho + rho * p));
  return out;
}

Trajectory evolve_single(const DensityMatrix& sigma0, const GeneratorParams& g,
                         const TimeGrid& grid) {
  g.validate();
  if (sigma0.dim() != 2) {
    throw std::invalid_argument("evolve_single: state must be 2x2");
  }
  const Matrix2 start = sigma0.matrix();
  return integrate(start, grid, g.time_unit(),
                   [&g](const Matrix2& s) { return lindblad_derivative(s, g); });
}

Trajectory evolve_pair_one_sided(const DensityMatrix& rho0, const GeneratorParams& g,
                                 const TimeGrid& grid, double omega0_2) {
  g.validate();
  if (rho0.dim() != 4) {
    throw std::invalid_argument("evolve_pair_one_sided: state must be 4x4");
  }
  const Matrix4 start = rho0.matrix();
  return integrate(start, grid, g.time_unit(), [&g, omega0_2](const Matrix4& r) {
    return pair_derivative(r, g, omega0_2);
  });
}

MatrixX liouvillian(const GeneratorParams& g, int dim, double omega0_2) {
  if (dim != 2 && dim != 4) {
    throw std::invalid_argument("liouvillian: dim must be 2 or 4");
  }
  MatrixX h, jump;
  if (dim == 2) {
    h = single_hamiltonian(g);
    jump = std::sqrt(g.gamma_d) * projector_right();
  } else {
    h = tensor_product(single_hamiltonian(g), identity2());
    if (omega0_2 != 0.0) h += omega0_2 * tensor_product(identity2(), pauli_x());
    jump = std::sqrt(g.gamma_d) * tensor_product(projector_right(), identity2());
  }
  const MatrixX id = MatrixX::Identity(dim, dim);
  const MatrixX jdj = jump.adjoint() * jump;
  // Column stacking: vec(A X B) = (B^T (x) A) vec(X).
  MatrixX l = -kImag * (tensor_product(id, h) - tensor_product(h.transpose(), id));
  l += tensor_product(jump.conjugate(), jump);
  l -= 0.5 * (tensor_product(id, jdj) + tensor_product(jdj.transpose(), id));
  return l;
}

MatrixX matrix_exponential(const MatrixX& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("matrix_exponential: matrix must be square");
  }
  const Eigen::Index n = a.rows();
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  }
  const MatrixX b = a / std::pow(2.0, squarings);

  MatrixX result = MatrixX::Identity(n, n);
  MatrixX term = MatrixX::Identity(n, n);
  for (int k = 1; k <= 200; ++k) {
    term = (term * b) / static_cast<double>(k);
    result += term;
    if (term.norm() < 1e-18 * result.norm()) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

DensityMatrix evolve_exact_oracle(const DensityMatrix& state0, const GeneratorParams& g,
                                  double tau, double omega0_2) {
  g.validate();
  if (tau < 0.0) throw std::invalid_argument("evolve_exact_oracle: tau must be >= 0");
  const int dim = static_cast<int>(state0.dim());
  const double t_abs = tau * g.time_unit();

  const MatrixX propagator = matrix_exponential(MatrixX(liouvillian(g, dim, omega0_2) * t_abs));
  const VectorX vec_in =
      Eigen::Map<const VectorX>(state0.matrix().data(), dim * dim);
  const VectorX vec_out = propagator * vec_in;
  MatrixX out = Eigen::Map<const MatrixX>(vec_out.data(), dim, dim);
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix(out);
}

}  // namespace qpcsim
