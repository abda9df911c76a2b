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

#include "qpcsim/channels.hpp"

#include <array>
#include <cmath>
#include <string>

namespace qpcsim {

namespace {

constexpr double kKrausRankCutoff = 1e-10;
constexpr double kCpTol = -1e-8;

std::array<DensityMatrix, 4> probe_states() {
  Matrix2 plus;
  plus << 0.5, 0.5, 0.5, 0.5;
  Matrix2 plus_i;
  plus_i << Complex(0.5, 0.0), Complex(0.0, -0.5), Complex(0.0, 0.5), Complex(0.5, 0.0);
  return {DensityMatrix(MatrixX(projector_left())),
          DensityMatrix(MatrixX(projector_right())),
          DensityMatrix(MatrixX(plus)), DensityMatrix(MatrixX(plus_i))};
}

/// Assemble the Choi matrix from the channel images of the four probes.
ChoiMatrix assemble_choi(const Matrix2& out_ll, const Matrix2& out_rr,
                         const Matrix2& out_plus, const Matrix2& out_plus_i) {
  // |L><R| = |+><+| + i|+i><+i| - (1+i)/2 (|L><L| + |R><R|), so linearity
  // gives the image of the off-diagonal unit; its adjoint gives the other.
  const Matrix2 out_lr =
      out_plus + kImag * out_plus_i - (0.5 * Complex(1.0, 1.0)) * (out_ll + out_rr);
  const Matrix2 out_rl = out_lr.adjoint();

  ChoiMatrix j;
  j.mat.block<2, 2>(0, 0) = out_ll;
  j.mat.block<2, 2>(0, 2) = out_lr;
  j.mat.block<2, 2>(2, 0) = out_rl;
  j.mat.block<2, 2>(2, 2) = out_rr;
  return j;
}

}  // namespace

ChoiMatrix identity_choi() {
  const auto probes = probe_states();
  return assemble_choi(probes[0].matrix(), probes[1].matrix(), probes[2].matrix(),
                       probes[3].matrix());
}

ChoiMatrix tomograph(const GeneratorParams& g, double tau, double grid_dt) {
  if (tau < 0.0) throw std::invalid_argument("tomograph: tau must be >= 0");
  if (tau == 0.0) return identity_choi();

  // Land exactly on tau by dividing it into an integer number of steps.
  const auto n_steps = static_cast<std::int64_t>(std::ceil(tau / grid_dt - 1e-12));
  const TimeGrid grid{tau, tau / static_cast<double>(n_steps), n_steps};

  const auto probes = probe_states();
  std::array<Matrix2, 4> outs;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const Trajectory traj = evolve_single(probes[i], g, grid);
    outs[i] = traj.states.back().matrix();
  }
  return assemble_choi(outs[0], outs[1], outs[2], outs[3]);
}

std::vector<ChoiMatrix> tomograph_series(const GeneratorParams& g, const TimeGrid& grid) {
  const auto probes = probe_states();
  std::array<Trajectory, 4> trajs;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    trajs[i] = evolve_single(probes[i], g, grid);
  }
  const std::size_t n = trajs[0].states.size();
  std::vector<ChoiMatrix> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(assemble_choi(
        Matrix2(trajs[0].states[k].matrix()), Matrix2(trajs[1].states[k].matrix()),
        Matrix2(trajs[2].states[k].matrix()), Matrix2(trajs[3].states[k].matrix())));
  }
  return out;
}

KrausSet choi_to_kraus(const ChoiMatrix& j) {
  const EigenSystem es = hermitian_eigensystem(MatrixX(j.mat));
  if (es.values.minCoeff() < kCpTol) {
    throw numerical_error("choi_to_kraus: channel not completely positive, eigenvalue " +
                          std::to_string(es.values.minCoeff()) +
                          " < tolerance -1e-08");
  }
  KrausSet out;
  for (Eigen::Index k = es.values.size() - 1; k >= 0; --k) {  // largest first
    const double mu = es.values(k);
    if (mu <= kKrausRankCutoff) continue;
    const VectorX v = es.vectors.col(k);
    Matrix2 op;
    // Choi column index (i, out) with the input slow: v(2 i + out).
    for (int in = 0; in < 2; ++in)
      for (int o = 0; o < 2; ++o) op(o, in) = std::sqrt(mu) * v(2 * in + o);
    out.ops.push_back(op);
  }
  return out;
}

Matrix2 apply_channel(const ChoiMatrix& j, const Matrix2& rho) {
  Matrix2 out = Matrix2::Zero();
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l)
      for (int i = 0; i < 2; ++i)
        for (int jj = 0; jj < 2; ++jj)
          out(k, l) += j.mat(2 * i + k, 2 * jj + l) * rho(i, jj);
  return out;
}

Matrix2 apply_kraus(const KrausSet& k, const Matrix2& rho) {
  Matrix2 out = Matrix2::Zero();
  for (const Matrix2& op : k.ops) out += op * rho * op.adjoint();
  return out;
}

DensityMatrix apply_one_sided(const ChoiMatrix& j, const DensityMatrix& rho) {
  if (rho.dim() != 4) {
    throw std::invalid_argument("apply_one_sided: state must be 4x4");
  }
  const MatrixX& r = rho.matrix();
  Matrix4 out = Matrix4::Zero();
  for (int k = 0; k < 2; ++k)
    for (int m = 0; m < 2; ++m)
      for (int l = 0; l < 2; ++l)
        for (int n = 0; n < 2; ++n)
          for (int i = 0; i < 2; ++i)
            for (int jj = 0; jj < 2; ++jj)
              out(2 * k + m, 2 * l + n) +=
                  j.mat(2 * i + k, 2 * jj + l) * r(2 * i + m, 2 * jj + n);

  const double tr = out.trace().real();
  if (std::abs(tr - 1.0) > 1e-8) {
    throw numerical_error("apply_one_sided: trace drifted to " + std::to_string(tr) +
                          ", beyond tolerance 1e-08");
  }
  out /= tr;
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix(MatrixX(out));
}

CptpReport verify_cptp(const ChoiMatrix& j) {
  CptpReport report{};
  report.hermiticity_deviation = hermiticity_deviation(j.mat);
  const Matrix4 herm = 0.5 * (j.mat + j.mat.adjoint());
  report.min_eigenvalue = hermitian_eigenvalues(MatrixX(herm)).minCoeff();
  report.tp_deviation = (partial_trace(j.mat, 1) - Matrix2::Identity()).norm();
  return report;
}

}  // namespace qpcsim
