// Copyright 2026 The loqgate authors
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

#include "metrics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace loqgate {

namespace {

int qubit_dim(const GateMap& gate_map) {
  require(gate_map.entries.rows() == gate_map.entries.cols(), Errc::DimensionMismatch,
          "gate map must be square");
  require(gate_map.gram.rows() == gate_map.entries.rows() &&
              gate_map.gram.cols() == gate_map.entries.cols(),
          Errc::DimensionMismatch, "gate map gram must match the entries");
  int dim = static_cast<int>(gate_map.entries.rows());
  require(dim >= 2 && (dim & (dim - 1)) == 0, Errc::DimensionMismatch,
          "gate map side must be a power of two");
  return dim;
}

}  // namespace

GateMap GateMap::from_matrix(const Matrix& a) {
  require(a.rows() == a.cols(), Errc::DimensionMismatch, "gate map must be square");
  GateMap gm;
  gm.entries = a;
  gm.gram = a.adjoint() * a;
  int dim = static_cast<int>(a.rows());
  gm.n_qubits = 0;
  while ((1 << gm.n_qubits) < dim) ++gm.n_qubits;
  return gm;
}

double fidelity(const GateMap& gate_map, const Matrix& target) {
  int dim = qubit_dim(gate_map);
  require(target.rows() == dim && target.cols() == dim, Errc::DimensionMismatch,
          "gate map and target dimensions differ");
  double weight = gate_map.weight();
  require(weight > 1e-300, Errc::ZeroMap, "gate map is identically zero; fidelity undefined");
  Complex overlap = (gate_map.entries.adjoint() * target).trace();
  double f = std::norm(overlap) / (static_cast<double>(dim) * weight);
  return std::clamp(f, 0.0, 1.0);
}

double fidelity(const Matrix& gate_map, const Matrix& target) {
  return fidelity(GateMap::from_matrix(gate_map), target);
}

double success(const GateMap& gate_map, const Matrix& mode_matrix, int n_photons) {
  int dim = qubit_dim(gate_map);
  require(n_photons >= 0, Errc::InvalidArgument, "negative photon number");
  double device_norm = operator_norm(mode_matrix);
  return gate_map.weight() / (static_cast<double>(dim) * std::pow(device_norm, 2 * n_photons));
}

double success(const Matrix& gate_map, const Matrix& mode_matrix, int n_photons) {
  return success(GateMap::from_matrix(gate_map), mode_matrix, n_photons);
}

NormBounds norm_bounds(const GateMap& gate_map) {
  require(gate_map.gram.rows() == gate_map.gram.cols(), Errc::DimensionMismatch,
          "gate map gram must be square");
  // <psi|A^dag A|psi> extremes are the gram's eigenvalue range.
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gate_map.gram, Eigen::EigenvaluesOnly);
  const auto& ev = eig.eigenvalues();
  NormBounds b;
  b.min_sq = ev.size() ? std::max(0.0, ev(0)) : 0.0;
  b.max_sq = ev.size() ? std::max(0.0, ev(ev.size() - 1)) : 0.0;
  b.hs = gate_map.weight() / static_cast<double>(gate_map.gram.rows());
  return b;
}

NormBounds norm_bounds(const Matrix& gate_map) {
  return norm_bounds(GateMap::from_matrix(gate_map));
}

double operator_norm(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

double unitarity_error(const Matrix& u) {
  require(u.rows() == u.cols(), Errc::DimensionMismatch, "unitarity check needs a square matrix");
  Matrix residual = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
  return residual.cwiseAbs().maxCoeff();
}

}  // namespace loqgate
