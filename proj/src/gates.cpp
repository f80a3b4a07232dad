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

#include "gates.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>

#include "error.hpp"
#include "metrics.hpp"

namespace loqgate {

int TargetGate::n_qubits() const {
  int q = 0;
  Eigen::Index d = matrix.rows();
  while ((Eigen::Index{1} << q) < d) ++q;
  return q;
}

TargetGate target_gate(const std::string& name, double angle) {
  Matrix m = Matrix::Identity(4, 4);
  if (name == "cz") {
    m(3, 3) = -1.0;
  } else if (name == "cnot") {
    m(2, 2) = 0.0;
    m(3, 3) = 0.0;
    m(2, 3) = 1.0;
    m(3, 2) = 1.0;
  } else if (name == "cs") {
    m(3, 3) = std::polar(1.0, angle);
  } else {
    throw Error(Errc::InvalidArgument, "unknown target gate '" + name + "'");
  }
  return TargetGate{name, m};
}

TargetGate user_target(const Matrix& m, const std::string& name) {
  require(m.rows() == m.cols() && m.rows() > 0, Errc::DimensionMismatch,
          "target matrix must be square");
  Eigen::Index d = m.rows();
  require((d & (d - 1)) == 0 && d >= 2, Errc::DimensionMismatch,
          "target side must be a power of two");
  require(is_unitary(m, 1e-10), Errc::NotUnitary, "target matrix is not unitary");
  return TargetGate{name, m};
}

std::vector<int> active_modes(int n_modes, const std::vector<int>& passive_modes) {
  std::vector<char> is_passive(static_cast<size_t>(n_modes) + 1, 0);
  for (int p : passive_modes) {
    require(p >= 1 && p <= n_modes, Errc::InvalidArgument, "passive mode out of range");
    require(!is_passive[static_cast<size_t>(p)], Errc::InvalidArgument,
            "duplicate passive mode");
    is_passive[static_cast<size_t>(p)] = 1;
  }
  std::vector<int> act;
  for (int m = 1; m <= n_modes; ++m)
    if (!is_passive[static_cast<size_t>(m)]) act.push_back(m);
  return act;
}

Matrix embed_ansatz(const Matrix& active_block, int n_modes, const std::vector<int>& passive_modes) {
  std::vector<int> act = active_modes(n_modes, passive_modes);
  require(active_block.rows() == active_block.cols(), Errc::DimensionMismatch,
          "active block must be square");
  require(static_cast<Eigen::Index>(act.size()) == active_block.rows(), Errc::DimensionMismatch,
          "active block side must equal n_modes minus passive count");
  Matrix u = Matrix::Identity(n_modes, n_modes);
  for (size_t a = 0; a < act.size(); ++a)
    for (size_t b = 0; b < act.size(); ++b)
      u(act[a] - 1, act[b] - 1) = active_block(static_cast<Eigen::Index>(a),
                                               static_cast<Eigen::Index>(b));
  return u;
}

Matrix extract_active_block(const Matrix& u, const std::vector<int>& passive_modes) {
  int n = static_cast<int>(u.rows());
  std::vector<int> act = active_modes(n, passive_modes);
  Matrix block(act.size(), act.size());
  for (size_t a = 0; a < act.size(); ++a)
    for (size_t b = 0; b < act.size(); ++b)
      block(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          u(act[a] - 1, act[b] - 1);
  return block;
}

Matrix random_unitary(int n, std::mt19937_64& rng) {
  require(n >= 1, Errc::InvalidArgument, "matrix size must be positive");
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the gauge so the distribution is Haar rather than QR-convention biased.
  for (int j = 0; j < n; ++j) {
    Complex d = r(j, j);
    double a = std::abs(d);
    q.col(j) *= (a > 0.0) ? d / a : Complex(1.0, 0.0);
  }
  return q;
}

}  // namespace loqgate
