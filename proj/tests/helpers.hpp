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

#pragma once

#include <random>

#include "gates.hpp"
#include "knill_fixture.hpp"
#include "optimize.hpp"
#include "subprocess.hpp"

namespace testutil {

/// The standard 6-mode CZ setup: two dual-rail qubits on modes 1-4, one
/// ancilla photon in each of modes 5 and 6, heralded on counting one photon
/// in each.
inline loqgate::GateProblem cz_problem() {
  loqgate::GateProblem p;
  p.target = loqgate::target_gate("cz");
  p.encoding = loqgate::default_encoding(2, 2);
  p.ancilla.input = {1, 1};
  p.ancilla.pattern = {1, 1};
  p.passive_modes = {1, 3};
  return p;
}

inline loqgate::Matrix random_complex_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  loqgate::Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = loqgate::Complex(gauss(rng), gauss(rng));
  return m;
}

inline double max_abs_diff(const loqgate::Matrix& a, const loqgate::Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace testutil
