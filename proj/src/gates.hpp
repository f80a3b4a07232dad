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
#include <string>

#include "types.hpp"

namespace loqgate {

struct TargetGate {
  std::string name;
  Matrix matrix;  // unitary, side 2^q

  int n_qubits() const;
};

/// Built-in two-qubit targets: "cz", "cnot", and "cs" (controlled phase,
/// angle in radians, cs(pi) == cz). Unknown names throw.
TargetGate target_gate(const std::string& name, double angle = 0.0);

/// Wraps a user-supplied matrix, validating unitarity to 1e-10.
TargetGate user_target(const Matrix& m, const std::string& name = "user");

/// Embeds `active_block` into an n_modes x n_modes identity so that the
/// modes listed in `passive_modes` (1-based) pass through untouched. The
/// block acts on the remaining modes in ascending order.
Matrix embed_ansatz(const Matrix& active_block, int n_modes, const std::vector<int>& passive_modes);

/// Inverse of embed_ansatz: pulls the active block back out.
Matrix extract_active_block(const Matrix& u, const std::vector<int>& passive_modes);

/// Active modes (ascending, 1-based) = complement of the passive set.
std::vector<int> active_modes(int n_modes, const std::vector<int>& passive_modes);

/// Haar-distributed unitary via QR of a Gaussian matrix.
Matrix random_unitary(int n, std::mt19937_64& rng);

}  // namespace loqgate
