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

#include "types.hpp"

namespace loqgate {

/// Overlap probability between the post-selected map and the target:
/// |Tr(A^dag T)|^2 / (2^q Tr(A^dag A)), invariant under rescaling of A.
/// Only the dual-rail block overlaps the target, while Tr(A^dag A) counts
/// the leaked amplitude too, so leakage lowers the fidelity. Result clamped
/// to [0, 1] against roundoff. Throws Errc::ZeroMap when A vanishes.
double fidelity(const GateMap& gate_map, const Matrix& target);
double fidelity(const Matrix& gate_map, const Matrix& target);

inline double infidelity(const GateMap& gate_map, const Matrix& target) {
  return 1.0 - fidelity(gate_map, target);
}

/// Heralding probability averaged over computational inputs:
/// Tr(A^dag A) / (2^q ||U||^{2M}) with ||U|| the largest singular value.
/// Reduces to Tr(A^dag A)/2^q for unitary U.
double success(const GateMap& gate_map, const Matrix& mode_matrix, int n_photons);
double success(const Matrix& gate_map, const Matrix& mode_matrix, int n_photons);

struct NormBounds {
  double min_sq = 0.0;  // smallest singular value of A, squared
  double hs = 0.0;      // Tr(A^dag A) / 2^q
  double max_sq = 0.0;  // largest singular value of A, squared
};

/// min_sq <= hs <= max_sq always; the ratio min/max tends to 1 as the map
/// approaches a scaled unitary.
NormBounds norm_bounds(const GateMap& gate_map);
NormBounds norm_bounds(const Matrix& gate_map);

/// Largest singular value.
double operator_norm(const Matrix& m);

/// max |U^dag U - I|.
double unitarity_error(const Matrix& u);

inline bool is_unitary(const Matrix& u, double tol = 1e-10) { return unitarity_error(u) <= tol; }

}  // namespace loqgate
