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

#include <Eigen/Dense>
#include <complex>
#include <numeric>
#include <vector>

#include "error.hpp"

namespace loqgate {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Photon count per optical mode. Mode indices are 1-based on every public
/// surface (matching the usual interferometer numbering); containers are
/// indexed 0-based as usual.
using Occupation = std::vector<int>;

inline int total_photons(const Occupation& occ) {
  return std::accumulate(occ.begin(), occ.end(), 0);
}

inline void check_occupation(const Occupation& occ, const char* what) {
  for (int n : occ)
    require(n >= 0, Errc::InvalidArgument, std::string(what) + ": negative occupation number");
}

/// Ancilla resource: photons prepared on the ancilla modes and the
/// detector pattern that heralds a successful gate.
struct AncillaSpec {
  Occupation input;    // photons injected per ancilla mode
  Occupation pattern;  // photons that must be counted per ancilla mode

  int n_modes() const { return static_cast<int>(input.size()); }
  int input_photons() const { return total_photons(input); }
  int pattern_photons() const { return total_photons(pattern); }

  void validate() const {
    require(input.size() == pattern.size(), Errc::DimensionMismatch,
            "ancilla input and pattern must cover the same modes");
    check_occupation(input, "ancilla input");
    check_occupation(pattern, "ancilla pattern");
  }
};

/// Dual-rail qubit register layout: qubit r lives on the mode pair
/// (computational_modes[2r], computational_modes[2r+1]) and logical |0>
/// puts the photon in the first mode of the pair. Computational basis
/// indices are big-endian over qubits: |00>, |01>, |10>, |11>.
struct DualRailEncoding {
  int n_qubits = 0;
  std::vector<int> computational_modes;  // length 2*n_qubits, 1-based
  std::vector<int> ancilla_modes;        // 1-based

  int n_computational_modes() const { return 2 * n_qubits; }
  int n_modes() const {
    return static_cast<int>(computational_modes.size() + ancilla_modes.size());
  }
  int dim() const { return 1 << n_qubits; }

  void validate() const;
};

/// Standard layout: computational modes 1..2q, ancillas 2q+1..2q+n_ancilla.
DualRailEncoding default_encoding(int n_qubits, int n_ancilla_modes);

/// Post-selected computational map. The heralded output lives in the full
/// Fock sector of the computational modes, not just the dual-rail span.
/// `entries` is the dual-rail block <comp_k (x) pattern|Omega|comp_l (x) in>;
/// `gram` is A^dag A of the whole heralded map, so it also carries the
/// probability that the register leaks out of the dual-rail subspace. The
/// fidelity and success functionals need nothing beyond these two.
struct GateMap {
  Matrix entries;  // 2^q x 2^q dual-rail block
  Matrix gram;     // 2^q x 2^q positive semidefinite, leakage included
  int n_qubits = 0;

  /// Tr(A^dag A) over the full heralded map.
  double weight() const { return gram.trace().real(); }

  /// Wraps a bare computational-basis matrix (no leakage): gram = a^dag a.
  static GateMap from_matrix(const Matrix& a);
};

}  // namespace loqgate
