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

#include <cstdint>
#include <vector>

#include "types.hpp"

namespace loqgate {

/// Refuse to enumerate Fock sectors larger than this. A desk-scale guard;
/// the gates of interest live in sectors of a few hundred states.
inline constexpr std::uint64_t kSectorCap = 1000000;

/// C(N+M-1, M), the dimension of the M-photon sector on N modes.
/// Throws Errc::Capacity above kSectorCap.
std::uint64_t sector_dimension(int n_modes, int n_photons);

/// All occupation vectors with the given photon total, in ascending
/// lexicographic order. Deterministic and duplicate-free.
std::vector<Occupation> enumerate_sector(int n_modes, int n_photons);

/// Rank of `occ` within enumerate_sector(occ.size(), total_photons(occ)).
std::uint64_t sector_index(const Occupation& occ);

/// Matrix permanent by Ryser's inclusion-exclusion with Gray-code updates,
/// O(2^n n). per(0x0 matrix) = 1.
Complex permanent(const Matrix& a);

/// Single transition amplitude <out| applied to the propagated |in>:
/// per(U[in,out]) / sqrt(prod in_i! prod out_j!), where U[in,out] repeats
/// row i of U in_i times and column j out_j times. Zero when the photon
/// totals differ (superselection).
Complex transition_amplitude(const Matrix& u, const Occupation& in, const Occupation& out);

/// Propagated state over one photon-number sector. Amplitudes are indexed
/// in the enumerate_sector order of (n_modes, n_photons).
struct SectorState {
  int n_modes = 0;
  int n_photons = 0;
  Eigen::VectorXcd amplitudes;

  Complex amplitude(const Occupation& occ) const;
};

/// Expands |in> through the mode matrix into the full output sector.
SectorState apply_mode_transform(const Matrix& u, const Occupation& in);

/// Post-selected computational map. entries(k, l) is the amplitude from
/// computational basis state l (together with the ancilla input photons)
/// to computational basis state k with the heralding pattern on the
/// ancilla detectors. The gram additionally sums over every heralded
/// output configuration of the computational modes, dual-rail or not, so
/// leakage out of the encoding is accounted for. Entries whose photon
/// bookkeeping cannot balance are exactly zero.
GateMap extract_gate_map(const Matrix& u, const DualRailEncoding& enc, const AncillaSpec& anc);

/// Occupation of the whole register for computational basis index
/// `basis_index`, with `anc_occ` on the ancilla modes.
Occupation register_occupation(const DualRailEncoding& enc, int basis_index,
                               const Occupation& anc_occ);

}  // namespace loqgate
