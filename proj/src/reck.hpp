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

#include <vector>

#include "types.hpp"

namespace loqgate {

/// One beamsplitter stage acting on the 1-based mode pair (mode_i, mode_j),
/// mode_i > mode_j. The associated elimination matrix T(i,j; omega, phi) is
/// the identity except for
///   T(j,j) = e^{i phi} sin(omega)   T(j,i) = e^{i phi} cos(omega)
///   T(i,j) = cos(omega)             T(i,i) = -sin(omega)
/// with omega in [0, pi/2] and phi in (-pi, pi].
struct RotationElement {
  int mode_i = 0;
  int mode_j = 0;
  double omega = 0.0;
  double phi = 0.0;
};

struct Decomposition {
  int n_modes = 0;
  std::vector<RotationElement> rotations;
  std::vector<double> output_phases;  // length n_modes, radians
};

/// The full n x n matrix T(i,j; omega, phi) described on RotationElement.
Matrix rotation_matrix(int n_modes, const RotationElement& r);

/// Triangular elimination of a unitary: right-multiplies U by T factors until
/// only a diagonal of phases remains. Below-diagonal entries with magnitude
/// <= zero_tol are skipped and emit no rotation. The returned rotations are
/// ordered so that
///   U = diag(e^{i output_phases}) * T(r_0)^{-1} * T(r_1)^{-1} * ...
Decomposition decompose(const Matrix& u, double zero_tol = 1e-10);

/// Multiplies the decomposition back together (formula above).
Matrix reconstruct(const Decomposition& d);

/// Residual phase freedom of a heralded gate family (modes are 1-based).
/// Input phases on free_in_modes and output phases on free_out_modes leave
/// the heralded map invariant up to a global phase; a paired mode admits
/// equal and opposite input/output phases provided the target commutes with
/// the induced diagonal, which heralded_gauge checks when building the spec.
struct GaugeSpec {
  std::vector<int> paired_modes;
  std::vector<int> free_out_modes;
  std::vector<int> free_in_modes;

  bool empty() const {
    return paired_modes.empty() && free_out_modes.empty() && free_in_modes.empty();
  }
};

/// Gauge group of a heralded dual-rail problem: free input/output phases on
/// the ancilla modes, plus counter-rotating phase pairs on every dual-rail
/// mode whose rail population projector commutes with the target.
GaugeSpec heralded_gauge(const Matrix& target, const DualRailEncoding& encoding);

/// Fixes the GaugeSpec freedom of a family of matrices by making a fixed
/// set of anchor entries real positive. Anchors are picked on the first
/// matrix (largest entries whose phase responses are linearly independent)
/// and reused, with the anchor phases unwrapped across consecutive calls,
/// so a smooth family maps to a smooth gauge-fixed family.
class GaugeFixer {
 public:
  explicit GaugeFixer(GaugeSpec spec);

  Matrix apply(const Matrix& u);
  const std::vector<std::pair<int, int>>& anchors() const { return anchors_; }

 private:
  Eigen::VectorXd shift_row(int n_modes, int row, int col) const;

  GaugeSpec spec_;
  std::vector<std::pair<int, int>> anchors_;
  Eigen::MatrixXd system_;
  std::vector<double> last_phases_;
  bool primed_ = false;
};

struct AngleReport {
  std::vector<std::pair<int, int>> pairs;       // (mode_i, mode_j) per rotation slot
  std::vector<double> deltas;                   // one per input point
  std::vector<std::vector<double>> omegas;      // [point][slot]
  std::vector<std::vector<double>> phis;        // [point][slot]
  std::vector<std::vector<double>> out_phases;  // [point][mode]
  std::vector<double> phi_mean;                 // circular mean per slot
  std::vector<double> phi_max_dev;              // max |wrapped(phi - mean)| per slot
  std::vector<double> phi_stddev;               // circular stddev per slot

  // Same quantities after additionally fixing a GaugeSpec freedom.
  bool has_fixed = false;
  std::vector<std::pair<int, int>> anchors;  // entries pinned real positive
  std::vector<std::vector<double>> phis_fixed;
  std::vector<std::vector<double>> out_phases_fixed;
  std::vector<double> phi_fixed_mean;
  std::vector<double> phi_fixed_max_dev;
  std::vector<double> phi_fixed_stddev;
};

/// Decomposes one matrix per (delta, U) sample after fixing a canonical
/// gauge: each U is multiplied by a global phase making its first
/// non-negligible active diagonal entry real positive. When a gauge spec is
/// given, a second pass also fixes that freedom (GaugeFixer) and the report
/// carries both sets of phase statistics. All samples must share one
/// rotation support; a support change raises StructuralBreak naming the
/// offending delta.
AngleReport angle_curves(const std::vector<double>& deltas, const std::vector<Matrix>& matrices,
                         const std::vector<int>& passive_modes,
                         const GaugeSpec* gauge = nullptr);

}  // namespace loqgate
