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

#include "reck.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "error.hpp"
#include "gates.hpp"
#include "metrics.hpp"

namespace loqgate {

namespace {

void check_element(int n_modes, const RotationElement& r) {
  require(r.mode_j >= 1 && r.mode_i > r.mode_j && r.mode_i <= n_modes, Errc::InvalidArgument,
          "rotation modes must satisfy 1 <= j < i <= n_modes");
}

double wrap_angle(double a) { return std::remainder(a, 2.0 * std::numbers::pi); }

void check_gauge_modes(const std::vector<int>& modes, int n_modes) {
  for (int m : modes)
    require(m >= 1 && m <= n_modes, Errc::InvalidArgument, "gauge mode out of range");
}

void circular_stats(const std::vector<std::vector<double>>& phis, size_t n_slots,
                    std::vector<double>& mean, std::vector<double>& max_dev,
                    std::vector<double>& stddev) {
  size_t n_points = phis.size();
  mean.resize(n_slots);
  max_dev.resize(n_slots);
  stddev.resize(n_slots);
  for (size_t s = 0; s < n_slots; ++s) {
    Complex dir = 0.0;
    for (size_t p = 0; p < n_points; ++p) dir += std::polar(1.0, phis[p][s]);
    double m = (std::abs(dir) > 0.0) ? std::arg(dir) : 0.0;
    double worst = 0.0;
    double sum_sq = 0.0;
    for (size_t p = 0; p < n_points; ++p) {
      double dev = wrap_angle(phis[p][s] - m);
      worst = std::max(worst, std::abs(dev));
      sum_sq += dev * dev;
    }
    mean[s] = m;
    max_dev[s] = worst;
    stddev[s] = std::sqrt(sum_sq / static_cast<double>(n_points));
  }
}

}  // namespace

Matrix rotation_matrix(int n_modes, const RotationElement& r) {
  check_element(n_modes, r);
  Matrix t = Matrix::Identity(n_modes, n_modes);
  int i = r.mode_i - 1;
  int j = r.mode_j - 1;
  Complex ph = std::polar(1.0, r.phi);
  double s = std::sin(r.omega);
  double c = std::cos(r.omega);
  t(j, j) = ph * s;
  t(j, i) = ph * c;
  t(i, j) = c;
  t(i, i) = -s;
  return t;
}

Decomposition decompose(const Matrix& u, double zero_tol) {
  int n = static_cast<int>(u.rows());
  require(u.cols() == n && n >= 1, Errc::DimensionMismatch, "matrix must be square");
  require(is_unitary(u, 1e-10), Errc::NotUnitary, "matrix is not unitary to 1e-10");

  Matrix g = u;
  std::vector<RotationElement> rotations;
  for (int i = n; i >= 2; --i) {
    for (int j = i - 1; j >= 1; --j) {
      Complex gij = g(i - 1, j - 1);
      if (std::abs(gij) <= zero_tol) continue;
      Complex z = -g(i - 1, i - 1) / gij;
      double omega = std::atan(std::abs(z));
      double phi = (std::abs(z) > 0.0) ? std::arg(z) : 0.0;
      rotations.push_back(RotationElement{i, j, omega, phi});
      Complex ps = std::polar(1.0, phi) * std::sin(omega);
      Complex pc = std::polar(1.0, phi) * std::cos(omega);
      double c = std::cos(omega);
      double s = std::sin(omega);
      Eigen::VectorXcd col_j = g.col(j - 1);
      Eigen::VectorXcd col_i = g.col(i - 1);
      g.col(j - 1) = ps * col_j + c * col_i;
      g.col(i - 1) = pc * col_j - s * col_i;
    }
  }

  double residual = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) residual = std::max(residual, std::abs(g(a, b)));
  require(residual <= 1e-8, Errc::Internal,
          "elimination residual " + std::to_string(residual) + " exceeds 1e-8");

  Decomposition d;
  d.n_modes = n;
  d.rotations.assign(rotations.rbegin(), rotations.rend());
  d.output_phases.resize(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) d.output_phases[static_cast<size_t>(k)] = std::arg(g(k, k));
  return d;
}

Matrix reconstruct(const Decomposition& d) {
  require(d.n_modes >= 1, Errc::InvalidArgument, "decomposition needs at least one mode");
  require(static_cast<int>(d.output_phases.size()) == d.n_modes, Errc::DimensionMismatch,
          "output_phases length must equal n_modes");
  Matrix m = Matrix::Zero(d.n_modes, d.n_modes);
  for (int k = 0; k < d.n_modes; ++k)
    m(k, k) = std::polar(1.0, d.output_phases[static_cast<size_t>(k)]);
  for (const RotationElement& r : d.rotations) {
    m = m * rotation_matrix(d.n_modes, r).adjoint();
  }
  return m;
}

GaugeSpec heralded_gauge(const Matrix& target, const DualRailEncoding& encoding) {
  encoding.validate();
  int dim = encoding.dim();
  require(target.rows() == dim && target.cols() == dim, Errc::DimensionMismatch,
          "target dimension must match the encoding");
  GaugeSpec spec;
  for (int r = 0; r < encoding.n_qubits; ++r) {
    for (int rail = 0; rail < 2; ++rail) {
      // The pair shifts basis states whose qubit r occupies this rail; it is
      // a gauge move exactly when the target never mixes the two rail
      // populations.
      bool commutes = true;
      for (int k = 0; k < dim && commutes; ++k) {
        for (int l = 0; l < dim; ++l) {
          bool in_k = ((k >> (encoding.n_qubits - 1 - r)) & 1) == rail;
          bool in_l = ((l >> (encoding.n_qubits - 1 - r)) & 1) == rail;
          if (in_k != in_l && std::abs(target(k, l)) > 1e-14) {
            commutes = false;
            break;
          }
        }
      }
      if (commutes)
        spec.paired_modes.push_back(encoding.computational_modes[static_cast<size_t>(2 * r + rail)]);
    }
  }
  spec.free_out_modes = encoding.ancilla_modes;
  spec.free_in_modes = encoding.ancilla_modes;
  return spec;
}

GaugeFixer::GaugeFixer(GaugeSpec spec) : spec_(std::move(spec)) {}

Eigen::VectorXd GaugeFixer::shift_row(int n_modes, int row, int col) const {
  (void)n_modes;
  size_t total =
      spec_.paired_modes.size() + spec_.free_out_modes.size() + spec_.free_in_modes.size();
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(total));
  Eigen::Index idx = 0;
  for (int m : spec_.paired_modes) {
    v[idx++] = static_cast<double>(row == m) - static_cast<double>(col == m);
  }
  for (int m : spec_.free_out_modes) v[idx++] = (row == m) ? 1.0 : 0.0;
  for (int m : spec_.free_in_modes) v[idx++] = (col == m) ? 1.0 : 0.0;
  return v;
}

Matrix GaugeFixer::apply(const Matrix& u) {
  int n = static_cast<int>(u.rows());
  require(u.cols() == n && n >= 1, Errc::DimensionMismatch, "matrix must be square");
  check_gauge_modes(spec_.paired_modes, n);
  check_gauge_modes(spec_.free_out_modes, n);
  check_gauge_modes(spec_.free_in_modes, n);
  Eigen::Index n_params = static_cast<Eigen::Index>(
      spec_.paired_modes.size() + spec_.free_out_modes.size() + spec_.free_in_modes.size());
  if (n_params == 0) return u;

  bool first = !primed_;
  if (first) {
    struct Candidate {
      double mag;
      int row, col;
    };
    double floor = 0.1 * u.cwiseAbs().maxCoeff();
    std::vector<Candidate> candidates;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        if (std::abs(u(r, c)) >= floor) candidates.push_back({std::abs(u(r, c)), r + 1, c + 1});
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
      if (a.mag != b.mag) return a.mag > b.mag;
      if (a.row != b.row) return a.row < b.row;
      return a.col < b.col;
    });
    // Largest entries first, keeping only those whose phase response adds a
    // new direction; the solve below then has full row rank.
    std::vector<Eigen::VectorXd> basis, rows;
    for (const Candidate& cand : candidates) {
      Eigen::VectorXd v = shift_row(n, cand.row, cand.col);
      Eigen::VectorXd w = v;
      for (const Eigen::VectorXd& b : basis) w -= b.dot(w) * b;
      if (w.norm() <= 1e-9) continue;
      basis.push_back(w.normalized());
      rows.push_back(v);
      anchors_.emplace_back(cand.row, cand.col);
      if (static_cast<Eigen::Index>(rows.size()) == n_params) break;
    }
    system_.resize(static_cast<Eigen::Index>(rows.size()), n_params);
    for (size_t r = 0; r < rows.size(); ++r) system_.row(static_cast<Eigen::Index>(r)) = rows[r];
    last_phases_.assign(anchors_.size(), 0.0);
  }
  if (anchors_.empty()) {
    primed_ = true;
    return u;
  }

  Eigen::VectorXd rhs(static_cast<Eigen::Index>(anchors_.size()));
  for (size_t r = 0; r < anchors_.size(); ++r) {
    Complex e = u(anchors_[r].first - 1, anchors_[r].second - 1);
    require(std::abs(e) > 1e-12, Errc::StructuralBreak,
            "gauge anchor (" + std::to_string(anchors_[r].first) + ", " +
                std::to_string(anchors_[r].second) + ") vanished");
    double raw = std::arg(e);
    double ph = first ? raw : last_phases_[r] + wrap_angle(raw - last_phases_[r]);
    last_phases_[r] = ph;
    rhs[static_cast<Eigen::Index>(r)] = -ph;
  }
  primed_ = true;
  Eigen::VectorXd x = system_.completeOrthogonalDecomposition().solve(rhs);

  Eigen::VectorXcd d_out = Eigen::VectorXcd::Ones(n);
  Eigen::VectorXcd d_in = Eigen::VectorXcd::Ones(n);
  Eigen::Index idx = 0;
  for (int m : spec_.paired_modes) {
    d_out[m - 1] *= std::polar(1.0, x[idx]);
    d_in[m - 1] *= std::polar(1.0, -x[idx]);
    ++idx;
  }
  for (int m : spec_.free_out_modes) d_out[m - 1] *= std::polar(1.0, x[idx++]);
  for (int m : spec_.free_in_modes) d_in[m - 1] *= std::polar(1.0, x[idx++]);
  return d_out.asDiagonal() * u * d_in.asDiagonal();
}

AngleReport angle_curves(const std::vector<double>& deltas, const std::vector<Matrix>& matrices,
                         const std::vector<int>& passive_modes, const GaugeSpec* gauge) {
  require(!matrices.empty(), Errc::InvalidArgument, "angle_curves needs at least one point");
  require(deltas.size() == matrices.size(), Errc::DimensionMismatch,
          "deltas and matrices must have equal length");

  int n = static_cast<int>(matrices.front().rows());
  std::vector<int> act = active_modes(n, passive_modes);

  AngleReport report;
  report.deltas = deltas;
  std::vector<Matrix> canonical;
  canonical.reserve(matrices.size());
  for (size_t p = 0; p < matrices.size(); ++p) {
    const Matrix& u = matrices[p];
    require(u.rows() == n && u.cols() == n, Errc::DimensionMismatch,
            "all matrices must share one size");
    double gamma = 0.0;
    for (int k : act) {
      Complex diag = u(k - 1, k - 1);
      if (std::abs(diag) > 1e-12) {
        gamma = std::arg(diag);
        break;
      }
    }
    canonical.push_back(u * std::polar(1.0, -gamma));
    Decomposition d = decompose(canonical.back());

    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(d.rotations.size());
    for (const RotationElement& r : d.rotations) pairs.emplace_back(r.mode_i, r.mode_j);
    if (p == 0) {
      report.pairs = pairs;
    } else if (pairs != report.pairs) {
      throw Error(Errc::StructuralBreak,
                  "rotation support changed at delta = " + std::to_string(deltas[p]));
    }

    std::vector<double> om, ph;
    om.reserve(d.rotations.size());
    ph.reserve(d.rotations.size());
    for (const RotationElement& r : d.rotations) {
      om.push_back(r.omega);
      ph.push_back(r.phi);
    }
    report.omegas.push_back(std::move(om));
    report.phis.push_back(std::move(ph));
    report.out_phases.push_back(d.output_phases);
  }
  circular_stats(report.phis, report.pairs.size(), report.phi_mean, report.phi_max_dev,
                 report.phi_stddev);

  if (gauge != nullptr && !gauge->empty()) {
    GaugeFixer fixer(*gauge);
    for (size_t p = 0; p < canonical.size(); ++p) {
      Decomposition d = decompose(fixer.apply(canonical[p]));
      std::vector<std::pair<int, int>> pairs;
      pairs.reserve(d.rotations.size());
      for (const RotationElement& r : d.rotations) pairs.emplace_back(r.mode_i, r.mode_j);
      if (pairs != report.pairs) {
        throw Error(Errc::StructuralBreak, "gauge-fixed rotation support changed at delta = " +
                                               std::to_string(deltas[p]));
      }
      std::vector<double> ph;
      ph.reserve(d.rotations.size());
      for (const RotationElement& r : d.rotations) ph.push_back(r.phi);
      report.phis_fixed.push_back(std::move(ph));
      report.out_phases_fixed.push_back(d.output_phases);
    }
    report.has_fixed = true;
    report.anchors = fixer.anchors();
    circular_stats(report.phis_fixed, report.pairs.size(), report.phi_fixed_mean,
                   report.phi_fixed_max_dev, report.phi_fixed_stddev);
  }
  return report;
}

}  // namespace loqgate
