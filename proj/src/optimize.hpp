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
#include <optional>
#include <string>
#include <vector>

#include "gates.hpp"
#include "types.hpp"

namespace loqgate {

enum class Ansatz { Full, Knill };

Ansatz ansatz_from_name(const std::string& name);
std::string ansatz_name(Ansatz a);

struct OptimizerConfig {
  double epsilon = 1e-6;
  int n_restarts = 100;
  int max_iterations = 400;  // per annealing stage
  double gradient_step = 1e-6;
  double convergence_tol = 1e-2;  // on the gradient norm of S + F/epsilon
  std::uint64_t rng_seed = 12345;
  Ansatz ansatz = Ansatz::Knill;
  int n_threads = 1;

  void validate() const;
};

struct GateProblem {
  TargetGate target;
  DualRailEncoding encoding;
  AncillaSpec ancilla;
  std::vector<int> passive_modes = {1, 3};  // used by the Knill ansatz only

  int n_modes() const { return encoding.n_modes(); }
  int n_photons() const;
  void validate(Ansatz ansatz) const;
};

struct Evaluation {
  double fidelity = 0.0;
  double success = 0.0;
  bool zero_map = false;

  double objective(double epsilon) const {
    return zero_map ? 0.0 : success + fidelity / epsilon;
  }
};

struct CurvePoint {
  double epsilon = 0.0;
  double delta = 0.0;
  double success = 0.0;
  double objective = 0.0;
  bool converged = false;
  Matrix u;
};

struct TraceResult {
  std::vector<CurvePoint> points;
  std::vector<std::string> warnings;
};

struct FitResult {
  double s0 = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  bool has_s2 = false;
  double ratio = 0.0;
  double residual_rms = 0.0;
  int n_used = 0;
};

/// Number of real parameters of the chosen parameterization.
int n_params(const GateProblem& problem, Ansatz ansatz);

/// Maps parameters to a mode matrix: exp(i H(theta)) on all modes (Full) or
/// on the active block only (Knill), so iterates are unitary by construction.
Matrix build_matrix(const GateProblem& problem, Ansatz ansatz, const Eigen::VectorXd& theta);

/// Inverse map through the principal matrix logarithm, used for warm starts.
Eigen::VectorXd params_from_unitary(const GateProblem& problem, Ansatz ansatz, const Matrix& u);

/// Gate map metrics of one candidate matrix.
Evaluation evaluate(const GateProblem& problem, const Matrix& u);

/// S + F/epsilon for one mode matrix; 0 when the post-selected map vanishes.
double objective(const Matrix& u, const TargetGate& target, const DualRailEncoding& encoding,
                 const AncillaSpec& ancilla, double epsilon);

/// Multistart ascent of S + F/epsilon. With a warm start it runs a single
/// ascent from the given matrix; otherwise n_restarts Haar-random starts,
/// merged deterministically (best objective, then lowest delta, then lowest
/// restart index). Seeds derive from rng_seed per restart, so results do not
/// depend on n_threads.
CurvePoint maximize(const OptimizerConfig& config, const GateProblem& problem,
                    const Matrix* warm_start = nullptr);

/// Continuation over an ascending epsilon schedule: full multistart effort at
/// the first point, warm starts after. Entries of `resume` that hold a point
/// are reused verbatim. Flags fidelity/success monotonicity violations as
/// warnings and aborts when one step loses more than half the objective.
TraceResult trace_curve(const std::vector<double>& schedule, const OptimizerConfig& config,
                        const GateProblem& problem,
                        const std::vector<std::optional<CurvePoint>>* resume = nullptr);

/// Least-squares fit of S against 1, sqrt(delta)[, delta].
FitResult fit_curve(const std::vector<CurvePoint>& points, int n_terms,
                    bool include_nonconverged = false);

/// Log- or linearly-spaced schedule with exact endpoints.
std::vector<double> make_schedule(double min_epsilon, double max_epsilon, int count,
                                  bool log_spacing);

}  // namespace loqgate
