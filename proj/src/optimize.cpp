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

#include "optimize.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <thread>

#include "error.hpp"
#include "fock.hpp"
#include "metrics.hpp"

namespace loqgate {

namespace {

constexpr double kAnnealStart = 3e-2;
constexpr double kStageGradTol = 1e-5;
constexpr double kFinalTolCap = 1e-4;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Matrix exp_i_hermitian(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Eigen::VectorXcd phases(h.rows());
  for (Eigen::Index k = 0; k < h.rows(); ++k)
    phases(k) = std::polar(1.0, es.eigenvalues()(k));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix hermitian_from_params(int n, const Eigen::VectorXd& theta) {
  Matrix h(n, n);
  for (int k = 0; k < n; ++k) h(k, k) = theta(k);
  int p = n;
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l) {
      Complex v(theta(p), theta(p + 1));
      h(k, l) = v;
      h(l, k) = std::conj(v);
      p += 2;
    }
  }
  return h;
}

Eigen::VectorXd params_from_hermitian(const Matrix& h) {
  int n = static_cast<int>(h.rows());
  Eigen::VectorXd theta(n * n);
  for (int k = 0; k < n; ++k) theta(k) = h(k, k).real();
  int p = n;
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l) {
      theta(p) = h(k, l).real();
      theta(p + 1) = h(k, l).imag();
      p += 2;
    }
  }
  return theta;
}

Matrix principal_log_hermitian(const Matrix& u) {
  Eigen::ComplexSchur<Matrix> schur(u);
  const Matrix& q = schur.matrixU();
  Eigen::VectorXd angles(u.rows());
  for (Eigen::Index k = 0; k < u.rows(); ++k) angles(k) = std::arg(schur.matrixT()(k, k));
  Matrix h = q * angles.asDiagonal().toDenseMatrix().cast<Complex>() * q.adjoint();
  return 0.5 * (h + h.adjoint());
}

struct AscentResult {
  Eigen::VectorXd theta;
  double scaled_value = 0.0;
  double grad_norm = 0.0;
  bool grad_ok = false;
};

// BFGS ascent of `f` (maximization) with central finite-difference gradients
// and Armijo backtracking.
AscentResult bfgs_ascend(const std::function<double(const Eigen::VectorXd&)>& f,
                         Eigen::VectorXd x, double grad_tol, int max_iter, double fd_step) {
  int n = static_cast<int>(x.size());
  auto fd_grad = [&](const Eigen::VectorXd& at) {
    Eigen::VectorXd g(n);
    Eigen::VectorXd probe = at;
    for (int k = 0; k < n; ++k) {
      double saved = probe(k);
      probe(k) = saved + fd_step;
      double hi = f(probe);
      probe(k) = saved - fd_step;
      double lo = f(probe);
      probe(k) = saved;
      g(k) = (hi - lo) / (2.0 * fd_step);
    }
    return g;
  };

  Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd g = fd_grad(x);
  double fx = f(x);

  AscentResult result;
  for (int iter = 0; iter < max_iter; ++iter) {
    if (g.norm() <= grad_tol) break;

    Eigen::VectorXd p = h_inv * g;
    double slope = p.dot(g);
    if (slope <= 0.0) {
      h_inv.setIdentity();
      p = g;
      slope = g.squaredNorm();
      if (slope <= 0.0) break;
    }

    double alpha = 1.0;
    double fn = fx;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      fn = f(x + alpha * p);
      if (fn >= fx + 1e-4 * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      if ((h_inv - Eigen::MatrixXd::Identity(n, n)).norm() > 0.0) {
        h_inv.setIdentity();
        continue;
      }
      break;  // no improvement along the gradient: numerically stationary
    }

    Eigen::VectorXd s = alpha * p;
    Eigen::VectorXd g_new = fd_grad(x + s);
    Eigen::VectorXd y = g_new - g;
    double sy = -s.dot(y);  // curvature of the negated (minimized) function
    if (sy > 1e-12 * s.norm() * y.norm()) {
      double rho = 1.0 / sy;
      Eigen::MatrixXd syt = s * (-y).transpose();
      Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
      h_inv = (eye - rho * syt) * h_inv * (eye - rho * syt.transpose()) + rho * (s * s.transpose());
    }
    x += s;
    fx = fn;
    g = g_new;
  }

  result.theta = x;
  result.scaled_value = fx;
  result.grad_norm = g.norm();
  result.grad_ok = result.grad_norm <= grad_tol;
  return result;
}

std::vector<double> anneal_ladder(double epsilon) {
  std::vector<double> ladder;
  double a = kAnnealStart;
  while (a > epsilon * 1.0000001) {
    ladder.push_back(a);
    a *= 0.1;
  }
  ladder.push_back(epsilon);
  return ladder;
}

struct RestartOutcome {
  CurvePoint point;
  bool valid = false;
};

}  // namespace

Ansatz ansatz_from_name(const std::string& name) {
  if (name == "full") return Ansatz::Full;
  if (name == "knill") return Ansatz::Knill;
  throw Error(Errc::InvalidArgument, "unknown ansatz '" + name + "' (expected full or knill)");
}

std::string ansatz_name(Ansatz a) { return a == Ansatz::Full ? "full" : "knill"; }

void OptimizerConfig::validate() const {
  require(epsilon > 0.0, Errc::InvalidArgument, "epsilon must be positive");
  require(n_restarts >= 1, Errc::InvalidArgument, "restart budget must be at least 1");
  require(max_iterations >= 1, Errc::InvalidArgument, "max_iterations must be at least 1");
  require(gradient_step > 0.0, Errc::InvalidArgument, "gradient_step must be positive");
  require(convergence_tol > 0.0, Errc::InvalidArgument, "convergence_tol must be positive");
  require(n_threads >= 1, Errc::InvalidArgument, "thread count must be at least 1");
}

int GateProblem::n_photons() const {
  return encoding.n_qubits + ancilla.input_photons();
}

void GateProblem::validate(Ansatz ansatz) const {
  encoding.validate();
  ancilla.validate();
  require(static_cast<int>(encoding.ancilla_modes.size()) == ancilla.n_modes(),
          Errc::DimensionMismatch, "ancilla spec length must match the encoding");
  require(target.matrix.rows() == encoding.dim(), Errc::DimensionMismatch,
          "target dimension must match the encoding");
  if (ansatz == Ansatz::Knill) {
    std::vector<int> act = active_modes(n_modes(), passive_modes);
    require(!act.empty(), Errc::InvalidArgument, "Knill ansatz needs at least one active mode");
  }
}

int n_params(const GateProblem& problem, Ansatz ansatz) {
  int n = problem.n_modes();
  if (ansatz == Ansatz::Knill)
    n -= static_cast<int>(problem.passive_modes.size());
  return n * n;
}

Matrix build_matrix(const GateProblem& problem, Ansatz ansatz, const Eigen::VectorXd& theta) {
  int n = problem.n_modes();
  if (ansatz == Ansatz::Full) {
    require(theta.size() == n * n, Errc::DimensionMismatch, "parameter vector has wrong length");
    return exp_i_hermitian(hermitian_from_params(n, theta));
  }
  int b = n - static_cast<int>(problem.passive_modes.size());
  require(theta.size() == b * b, Errc::DimensionMismatch, "parameter vector has wrong length");
  Matrix block = exp_i_hermitian(hermitian_from_params(b, theta));
  return embed_ansatz(block, n, problem.passive_modes);
}

Eigen::VectorXd params_from_unitary(const GateProblem& problem, Ansatz ansatz, const Matrix& u) {
  int n = problem.n_modes();
  require(u.rows() == n && u.cols() == n, Errc::DimensionMismatch,
          "matrix size must match the encoding");
  require(is_unitary(u, 1e-8), Errc::NotUnitary, "warm start must be unitary");
  if (ansatz == Ansatz::Full) return params_from_hermitian(principal_log_hermitian(u));

  for (int p : problem.passive_modes) {
    for (int k = 1; k <= n; ++k) {
      Complex expect = (k == p) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
      require(std::abs(u(p - 1, k - 1) - expect) < 1e-8 && std::abs(u(k - 1, p - 1) - expect) < 1e-8,
              Errc::InvalidArgument, "warm start is not identity on the passive modes");
    }
  }
  Matrix block = extract_active_block(u, problem.passive_modes);
  return params_from_hermitian(principal_log_hermitian(block));
}

Evaluation evaluate(const GateProblem& problem, const Matrix& u) {
  GateMap a = extract_gate_map(u, problem.encoding, problem.ancilla);
  Evaluation ev;
  if (a.weight() <= 1e-300) {
    ev.zero_map = true;
    return ev;
  }
  ev.fidelity = fidelity(a, problem.target.matrix);
  ev.success = success(a, u, problem.n_photons());
  return ev;
}

double objective(const Matrix& u, const TargetGate& target, const DualRailEncoding& encoding,
                 const AncillaSpec& ancilla, double epsilon) {
  require(epsilon > 0.0, Errc::InvalidArgument, "epsilon must be positive");
  GateProblem problem{target, encoding, ancilla};
  return evaluate(problem, u).objective(epsilon);
}

namespace {

// Iteration-time objective: parameterized matrices are unitary by
// construction, so ||U|| = 1 and the success term reduces to the
// Hilbert-Schmidt weight. The scaled form epsilon*S + F shares its maximizer
// with S + F/epsilon but stays O(1) across the whole epsilon range.
double scaled_objective(const GateProblem& problem, Ansatz ansatz, const Eigen::VectorXd& theta,
                        double epsilon) {
  Matrix u = build_matrix(problem, ansatz, theta);
  GateMap a = extract_gate_map(u, problem.encoding, problem.ancilla);
  double weight = a.weight();
  if (weight <= 1e-300) return 0.0;
  double f = fidelity(a, problem.target.matrix);
  double s = weight / static_cast<double>(problem.encoding.dim());
  return epsilon * s + f;
}

CurvePoint finish_point(const GateProblem& problem, Ansatz ansatz, const Eigen::VectorXd& theta,
                        double epsilon, bool converged) {
  CurvePoint pt;
  pt.epsilon = epsilon;
  pt.u = build_matrix(problem, ansatz, theta);
  Evaluation ev = evaluate(problem, pt.u);
  pt.delta = ev.zero_map ? 1.0 : 1.0 - ev.fidelity;
  pt.success = ev.success;
  pt.objective = ev.objective(epsilon);
  pt.converged = converged && !ev.zero_map;
  return pt;
}

CurvePoint ascend_from(const GateProblem& problem, const OptimizerConfig& config,
                       Eigen::VectorXd theta, bool anneal) {
  std::vector<double> ladder =
      anneal ? anneal_ladder(config.epsilon) : std::vector<double>{config.epsilon};
  // Tolerance on the scaled gradient. Proportional to epsilon below the cap
  // so tiny-epsilon runs certify the fidelity branch; capped so that large
  // epsilons still resolve the frontier, whose warm-start gradient signal
  // between schedule steps shrinks with sqrt(delta).
  double final_tol = config.convergence_tol * std::min(config.epsilon, kFinalTolCap);
  AscentResult last;
  for (size_t stage = 0; stage < ladder.size(); ++stage) {
    double eps_stage = ladder[stage];
    bool final_stage = (stage + 1 == ladder.size());
    double tol = final_stage ? final_tol : std::max(kStageGradTol, final_tol);
    auto f = [&problem, &config, eps_stage](const Eigen::VectorXd& th) {
      return scaled_objective(problem, config.ansatz, th, eps_stage);
    };
    last = bfgs_ascend(f, std::move(theta), tol, config.max_iterations, config.gradient_step);
    theta = last.theta;
  }
  bool converged = last.grad_norm <= final_tol * (1.0 + 1e-12);
  return finish_point(problem, config.ansatz, theta, config.epsilon, converged);
}

bool better_point(const CurvePoint& challenger, const CurvePoint& incumbent) {
  double scale = std::max({1.0, std::abs(challenger.objective), std::abs(incumbent.objective)});
  if (challenger.objective > incumbent.objective + 1e-9 * scale) return true;
  if (challenger.objective < incumbent.objective - 1e-9 * scale) return false;
  return challenger.delta < incumbent.delta;
}

}  // namespace

CurvePoint maximize(const OptimizerConfig& config, const GateProblem& problem,
                    const Matrix* warm_start) {
  config.validate();
  problem.validate(config.ansatz);

  if (warm_start != nullptr) {
    Eigen::VectorXd theta = params_from_unitary(problem, config.ansatz, *warm_start);
    return ascend_from(problem, config, std::move(theta), /*anneal=*/false);
  }

  int block = (config.ansatz == Ansatz::Full)
                  ? problem.n_modes()
                  : problem.n_modes() - static_cast<int>(problem.passive_modes.size());

  std::vector<RestartOutcome> outcomes(static_cast<size_t>(config.n_restarts));
  std::vector<std::exception_ptr> failures(static_cast<size_t>(config.n_restarts));
  auto run_restart = [&](int r) {
    try {
      std::mt19937_64 rng(splitmix64(config.rng_seed +
                                     0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(r + 1)));
      Matrix start = random_unitary(block, rng);
      Eigen::VectorXd theta = params_from_hermitian(principal_log_hermitian(start));
      outcomes[static_cast<size_t>(r)].point = ascend_from(problem, config, std::move(theta),
                                                           /*anneal=*/true);
      outcomes[static_cast<size_t>(r)].valid = true;
    } catch (...) {
      failures[static_cast<size_t>(r)] = std::current_exception();
    }
  };

  int threads = std::min(config.n_threads, config.n_restarts);
  if (threads <= 1) {
    for (int r = 0; r < config.n_restarts; ++r) run_restart(r);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t]() {
        for (int r = t; r < config.n_restarts; r += threads) run_restart(r);
      });
    }
    for (std::thread& th : pool) th.join();
  }
  for (const std::exception_ptr& e : failures)
    if (e) std::rethrow_exception(e);

  int best = 0;
  for (int r = 1; r < config.n_restarts; ++r) {
    if (better_point(outcomes[static_cast<size_t>(r)].point,
                     outcomes[static_cast<size_t>(best)].point))
      best = r;
  }
  return outcomes[static_cast<size_t>(best)].point;
}

TraceResult trace_curve(const std::vector<double>& schedule, const OptimizerConfig& config,
                        const GateProblem& problem,
                        const std::vector<std::optional<CurvePoint>>* resume) {
  require(!schedule.empty(), Errc::InvalidArgument, "schedule must not be empty");
  for (size_t k = 0; k < schedule.size(); ++k) {
    require(schedule[k] > 0.0, Errc::InvalidArgument, "schedule entries must be positive");
    require(k == 0 || schedule[k] >= schedule[k - 1], Errc::InvalidArgument,
            "schedule must be sorted ascending");
  }
  if (resume != nullptr)
    require(resume->size() == schedule.size(), Errc::DimensionMismatch,
            "resume vector must match the schedule length");

  TraceResult result;
  const Matrix* prev_u = nullptr;
  for (size_t k = 0; k < schedule.size(); ++k) {
    OptimizerConfig cfg = config;
    cfg.epsilon = schedule[k];
    CurvePoint pt;
    if (resume != nullptr && (*resume)[k].has_value()) {
      pt = *(*resume)[k];
      require(std::abs(pt.epsilon - schedule[k]) <= 1e-12 * schedule[k], Errc::InvalidArgument,
              "resume point epsilon does not match the schedule");
      require(pt.u.rows() == problem.n_modes() && pt.u.cols() == problem.n_modes(),
              Errc::DimensionMismatch, "resume points must carry full-size matrices");
    } else if (prev_u == nullptr) {
      pt = maximize(cfg, problem);
    } else {
      pt = maximize(cfg, problem, prev_u);
    }

    if (k > 0) {
      const CurvePoint& prev = result.points.back();
      // Carrying the previous solution forward unchanged would already score
      // prev.success + prev_fidelity / epsilon here, so landing far below
      // that means the branch was lost, not that the objective shrank with
      // its 1/epsilon term.
      double carried = prev.success + (1.0 - prev.delta) / pt.epsilon;
      if (pt.objective < 0.5 * carried) {
        throw Error(Errc::ContinuationFailure,
                    "objective fell to less than half the carried-over value between epsilon = " +
                        std::to_string(prev.epsilon) + " and " + std::to_string(pt.epsilon) +
                        "; the schedule step is too large");
      }
      if (pt.delta < prev.delta - 1e-6)
        result.warnings.push_back("delta decreased at index " + std::to_string(k) +
                                  " (epsilon = " + std::to_string(pt.epsilon) + ")");
      if (pt.success < prev.success - 1e-6)
        result.warnings.push_back("success decreased at index " + std::to_string(k) +
                                  " (epsilon = " + std::to_string(pt.epsilon) + ")");
    }
    result.points.push_back(std::move(pt));
    prev_u = &result.points.back().u;
  }
  return result;
}

FitResult fit_curve(const std::vector<CurvePoint>& points, int n_terms,
                    bool include_nonconverged) {
  require(n_terms == 2 || n_terms == 3, Errc::InvalidArgument, "n_terms must be 2 or 3");
  std::vector<const CurvePoint*> used;
  for (const CurvePoint& p : points) {
    if (!p.converged && !include_nonconverged) continue;
    require(p.delta >= 0.0, Errc::InvalidArgument, "fit requires delta >= 0");
    used.push_back(&p);
  }
  require(used.size() >= 5, Errc::InvalidArgument,
          "fit needs at least 5 usable points, got " + std::to_string(used.size()));

  Eigen::MatrixXd design(used.size(), n_terms);
  Eigen::VectorXd rhs(used.size());
  for (size_t i = 0; i < used.size(); ++i) {
    double root = std::sqrt(used[i]->delta);
    design(static_cast<Eigen::Index>(i), 0) = 1.0;
    design(static_cast<Eigen::Index>(i), 1) = root;
    if (n_terms == 3) design(static_cast<Eigen::Index>(i), 2) = used[i]->delta;
    rhs(static_cast<Eigen::Index>(i)) = used[i]->success;
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  require(qr.rank() == n_terms, Errc::RankDeficient,
          "design matrix is rank-deficient; the deltas are too uniform");
  Eigen::VectorXd coef = qr.solve(rhs);

  FitResult fit;
  fit.s0 = coef(0);
  fit.s1 = coef(1);
  fit.has_s2 = (n_terms == 3);
  fit.s2 = fit.has_s2 ? coef(2) : 0.0;
  fit.ratio = fit.s1 / fit.s0;
  fit.residual_rms = std::sqrt((design * coef - rhs).squaredNorm() /
                               static_cast<double>(used.size()));
  fit.n_used = static_cast<int>(used.size());
  return fit;
}

std::vector<double> make_schedule(double min_epsilon, double max_epsilon, int count,
                                  bool log_spacing) {
  require(count >= 1, Errc::InvalidArgument, "schedule count must be at least 1");
  require(min_epsilon > 0.0, Errc::InvalidArgument, "schedule minimum must be positive");
  require(max_epsilon >= min_epsilon, Errc::InvalidArgument,
          "schedule maximum must be at least the minimum");
  std::vector<double> out(static_cast<size_t>(count));
  out.front() = min_epsilon;
  if (count == 1) return out;
  out.back() = max_epsilon;
  for (int k = 1; k + 1 < count; ++k) {
    double t = static_cast<double>(k) / static_cast<double>(count - 1);
    out[static_cast<size_t>(k)] =
        log_spacing ? std::exp(std::lerp(std::log(min_epsilon), std::log(max_epsilon), t))
                    : std::lerp(min_epsilon, max_epsilon, t);
  }
  return out;
}

}  // namespace loqgate
