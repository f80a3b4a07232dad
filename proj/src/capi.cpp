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

#include "loqgate/loqgate.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "fock.hpp"
#include "gates.hpp"
#include "metrics.hpp"
#include "optimize.hpp"
#include "reck.hpp"
#include "serialize.hpp"
#include "types.hpp"

struct loq_problem {
  loqgate::GateProblem problem;
  loqgate::Ansatz ansatz = loqgate::Ansatz::Knill;
};

struct loq_point {
  loqgate::CurvePoint point;
};

struct loq_curve {
  std::vector<loq_point> points;
  std::vector<std::string> warnings;
};

struct loq_decomposition {
  loqgate::Decomposition d;
};

namespace {

thread_local std::string g_last_error;

loq_status map_errc(loqgate::Errc code) {
  using loqgate::Errc;
  switch (code) {
    case Errc::InvalidArgument: return LOQ_ERR_INVALID_ARGUMENT;
    case Errc::DimensionMismatch: return LOQ_ERR_DIMENSION;
    case Errc::Capacity: return LOQ_ERR_CAPACITY;
    case Errc::NotUnitary: return LOQ_ERR_NOT_UNITARY;
    case Errc::ZeroMap: return LOQ_ERR_ZERO_MAP;
    case Errc::BadFormat: return LOQ_ERR_BAD_FORMAT;
    case Errc::RankDeficient: return LOQ_ERR_RANK_DEFICIENT;
    case Errc::StructuralBreak: return LOQ_ERR_STRUCTURAL_BREAK;
    case Errc::ContinuationFailure: return LOQ_ERR_CONTINUATION;
    case Errc::Io: return LOQ_ERR_IO;
    case Errc::Internal: return LOQ_ERR_INTERNAL;
  }
  return LOQ_ERR_INTERNAL;
}

template <typename Fn>
loq_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    g_last_error.clear();
    return LOQ_OK;
  } catch (const loqgate::Error& e) {
    g_last_error = e.what();
    return map_errc(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LOQ_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return LOQ_ERR_INTERNAL;
  }
}

loq_status fail(loq_status code, const char* message) {
  g_last_error = message;
  return code;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

loqgate::Matrix matrix_from_interleaved(const double* data, int rows, int cols) {
  loqgate::require(data != nullptr, loqgate::Errc::InvalidArgument, "matrix data is null");
  loqgate::Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const double* cell = data + 2 * (r * cols + c);
      m(r, c) = loqgate::Complex(cell[0], cell[1]);
    }
  return m;
}

void matrix_to_interleaved(const loqgate::Matrix& m, double* out) {
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      double* cell = out + 2 * (r * m.cols() + c);
      cell[0] = m(r, c).real();
      cell[1] = m(r, c).imag();
    }
}

loqgate::OptimizerConfig to_core_config(const loq_config& c, loqgate::Ansatz ansatz) {
  loqgate::OptimizerConfig cfg;
  cfg.epsilon = c.epsilon;
  cfg.n_restarts = c.restarts;
  cfg.max_iterations = c.max_iterations;
  cfg.gradient_step = c.gradient_step;
  cfg.convergence_tol = c.convergence_tol;
  cfg.rng_seed = c.seed;
  cfg.ansatz = ansatz;
  cfg.n_threads = c.threads;
  return cfg;
}

std::vector<loqgate::CurvePoint> core_points(const loq_curve& curve) {
  std::vector<loqgate::CurvePoint> out;
  out.reserve(curve.points.size());
  for (const loq_point& pt : curve.points) out.push_back(pt.point);
  return out;
}

}  // namespace

extern "C" {

const char* loq_version(void) { return "0.1.0"; }

const char* loq_last_error(void) { return g_last_error.c_str(); }

void loq_string_free(char* s) { std::free(s); }

loq_status loq_problem_create(const loq_problem_spec* spec, loq_problem** out) {
  if (spec == nullptr || out == nullptr)
    return fail(LOQ_ERR_INVALID_ARGUMENT, "spec and out must not be null");
  *out = nullptr;
  return guarded([&]() {
    auto handle = std::make_unique<loq_problem>();
    loqgate::GateProblem& prob = handle->problem;

    if (spec->target_matrix != nullptr) {
      loqgate::require(spec->n_qubits >= 1, loqgate::Errc::InvalidArgument,
                       "n_qubits must be at least 1");
      int dim = 1 << spec->n_qubits;
      prob.target = loqgate::user_target(matrix_from_interleaved(spec->target_matrix, dim, dim),
                                         spec->target != nullptr ? spec->target : "user");
    } else {
      loqgate::require(spec->target != nullptr, loqgate::Errc::InvalidArgument,
                       "either target or target_matrix is required");
      prob.target = loqgate::target_gate(spec->target, spec->target_angle);
    }

    loqgate::require(spec->n_ancilla_modes >= 0, loqgate::Errc::InvalidArgument,
                     "n_ancilla_modes must be non-negative");
    if (spec->n_ancilla_modes > 0) {
      loqgate::require(spec->ancilla_in != nullptr && spec->ancilla_pattern != nullptr,
                       loqgate::Errc::InvalidArgument,
                       "ancilla occupations are required when n_ancilla_modes > 0");
      prob.ancilla.input.assign(spec->ancilla_in, spec->ancilla_in + spec->n_ancilla_modes);
      prob.ancilla.pattern.assign(spec->ancilla_pattern,
                                  spec->ancilla_pattern + spec->n_ancilla_modes);
    }
    prob.encoding = loqgate::default_encoding(spec->n_qubits, spec->n_ancilla_modes);

    handle->ansatz = (spec->ansatz != nullptr) ? loqgate::ansatz_from_name(spec->ansatz)
                                               : loqgate::Ansatz::Knill;
    if (spec->passive_modes != nullptr && spec->n_passive_modes > 0)
      prob.passive_modes.assign(spec->passive_modes,
                                spec->passive_modes + spec->n_passive_modes);

    prob.validate(handle->ansatz);
    *out = handle.release();
  });
}

void loq_problem_free(loq_problem* p) { delete p; }

int loq_problem_n_modes(const loq_problem* p) {
  return (p != nullptr) ? p->problem.n_modes() : 0;
}

int loq_problem_n_qubits(const loq_problem* p) {
  return (p != nullptr) ? p->problem.encoding.n_qubits : 0;
}

void loq_config_init(loq_config* c) {
  if (c == nullptr) return;
  loqgate::OptimizerConfig defaults;
  c->epsilon = defaults.epsilon;
  c->restarts = defaults.n_restarts;
  c->max_iterations = defaults.max_iterations;
  c->gradient_step = defaults.gradient_step;
  c->convergence_tol = defaults.convergence_tol;
  c->seed = defaults.rng_seed;
  c->threads = defaults.n_threads;
}

loq_status loq_optimize(const loq_problem* p, const loq_config* c, const double* warm_u,
                        loq_point** out) {
  if (p == nullptr || c == nullptr || out == nullptr)
    return fail(LOQ_ERR_INVALID_ARGUMENT, "problem, config and out must not be null");
  *out = nullptr;
  return guarded([&]() {
    loqgate::OptimizerConfig cfg = to_core_config(*c, p->ansatz);
    auto handle = std::make_unique<loq_point>();
    if (warm_u != nullptr) {
      int n = p->problem.n_modes();
      loqgate::Matrix warm = matrix_from_interleaved(warm_u, n, n);
      handle->point = loqgate::maximize(cfg, p->problem, &warm);
    } else {
      handle->point = loqgate::maximize(cfg, p->problem);
    }
    *out = handle.release();
  });
}

double loq_point_epsilon(const loq_point* pt) { return pt ? pt->point.epsilon : 0.0; }
double loq_point_delta(const loq_point* pt) { return pt ? pt->point.delta : 0.0; }
double loq_point_success(const loq_point* pt) { return pt ? pt->point.success : 0.0; }
double loq_point_objective(const loq_point* pt) { return pt ? pt->point.objective : 0.0; }
int loq_point_converged(const loq_point* pt) { return (pt && pt->point.converged) ? 1 : 0; }

int loq_point_n_modes(const loq_point* pt) {
  return pt ? static_cast<int>(pt->point.u.rows()) : 0;
}

loq_status loq_point_matrix(const loq_point* pt, double* interleaved) {
  if (pt == nullptr || interleaved == nullptr)
    return fail(LOQ_ERR_INVALID_ARGUMENT, "point and buffer must not be null");
  if (pt->point.u.size() == 0) return fail(LOQ_ERR_INVALID_ARGUMENT, "point carries no matrix");
  matrix_to_interleaved(pt->point.u, interleaved);
  g_last_error.clear();
  return LOQ_OK;
}

void loq_point_free(loq_point* pt) { delete pt; }

loq_status loq_point_to_json(const loq_point* pt, const loq_problem* p, char** json_out) {
  if (pt == nullptr || p == nullptr || json_out == nullptr)
    return fail(LOQ_ERR_INVALID_ARGUMENT, "point, problem and out must not be null");
  *json_out = nullptr;
  return guarded([&]() {
    loqgate::PointRecord rec{pt->point, p->problem, p->ansatz};
    *json_out = dup_string(loqgate::point_to_json(rec));
    loqgate::require(*json_out != nullptr, loqgate::Errc::Internal, "allocation failed");
  });
}

loq_status loq_point_parse(const char* json, loq_point** pt_out, loq_problem** problem_out) {
  if (json == nullptr || pt_out == nullptr)
    return fail(LOQ_ERR_INVALID_ARGUMENT, "json and point out must not be null");
  *pt_out = nullptr;
  if (problem_out != nullptr) *problem_out = nullptr;
  return guarded([&]() {
    loqgate::PointRecord rec = loqgate::point_from_json(json);
    auto pt = std::make_unique<loq_point>();
    pt->point = std::move(rec.point);
    if (problem_out != nullptr) {
      auto prob = std::make_unique<loq_problem>();
      prob->problem = std::move(rec.problem);
      prob->ansatz = rec.ansatz;
      *problem_out = prob.release();
    }
    *pt_out = pt.release();
  });
}

loq_status loq_point_metrics(const loq_problem* p, const loq_point* pt, double* fidelity,
                             double* success) {
  if (p == nullptr || pt == nullptr || fidelity == nullptr || success == nullptr)
    return fail(LOQ_ERR_INVALID_ARGUMENT, "all arguments must not be null");
  return guarded([&]() {
    loqgate::Evaluation ev = loqgate::evaluate(p->problem, pt->point.u);
    loqgate::require(!ev.zero_map, loqgate::Errc::ZeroMap,
                     "the post-selected map of this matrix vanishes");
    *fidelity = ev.fidelity;
    *success = ev.success;
  });
}

loq_status loq_curve_create(loq_curve** out) {
  if (out == nullptr) return fail(LOQ_ERR_INVALID_ARGUMENT, "out must not be null");
  *out = new loq_curve();
  g_last_error.clear();
  return LOQ_OK;
}

loq_status loq_curve_append(loq_curve* curve, const loq_point* pt) {
  if (curve == nullptr || pt == nullptr)
    return fail(LOQ_ERR_INVALID_ARGUMENT, "curve and point must not be null");
  curve->points.push_back(*pt);
  g_last_error.clear();
  return LOQ_OK;
}

size_t loq_curve_size(const loq_curve* curve) { return curve ? curve->points.size() : 0; }

const loq_point* loq_curve_point(const loq_curve* curve, size_t index) {
  if (curve == nullptr || index >= curve->points.size()) return nullptr;
  return &curve->points[index];
}

void loq_curve_free(loq_curve* curve) { delete curve; }

loq_status loq_trace(const loq_problem* p, const loq_config* c, const double* schedule,
                     int n_schedule, const loq_curve* resume, loq_curve** out) {
  if (p == nullptr || c == nullptr || schedule == nullptr || out == nullptr)
    return fail(LOQ_ERR_INVALID_ARGUMENT, "problem, config, schedule and out must not be null");
  if (n_schedule < 1) return fail(LOQ_ERR_INVALID_ARGUMENT, "schedule must not be empty");
  *out = nullptr;
  return guarded([&]() {
    std::vector<double> sched(schedule, schedule + n_schedule);
    std::vector<std::optional<loqgate::CurvePoint>> resume_slots;
    std::vector<std::optional<loqgate::CurvePoint>>* resume_ptr = nullptr;
    if (resume != nullptr && !resume->points.empty()) {
      resume_slots.assign(sched.size(), std::nullopt);
      for (const loq_point& rp : resume->points) {
        for (size_t k = 0; k < sched.size(); ++k) {
          if (std::abs(rp.point.epsilon - sched[k]) <= 1e-12 * sched[k]) {
            resume_slots[k] = rp.point;
            break;
          }
        }
      }
      resume_ptr = &resume_slots;
    }
    loqgate::OptimizerConfig cfg = to_core_config(*c, p->ansatz);
    loqgate::TraceResult res = loqgate::trace_curve(sched, cfg, p->problem, resume_ptr);
    auto handle = std::make_unique<loq_curve>();
    handle->points.reserve(res.points.size());
    for (loqgate::CurvePoint& cp : res.points) handle->points.push_back(loq_point{std::move(cp)});
    handle->warnings = std::move(res.warnings);
    *out = handle.release();
  });
}

loq_status loq_curve_warnings(const loq_curve* curve, char** text_out) {
  if (curve == nullptr || text_out == nullptr)
    return fail(LOQ_ERR_INVALID_ARGUMENT, "curve and out must not be null");
  std::string joined;
  for (const std::string& w : curve->warnings) {
    joined += w;
    joined += '\n';
  }
  *text_out = dup_string(joined);
  if (*text_out == nullptr) return fail(LOQ_ERR_INTERNAL, "allocation failed");
  g_last_error.clear();
  return LOQ_OK;
}

loq_status loq_curve_to_csv(const loq_curve* curve, char** csv_out) {
  if (curve == nullptr || csv_out == nullptr)
    return fail(LOQ_ERR_INVALID_ARGUMENT, "curve and out must not be null");
  *csv_out = nullptr;
  return guarded([&]() {
    *csv_out = dup_string(loqgate::curve_to_csv(core_points(*curve)));
    loqgate::require(*csv_out != nullptr, loqgate::Errc::Internal, "allocation failed");
  });
}

loq_status loq_curve_parse_csv(const char* csv, loq_curve** out) {
  if (csv == nullptr || out == nullptr)
    return fail(LOQ_ERR_INVALID_ARGUMENT, "csv and out must not be null");
  *out = nullptr;
  return guarded([&]() {
    auto handle = std::make_unique<loq_curve>();
    for (loqgate::CurvePoint& cp : loqgate::curve_from_csv(csv))
      handle->points.push_back(loq_point{std::move(cp)});
    *out = handle.release();
  });
}

loq_status loq_schedule_make(double min_epsilon, double max_epsilon, int count, int log_spacing,
                             double* out) {
  if (out == nullptr) return fail(LOQ_ERR_INVALID_ARGUMENT, "out must not be null");
  return guarded([&]() {
    std::vector<double> sched =
        loqgate::make_schedule(min_epsilon, max_epsilon, count, log_spacing != 0);
    std::memcpy(out, sched.data(), sched.size() * sizeof(double));
  });
}

loq_status loq_fit(const loq_curve* curve, int n_terms, int include_nonconverged,
                   loq_fit_result* out) {
  if (curve == nullptr || out == nullptr)
    return fail(LOQ_ERR_INVALID_ARGUMENT, "curve and out must not be null");
  return guarded([&]() {
    loqgate::FitResult fit =
        loqgate::fit_curve(core_points(*curve), n_terms, include_nonconverged != 0);
    out->s0 = fit.s0;
    out->s1 = fit.s1;
    out->s2 = fit.s2;
    out->has_s2 = fit.has_s2 ? 1 : 0;
    out->ratio = fit.ratio;
    out->residual_rms = fit.residual_rms;
    out->n_used = fit.n_used;
  });
}

loq_status loq_fit_to_json(const loq_fit_result* fit, char** json_out) {
  if (fit == nullptr || json_out == nullptr)
    return fail(LOQ_ERR_INVALID_ARGUMENT, "fit and out must not be null");
  *json_out = nullptr;
  return guarded([&]() {
    loqgate::FitResult core;
    core.s0 = fit->s0;
    core.s1 = fit->s1;
    core.s2 = fit->s2;
    core.has_s2 = fit->has_s2 != 0;
    core.ratio = fit->ratio;
    core.residual_rms = fit->residual_rms;
    core.n_used = fit->n_used;
    *json_out = dup_string(loqgate::fit_to_json(core));
    loqgate::require(*json_out != nullptr, loqgate::Errc::Internal, "allocation failed");
  });
}

loq_status loq_decompose(const double* u, int n, loq_decomposition** out) {
  if (u == nullptr || out == nullptr)
    return fail(LOQ_ERR_INVALID_ARGUMENT, "matrix and out must not be null");
  if (n < 1) return fail(LOQ_ERR_INVALID_ARGUMENT, "matrix size must be positive");
  *out = nullptr;
  return guarded([&]() {
    auto handle = std::make_unique<loq_decomposition>();
    handle->d = loqgate::decompose(matrix_from_interleaved(u, n, n));
    *out = handle.release();
  });
}

int loq_decomposition_n_modes(const loq_decomposition* d) { return d ? d->d.n_modes : 0; }

int loq_decomposition_n_rotations(const loq_decomposition* d) {
  return d ? static_cast<int>(d->d.rotations.size()) : 0;
}

loq_status loq_decomposition_rotation(const loq_decomposition* d, int index, int* mode_i,
                                      int* mode_j, double* omega, double* phi) {
  if (d == nullptr || mode_i == nullptr || mode_j == nullptr || omega == nullptr ||
      phi == nullptr)
    return fail(LOQ_ERR_INVALID_ARGUMENT, "all arguments must not be null");
  if (index < 0 || index >= static_cast<int>(d->d.rotations.size()))
    return fail(LOQ_ERR_INVALID_ARGUMENT, "rotation index out of range");
  const loqgate::RotationElement& r = d->d.rotations[static_cast<size_t>(index)];
  *mode_i = r.mode_i;
  *mode_j = r.mode_j;
  *omega = r.omega;
  *phi = r.phi;
  g_last_error.clear();
  return LOQ_OK;
}

loq_status loq_decomposition_output_phase(const loq_decomposition* d, int mode, double* phase) {
  if (d == nullptr || phase == nullptr)
    return fail(LOQ_ERR_INVALID_ARGUMENT, "decomposition and out must not be null");
  if (mode < 1 || mode > d->d.n_modes)
    return fail(LOQ_ERR_INVALID_ARGUMENT, "mode index out of range");
  *phase = d->d.output_phases[static_cast<size_t>(mode - 1)];
  g_last_error.clear();
  return LOQ_OK;
}

loq_status loq_reconstruct(const loq_decomposition* d, double* u_out) {
  if (d == nullptr || u_out == nullptr)
    return fail(LOQ_ERR_INVALID_ARGUMENT, "decomposition and buffer must not be null");
  return guarded([&]() { matrix_to_interleaved(loqgate::reconstruct(d->d), u_out); });
}

loq_status loq_circuit_to_json(const loq_decomposition* d, char** json_out) {
  if (d == nullptr || json_out == nullptr)
    return fail(LOQ_ERR_INVALID_ARGUMENT, "decomposition and out must not be null");
  *json_out = nullptr;
  return guarded([&]() {
    *json_out = dup_string(loqgate::circuit_to_json(d->d));
    loqgate::require(*json_out != nullptr, loqgate::Errc::Internal, "allocation failed");
  });
}

loq_status loq_circuit_parse(const char* json, loq_decomposition** out) {
  if (json == nullptr || out == nullptr)
    return fail(LOQ_ERR_INVALID_ARGUMENT, "json and out must not be null");
  *out = nullptr;
  return guarded([&]() {
    auto handle = std::make_unique<loq_decomposition>();
    handle->d = loqgate::circuit_from_json(json);
    *out = handle.release();
  });
}

void loq_decomposition_free(loq_decomposition* d) { delete d; }

loq_status loq_angle_report(const loq_curve* curve, const loq_problem* p, char** json_out) {
  if (curve == nullptr || p == nullptr || json_out == nullptr)
    return fail(LOQ_ERR_INVALID_ARGUMENT, "curve, problem and out must not be null");
  *json_out = nullptr;
  return guarded([&]() {
    std::vector<double> deltas;
    std::vector<loqgate::Matrix> matrices;
    deltas.reserve(curve->points.size());
    matrices.reserve(curve->points.size());
    for (const loq_point& pt : curve->points) {
      loqgate::require(pt.point.u.size() > 0, loqgate::Errc::InvalidArgument,
                       "angle report needs points that carry matrices");
      deltas.push_back(pt.point.delta);
      matrices.push_back(pt.point.u);
    }
    std::vector<int> passive =
        (p->ansatz == loqgate::Ansatz::Knill) ? p->problem.passive_modes : std::vector<int>{};
    loqgate::GaugeSpec gauge =
        loqgate::heralded_gauge(p->problem.target.matrix, p->problem.encoding);
    loqgate::AngleReport report = loqgate::angle_curves(deltas, matrices, passive, &gauge);
    *json_out = dup_string(loqgate::angle_report_to_json(report));
    loqgate::require(*json_out != nullptr, loqgate::Errc::Internal, "allocation failed");
  });
}

loq_status loq_unitarity_error(const double* u, int n, double* error_out) {
  if (u == nullptr || error_out == nullptr)
    return fail(LOQ_ERR_INVALID_ARGUMENT, "matrix and out must not be null");
  if (n < 1) return fail(LOQ_ERR_INVALID_ARGUMENT, "matrix size must be positive");
  return guarded(
      [&]() { *error_out = loqgate::unitarity_error(matrix_from_interleaved(u, n, n)); });
}

}  // extern "C"
