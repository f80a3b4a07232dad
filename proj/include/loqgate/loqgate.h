/* Copyright 2026 The loqgate authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the loqgate core: simulation and optimization of
 * measurement-assisted linear-optical two-qubit gates, plus compilation of
 * mode transformations into beamsplitter/phase-shifter circuits.
 *
 * Complex matrices cross this boundary as row-major double arrays of
 * interleaved (re, im) pairs, so an n x n matrix occupies 2*n*n doubles.
 * Functions returning char** allocate with malloc; release the string with
 * loq_string_free. Every failing call stores a thread-local description
 * retrievable through loq_last_error.
 */

#ifndef LOQGATE_H
#define LOQGATE_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum loq_status {
  LOQ_OK = 0,
  LOQ_ERR_INVALID_ARGUMENT = 1,
  LOQ_ERR_DIMENSION = 2,
  LOQ_ERR_CAPACITY = 3,
  LOQ_ERR_NOT_UNITARY = 4,
  LOQ_ERR_ZERO_MAP = 5,
  LOQ_ERR_BAD_FORMAT = 6,
  LOQ_ERR_RANK_DEFICIENT = 7,
  LOQ_ERR_STRUCTURAL_BREAK = 8,
  LOQ_ERR_CONTINUATION = 9,
  LOQ_ERR_IO = 10,
  LOQ_ERR_INTERNAL = 11
} loq_status;

const char* loq_version(void);
const char* loq_last_error(void);
void loq_string_free(char* s);

/* -------- problem setup -------- */

typedef struct loq_problem loq_problem;

typedef struct loq_problem_spec {
  const char* target;          /* "cz", "cnot", "cs"; NULL to use target_matrix */
  double target_angle;         /* phase for "cs", radians */
  const double* target_matrix; /* side 2^n_qubits; NULL to use a named target */
  int n_qubits;
  const int* ancilla_in;      /* input photons per ancilla mode */
  const int* ancilla_pattern; /* heralding pattern, same length */
  int n_ancilla_modes;
  const char* ansatz;      /* "full" or "knill"; NULL means "knill" */
  const int* passive_modes; /* 1-based untouched modes; NULL means {1, 3} */
  int n_passive_modes;
} loq_problem_spec;

loq_status loq_problem_create(const loq_problem_spec* spec, loq_problem** out);
void loq_problem_free(loq_problem* p);
int loq_problem_n_modes(const loq_problem* p);
int loq_problem_n_qubits(const loq_problem* p);

/* -------- optimization -------- */

typedef struct loq_config {
  double epsilon;
  int restarts;
  int max_iterations;
  double gradient_step;
  double convergence_tol;
  unsigned long long seed;
  int threads;
} loq_config;

/* Fills the recommended defaults (epsilon .000001, 100 restarts, seed 12345). */
void loq_config_init(loq_config* c);

typedef struct loq_point loq_point;

/* Maximizes S + F/epsilon. warm_u (optional) skips the multistart and runs a
 * single ascent from the given unitary. A non-converged result is still
 * LOQ_OK; inspect loq_point_converged. */
loq_status loq_optimize(const loq_problem* p, const loq_config* c, const double* warm_u,
                        loq_point** out);

double loq_point_epsilon(const loq_point* pt);
double loq_point_delta(const loq_point* pt);
double loq_point_success(const loq_point* pt);
double loq_point_objective(const loq_point* pt);
int loq_point_converged(const loq_point* pt);
int loq_point_n_modes(const loq_point* pt);
loq_status loq_point_matrix(const loq_point* pt, double* interleaved);
void loq_point_free(loq_point* pt);

loq_status loq_point_to_json(const loq_point* pt, const loq_problem* p, char** json_out);
loq_status loq_point_parse(const char* json, loq_point** pt_out, loq_problem** problem_out);

/* Recomputes fidelity and success from the point's own matrix. */
loq_status loq_point_metrics(const loq_problem* p, const loq_point* pt, double* fidelity,
                             double* success);

/* -------- traced curves -------- */

typedef struct loq_curve loq_curve;

loq_status loq_curve_create(loq_curve** out);
loq_status loq_curve_append(loq_curve* curve, const loq_point* pt);
size_t loq_curve_size(const loq_curve* curve);
/* Borrowed reference, valid while the curve lives. */
const loq_point* loq_curve_point(const loq_curve* curve, size_t index);
void loq_curve_free(loq_curve* curve);

/* Continuation over an ascending epsilon schedule. Resume (optional) points
 * whose epsilon matches a schedule entry are reused instead of re-solved;
 * they must carry matrices. */
loq_status loq_trace(const loq_problem* p, const loq_config* c, const double* schedule,
                     int n_schedule, const loq_curve* resume, loq_curve** out);

/* Newline-separated monotonicity warnings; empty string when clean. */
loq_status loq_curve_warnings(const loq_curve* curve, char** text_out);
loq_status loq_curve_to_csv(const loq_curve* curve, char** csv_out);
/* Parses CSV rows; the resulting points carry no matrices. */
loq_status loq_curve_parse_csv(const char* csv, loq_curve** out);

loq_status loq_schedule_make(double min_epsilon, double max_epsilon, int count, int log_spacing,
                             double* out);

/* -------- curve fitting -------- */

typedef struct loq_fit_result {
  double s0;
  double s1;
  double s2;
  int has_s2;
  double ratio;
  double residual_rms;
  int n_used;
} loq_fit_result;

loq_status loq_fit(const loq_curve* curve, int n_terms, int include_nonconverged,
                   loq_fit_result* out);
loq_status loq_fit_to_json(const loq_fit_result* fit, char** json_out);

/* -------- circuit compilation -------- */

typedef struct loq_decomposition loq_decomposition;

loq_status loq_decompose(const double* u, int n, loq_decomposition** out);
int loq_decomposition_n_modes(const loq_decomposition* d);
int loq_decomposition_n_rotations(const loq_decomposition* d);
loq_status loq_decomposition_rotation(const loq_decomposition* d, int index, int* mode_i,
                                      int* mode_j, double* omega, double* phi);
loq_status loq_decomposition_output_phase(const loq_decomposition* d, int mode, double* phase);
loq_status loq_reconstruct(const loq_decomposition* d, double* u_out);
loq_status loq_circuit_to_json(const loq_decomposition* d, char** json_out);
loq_status loq_circuit_parse(const char* json, loq_decomposition** out);
void loq_decomposition_free(loq_decomposition* d);

/* Decomposes every point of a traced family under the canonical gauge and
 * reports the angle trajectories plus phase statistics as JSON. The report
 * also carries a second statistics block taken after fixing the residual
 * heralded phase freedom (ancilla input/output phases and compatible
 * dual-rail phase pairs), with the anchor entries that pin that gauge. */
loq_status loq_angle_report(const loq_curve* curve, const loq_problem* p, char** json_out);

/* Max entrywise deviation of U*U^dagger from the identity. */
loq_status loq_unitarity_error(const double* u, int n, double* error_out);

#ifdef __cplusplus
}
#endif

#endif /* LOQGATE_H */
