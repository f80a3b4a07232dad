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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <optional>
#include <random>

#include "doctest.h"
#include "error.hpp"
#include "helpers.hpp"
#include "metrics.hpp"
#include "optimize.hpp"

using loqgate::Matrix;

namespace {

loqgate::OptimizerConfig small_config(double epsilon, int restarts, std::uint64_t seed = 7) {
  loqgate::OptimizerConfig cfg;
  cfg.epsilon = epsilon;
  cfg.n_restarts = restarts;
  cfg.rng_seed = seed;
  return cfg;
}

std::vector<loqgate::CurvePoint> synthetic_points(double s0, double s1, double s2, int count) {
  std::vector<loqgate::CurvePoint> pts;
  for (int k = 0; k < count; ++k) {
    loqgate::CurvePoint pt;
    pt.delta = 0.002 * (k + 1);
    pt.success = s0 + s1 * std::sqrt(pt.delta) + s2 * pt.delta;
    pt.converged = true;
    pts.push_back(pt);
  }
  return pts;
}

}  // namespace

TEST_CASE("the identity device scores the textbook objective") {
  loqgate::GateProblem p = testutil::cz_problem();
  double got = loqgate::objective(Matrix::Identity(6, 6), p.target, p.encoding, p.ancilla, 0.5);
  CHECK(got == doctest::Approx(1.0 + 0.25 / 0.5).epsilon(1e-12));
}

TEST_CASE("evaluate reports the frozen optimum as a perfect low-rate gate") {
  loqgate::GateProblem p = testutil::cz_problem();
  loqgate::Evaluation ev = loqgate::evaluate(p, testutil::knill_fixture());
  CHECK_FALSE(ev.zero_map);
  CHECK(1.0 - ev.fidelity < 1e-9);
  CHECK(ev.success == doctest::Approx(2.0 / 27.0).epsilon(1e-8));
}

TEST_CASE("parameter counts match the ansatz") {
  loqgate::GateProblem p = testutil::cz_problem();
  CHECK(loqgate::n_params(p, loqgate::Ansatz::Knill) == 16);
  CHECK(loqgate::n_params(p, loqgate::Ansatz::Full) == 36);
}

TEST_CASE("parameterization builds unitaries and inverts through the log") {
  loqgate::GateProblem p = testutil::cz_problem();
  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss(0.0, 0.4);
  for (loqgate::Ansatz ansatz : {loqgate::Ansatz::Knill, loqgate::Ansatz::Full}) {
    Eigen::VectorXd theta(loqgate::n_params(p, ansatz));
    for (Eigen::Index k = 0; k < theta.size(); ++k) theta[k] = gauss(rng);
    Matrix u = loqgate::build_matrix(p, ansatz, theta);
    CHECK(loqgate::unitarity_error(u) < 1e-12);
    Eigen::VectorXd back = loqgate::params_from_unitary(p, ansatz, u);
    Matrix u2 = loqgate::build_matrix(p, ansatz, back);
    CHECK(testutil::max_abs_diff(u, u2) < 1e-9);
  }
}

TEST_CASE("ansatz names round-trip") {
  CHECK(loqgate::ansatz_from_name("knill") == loqgate::Ansatz::Knill);
  CHECK(loqgate::ansatz_from_name("full") == loqgate::Ansatz::Full);
  CHECK(loqgate::ansatz_name(loqgate::Ansatz::Knill) == "knill");
  CHECK(loqgate::ansatz_name(loqgate::Ansatz::Full) == "full");
  CHECK_THROWS_AS(loqgate::ansatz_from_name("other"), loqgate::Error);
}

TEST_CASE("schedules hit both endpoints exactly") {
  auto log_sched = loqgate::make_schedule(1e-4, 5.0, 30, true);
  REQUIRE(log_sched.size() == 30);
  CHECK(log_sched.front() == 1e-4);
  CHECK(log_sched.back() == 5.0);
  for (size_t k = 1; k < log_sched.size(); ++k) CHECK(log_sched[k] > log_sched[k - 1]);
  double r1 = log_sched[1] / log_sched[0];
  double r2 = log_sched[15] / log_sched[14];
  CHECK(r1 == doctest::Approx(r2).epsilon(1e-9));

  auto lin_sched = loqgate::make_schedule(1.0, 2.0, 5, false);
  REQUIRE(lin_sched.size() == 5);
  CHECK(lin_sched[2] == doctest::Approx(1.5).epsilon(1e-12));

  CHECK_THROWS_AS(loqgate::make_schedule(2.0, 1.0, 5, true), loqgate::Error);
  CHECK_THROWS_AS(loqgate::make_schedule(1.0, 2.0, 0, true), loqgate::Error);
}

TEST_CASE("config validation rejects nonsense") {
  loqgate::OptimizerConfig cfg;
  cfg.epsilon = -1.0;
  CHECK_THROWS_AS(cfg.validate(), loqgate::Error);
  cfg = {};
  cfg.n_restarts = 0;
  CHECK_THROWS_AS(cfg.validate(), loqgate::Error);
  cfg = {};
  cfg.n_threads = 0;
  CHECK_THROWS_AS(cfg.validate(), loqgate::Error);
}

TEST_CASE("maximize is deterministic for a fixed seed and thread count") {
  loqgate::GateProblem p = testutil::cz_problem();
  loqgate::OptimizerConfig cfg = small_config(0.5, 4, 99);
  loqgate::CurvePoint a = loqgate::maximize(cfg, p);
  loqgate::CurvePoint b = loqgate::maximize(cfg, p);
  CHECK(a.success == b.success);
  CHECK(a.delta == b.delta);
  CHECK(a.objective == b.objective);
  CHECK(testutil::max_abs_diff(a.u, b.u) == 0.0);

  cfg.n_threads = 2;
  loqgate::CurvePoint c = loqgate::maximize(cfg, p);
  CHECK(c.success == a.success);
  CHECK(testutil::max_abs_diff(c.u, a.u) == 0.0);
}

TEST_CASE("maximize returns unitary matrices and converges at small epsilon") {
  loqgate::GateProblem p = testutil::cz_problem();
  loqgate::CurvePoint pt = loqgate::maximize(small_config(1e-6, 8, 12345), p);
  CHECK(pt.converged);
  CHECK(loqgate::unitarity_error(pt.u) < 1e-10);
  CHECK(pt.delta <= 1e-5);
  CHECK(pt.success >= 2.0 / 27.0 - 1e-3);
  CHECK(pt.success <= 2.0 / 27.0 + 1e-6);
}

TEST_CASE("a warm start refines rather than restarts") {
  loqgate::GateProblem p = testutil::cz_problem();
  Matrix warm = testutil::knill_fixture();
  loqgate::CurvePoint pt = loqgate::maximize(small_config(1e-6, 1), p, &warm);
  CHECK(pt.converged);
  CHECK(pt.delta <= 1e-9);
  CHECK(pt.success == doctest::Approx(2.0 / 27.0).epsilon(1e-7));
}

TEST_CASE("traced curves are monotone and reuse resume points verbatim") {
  loqgate::GateProblem p = testutil::cz_problem();
  loqgate::OptimizerConfig cfg = small_config(0.5, 6, 21);
  std::vector<double> schedule = {0.5, 1.0, 2.0};
  loqgate::TraceResult tr = loqgate::trace_curve(schedule, cfg, p);
  REQUIRE(tr.points.size() == 3);
  for (size_t k = 0; k < 3; ++k) {
    CHECK(tr.points[k].converged);
    CHECK(tr.points[k].epsilon == schedule[k]);
    if (k > 0) CHECK(tr.points[k].success >= tr.points[k - 1].success - 1e-9);
  }

  std::vector<std::optional<loqgate::CurvePoint>> resume(3);
  resume[1] = tr.points[1];
  loqgate::TraceResult again = loqgate::trace_curve(schedule, cfg, p, &resume);
  CHECK(again.points[1].success == tr.points[1].success);
  CHECK(testutil::max_abs_diff(again.points[1].u, tr.points[1].u) == 0.0);
}

TEST_CASE("trace schedules must ascend") {
  loqgate::GateProblem p = testutil::cz_problem();
  loqgate::OptimizerConfig cfg = small_config(0.5, 2);
  CHECK_THROWS_AS(loqgate::trace_curve({1.0, 0.5}, cfg, p), loqgate::Error);
  CHECK_THROWS_AS(loqgate::trace_curve({}, cfg, p), loqgate::Error);
}

TEST_CASE("curve fits recover planted coefficients") {
  auto pts = synthetic_points(0.074, 0.08, 0.0, 12);
  loqgate::FitResult fit = loqgate::fit_curve(pts, 2);
  CHECK(fit.s0 == doctest::Approx(0.074).epsilon(1e-10));
  CHECK(fit.s1 == doctest::Approx(0.08).epsilon(1e-10));
  CHECK_FALSE(fit.has_s2);
  CHECK(fit.ratio == doctest::Approx(0.08 / 0.074).epsilon(1e-9));
  CHECK(fit.residual_rms < 1e-12);
  CHECK(fit.n_used == 12);

  auto pts3 = synthetic_points(0.074, 0.08, 0.02, 12);
  loqgate::FitResult fit3 = loqgate::fit_curve(pts3, 3);
  CHECK(fit3.has_s2);
  CHECK(fit3.s0 == doctest::Approx(0.074).epsilon(1e-9));
  CHECK(fit3.s1 == doctest::Approx(0.08).epsilon(1e-8));
  CHECK(fit3.s2 == doctest::Approx(0.02).epsilon(1e-7));
}

TEST_CASE("non-converged points are excluded unless asked for") {
  auto pts = synthetic_points(0.07, 0.1, 0.0, 8);
  pts[3].converged = false;
  pts[3].success = 10.0;  // an outlier that would wreck the fit
  loqgate::FitResult fit = loqgate::fit_curve(pts, 2);
  CHECK(fit.n_used == 7);
  CHECK(fit.s0 == doctest::Approx(0.07).epsilon(1e-9));
  loqgate::FitResult poisoned = loqgate::fit_curve(pts, 2, true);
  CHECK(poisoned.n_used == 8);
  CHECK(std::abs(poisoned.s0 - 0.07) > 0.1);
}

TEST_CASE("fits demand enough points and a non-degenerate design") {
  auto four = synthetic_points(0.07, 0.1, 0.0, 4);
  try {
    loqgate::fit_curve(four, 2);
    FAIL("expected an error");
  } catch (const loqgate::Error& e) {
    CHECK(e.code() == loqgate::Errc::InvalidArgument);
  }

  auto flat = synthetic_points(0.07, 0.1, 0.0, 8);
  for (auto& pt : flat) {
    pt.delta = 0.01;
    pt.success = 0.08;
  }
  try {
    loqgate::fit_curve(flat, 2);
    FAIL("expected an error");
  } catch (const loqgate::Error& e) {
    CHECK(e.code() == loqgate::Errc::RankDeficient);
  }
}
