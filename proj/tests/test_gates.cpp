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
#include <numbers>
#include <random>

#include "doctest.h"
#include "error.hpp"
#include "helpers.hpp"
#include "metrics.hpp"

using loqgate::Complex;
using loqgate::Matrix;

TEST_CASE("built-in targets have the expected matrices") {
  loqgate::TargetGate cz = loqgate::target_gate("cz");
  CHECK(cz.name == "cz");
  CHECK(cz.n_qubits() == 2);
  Matrix want = Matrix::Identity(4, 4);
  want(3, 3) = -1.0;
  CHECK(testutil::max_abs_diff(cz.matrix, want) == 0.0);

  loqgate::TargetGate cnot = loqgate::target_gate("cnot");
  Matrix wn = Matrix::Zero(4, 4);
  wn(0, 0) = 1.0;
  wn(1, 1) = 1.0;
  wn(2, 3) = 1.0;
  wn(3, 2) = 1.0;
  CHECK(testutil::max_abs_diff(cnot.matrix, wn) == 0.0);

  loqgate::TargetGate cs = loqgate::target_gate("cs", 0.7);
  Matrix ws = Matrix::Identity(4, 4);
  ws(3, 3) = std::polar(1.0, 0.7);
  CHECK(testutil::max_abs_diff(cs.matrix, ws) < 1e-15);

  loqgate::TargetGate cs_pi = loqgate::target_gate("cs", std::numbers::pi);
  CHECK(testutil::max_abs_diff(cs_pi.matrix, cz.matrix) < 1e-15);
}

TEST_CASE("unknown target names are rejected") {
  try {
    loqgate::target_gate("fredkin");
    FAIL("expected an error");
  } catch (const loqgate::Error& e) {
    CHECK(e.code() == loqgate::Errc::InvalidArgument);
  }
}

TEST_CASE("user targets are validated for unitarity") {
  std::mt19937_64 rng(5);
  Matrix u = loqgate::random_unitary(4, rng);
  loqgate::TargetGate tg = loqgate::user_target(u);
  CHECK(tg.name == "user");
  CHECK(tg.n_qubits() == 2);

  Matrix bad = u;
  bad(2, 2) += 0.1;
  CHECK_THROWS_AS(loqgate::user_target(bad), loqgate::Error);
}

TEST_CASE("ansatz embedding leaves passive modes untouched") {
  std::mt19937_64 rng(17);
  Matrix block = loqgate::random_unitary(4, rng);
  Matrix u = loqgate::embed_ansatz(block, 6, {1, 3});
  CHECK(loqgate::is_unitary(u, 1e-12));
  CHECK(u(0, 0) == Complex(1.0, 0.0));
  CHECK(u(2, 2) == Complex(1.0, 0.0));
  for (int k : {1, 3, 4, 5}) {
    CHECK(u(0, k) == Complex(0.0, 0.0));
    CHECK(u(k, 0) == Complex(0.0, 0.0));
    CHECK(u(2, k) == Complex(0.0, 0.0));
    CHECK(u(k, 2) == Complex(0.0, 0.0));
  }
  CHECK(testutil::max_abs_diff(loqgate::extract_active_block(u, {1, 3}), block) == 0.0);
}

TEST_CASE("active modes are the ascending complement of the passive set") {
  CHECK(loqgate::active_modes(6, {1, 3}) == std::vector<int>{2, 4, 5, 6});
  CHECK(loqgate::active_modes(4, {}) == std::vector<int>{1, 2, 3, 4});
  CHECK(loqgate::active_modes(3, {1, 2, 3}).empty());
}

TEST_CASE("random unitaries are unitary and seed-deterministic") {
  std::mt19937_64 a(123), b(123), c(124);
  Matrix ua = loqgate::random_unitary(5, a);
  Matrix ub = loqgate::random_unitary(5, b);
  Matrix uc = loqgate::random_unitary(5, c);
  CHECK(loqgate::unitarity_error(ua) < 1e-12);
  CHECK(testutil::max_abs_diff(ua, ub) == 0.0);
  CHECK(testutil::max_abs_diff(ua, uc) > 1e-3);
}
