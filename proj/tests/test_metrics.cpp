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
#include <complex>
#include <random>

#include "doctest.h"
#include "error.hpp"
#include "fock.hpp"
#include "helpers.hpp"
#include "metrics.hpp"

using loqgate::Complex;
using loqgate::Matrix;

TEST_CASE("identity map against CZ scores 1/4") {
  Matrix cz = loqgate::target_gate("cz").matrix;
  CHECK(loqgate::fidelity(Matrix(Matrix::Identity(4, 4)), cz) ==
        doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("a scaled copy of the target is perfect") {
  Matrix cz = loqgate::target_gate("cz").matrix;
  Matrix a = std::polar(0.3, 1.2) * cz;
  CHECK(loqgate::fidelity(a, cz) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fidelity is invariant under rescaling the map") {
  std::mt19937_64 rng(3);
  Matrix cz = loqgate::target_gate("cz").matrix;
  for (int k = 0; k < 50; ++k) {
    Matrix a = testutil::random_complex_matrix(4, 4, rng);
    double f = loqgate::fidelity(a, cz);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
    Complex c = std::polar(2.7, 0.9);
    CHECK(std::abs(loqgate::fidelity(Matrix(c * a), cz) - f) < 1e-12);
  }
}

TEST_CASE("the zero map has no defined fidelity") {
  Matrix cz = loqgate::target_gate("cz").matrix;
  try {
    loqgate::fidelity(Matrix(Matrix::Zero(4, 4)), cz);
    FAIL("expected an error");
  } catch (const loqgate::Error& e) {
    CHECK(e.code() == loqgate::Errc::ZeroMap);
  }
}

TEST_CASE("norm bounds of a rank-deficient diagonal map") {
  Matrix a = Matrix::Zero(4, 4);
  a(0, 0) = 1.0;
  a(1, 1) = 1.0;
  a(2, 2) = 1.0;
  loqgate::NormBounds nb = loqgate::norm_bounds(a);
  CHECK(nb.min_sq >= 0.0);
  CHECK(nb.min_sq < 1e-12);
  CHECK(nb.hs == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(nb.max_sq == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("norm bounds sandwich the Hilbert-Schmidt mean") {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 200; ++k) {
    Matrix a = testutil::random_complex_matrix(4, 4, rng);
    loqgate::NormBounds nb = loqgate::norm_bounds(a);
    CHECK(nb.min_sq <= nb.hs + 1e-12);
    CHECK(nb.hs <= nb.max_sq + 1e-12);
    CHECK(nb.min_sq >= 0.0);
  }
}

TEST_CASE("success is unchanged when the device matrix is rescaled") {
  // Scaling U rescales every amplitude by c^M and the norm denominator by
  // |c|^(2M), so the ratio must not move.
  loqgate::GateProblem p = testutil::cz_problem();
  Matrix u = testutil::knill_fixture();
  loqgate::GateMap a1 = loqgate::extract_gate_map(u, p.encoding, p.ancilla);
  loqgate::GateMap a2 = loqgate::extract_gate_map(Matrix(2.0 * u), p.encoding, p.ancilla);
  double s1 = loqgate::success(a1, u, p.n_photons());
  double s2 = loqgate::success(a2, Matrix(2.0 * u), p.n_photons());
  CHECK(std::abs(s1 - s2) < 1e-10);
}

TEST_CASE("success of a unitary register without ancilla consumption is one") {
  loqgate::GateProblem p = testutil::cz_problem();
  loqgate::GateMap gm = loqgate::extract_gate_map(Matrix::Identity(6, 6), p.encoding, p.ancilla);
  CHECK(loqgate::success(gm, Matrix(Matrix::Identity(6, 6)), p.n_photons()) ==
        doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("matrix and gate-map overloads agree for leak-free maps") {
  std::mt19937_64 rng(29);
  Matrix cz = loqgate::target_gate("cz").matrix;
  Matrix u6 = loqgate::random_unitary(6, rng);
  for (int k = 0; k < 20; ++k) {
    Matrix a = testutil::random_complex_matrix(4, 4, rng);
    loqgate::GateMap gm = loqgate::GateMap::from_matrix(a);
    CHECK(testutil::max_abs_diff(gm.gram, Matrix(a.adjoint() * a)) < 1e-13);
    CHECK(std::abs(loqgate::fidelity(gm, cz) - loqgate::fidelity(a, cz)) < 1e-14);
    CHECK(std::abs(loqgate::success(gm, u6, 4) - loqgate::success(a, u6, 4)) < 1e-14);
    loqgate::NormBounds n1 = loqgate::norm_bounds(gm);
    loqgate::NormBounds n2 = loqgate::norm_bounds(a);
    CHECK(std::abs(n1.min_sq - n2.min_sq) < 1e-10);
    CHECK(std::abs(n1.hs - n2.hs) < 1e-12);
    CHECK(std::abs(n1.max_sq - n2.max_sq) < 1e-10);
  }
}

TEST_CASE("the frozen optimum is near-perfect by every metric") {
  loqgate::GateProblem p = testutil::cz_problem();
  Matrix u = testutil::knill_fixture();
  loqgate::GateMap gm = loqgate::extract_gate_map(u, p.encoding, p.ancilla);
  Matrix cz = loqgate::target_gate("cz").matrix;

  double f = loqgate::fidelity(gm, cz);
  CHECK(1.0 - f < 1e-9);
  CHECK(loqgate::infidelity(gm, cz) == doctest::Approx(1.0 - f).epsilon(1e-14));
  CHECK(loqgate::success(gm, u, p.n_photons()) ==
        doctest::Approx(2.0 / 27.0).epsilon(1e-8));

  loqgate::NormBounds nb = loqgate::norm_bounds(gm);
  CHECK(nb.min_sq / nb.max_sq > 1.0 - 1e-3);
}

TEST_CASE("operator norm and unitarity checks") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = Complex(0.0, 1.0);
  CHECK(loqgate::operator_norm(d) == doctest::Approx(3.0).epsilon(1e-14));

  std::mt19937_64 rng(41);
  Matrix u = loqgate::random_unitary(5, rng);
  CHECK(loqgate::unitarity_error(u) < 1e-12);
  CHECK(loqgate::is_unitary(u));
  Matrix bad = u;
  bad(0, 0) += 0.01;
  CHECK_FALSE(loqgate::is_unitary(bad));
}
