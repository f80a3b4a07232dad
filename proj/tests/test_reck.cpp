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
#include <set>

#include "doctest.h"
#include "error.hpp"
#include "helpers.hpp"
#include "metrics.hpp"
#include "reck.hpp"

using loqgate::Complex;
using loqgate::Matrix;

namespace {

/// Random element of the heralded CZ gauge group: counter-rotating phase
/// pairs on the dual-rail modes and free phases on the ancilla modes.
Matrix random_gauge_transform(const Matrix& u, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  Eigen::VectorXcd d_out = Eigen::VectorXcd::Ones(6);
  Eigen::VectorXcd d_in = Eigen::VectorXcd::Ones(6);
  for (int m = 0; m < 4; ++m) {
    double a = angle(rng);
    d_out[m] = std::polar(1.0, a);
    d_in[m] = std::polar(1.0, -a);
  }
  for (int m = 4; m < 6; ++m) {
    d_out[m] = std::polar(1.0, angle(rng));
    d_in[m] = std::polar(1.0, angle(rng));
  }
  return d_out.asDiagonal() * u * d_in.asDiagonal();
}

}  // namespace

TEST_CASE("rotation matrices have the documented block and are unitary") {
  loqgate::RotationElement r{3, 1, 0.4, -1.1};
  Matrix t = loqgate::rotation_matrix(4, r);
  Complex ph = std::polar(1.0, -1.1);
  CHECK(std::abs(t(0, 0) - ph * std::sin(0.4)) < 1e-15);
  CHECK(std::abs(t(0, 2) - ph * std::cos(0.4)) < 1e-15);
  CHECK(std::abs(t(2, 0) - std::cos(0.4)) < 1e-15);
  CHECK(std::abs(t(2, 2) + std::sin(0.4)) < 1e-15);
  CHECK(t(1, 1) == Complex(1.0, 0.0));
  CHECK(t(3, 3) == Complex(1.0, 0.0));
  CHECK(loqgate::unitarity_error(t) < 1e-15);

  CHECK_THROWS_AS(loqgate::rotation_matrix(4, loqgate::RotationElement{1, 3, 0.1, 0.0}),
                  loqgate::Error);
  CHECK_THROWS_AS(loqgate::rotation_matrix(4, loqgate::RotationElement{5, 1, 0.1, 0.0}),
                  loqgate::Error);
}

TEST_CASE("decompose and reconstruct round-trip random unitaries") {
  std::mt19937_64 rng(19);
  for (int n = 1; n <= 8; ++n) {
    for (int rep = 0; rep < 5; ++rep) {
      Matrix u = loqgate::random_unitary(n, rng);
      loqgate::Decomposition d = loqgate::decompose(u);
      CHECK(d.n_modes == n);
      CHECK(static_cast<int>(d.rotations.size()) <= n * (n - 1) / 2);
      for (const loqgate::RotationElement& r : d.rotations) {
        CHECK(r.omega >= 0.0);
        CHECK(r.omega <= std::numbers::pi / 2 + 1e-12);
        CHECK(r.phi > -std::numbers::pi - 1e-12);
        CHECK(r.phi <= std::numbers::pi + 1e-12);
      }
      CHECK(testutil::max_abs_diff(loqgate::reconstruct(d), u) < 1e-10);
    }
  }
}

TEST_CASE("generic unitaries need the full triangle of rotations") {
  std::mt19937_64 rng(67);
  Matrix u = loqgate::random_unitary(5, rng);
  CHECK(loqgate::decompose(u).rotations.size() == 10);
}

TEST_CASE("non-unitary input is rejected") {
  Matrix m = Matrix::Identity(3, 3);
  m(0, 1) = 0.2;
  try {
    loqgate::decompose(m);
    FAIL("expected an error");
  } catch (const loqgate::Error& e) {
    CHECK(e.code() == loqgate::Errc::NotUnitary);
  }
}

TEST_CASE("block-diagonal unitaries decompose block by block") {
  std::mt19937_64 rng(71);
  Matrix u = Matrix::Identity(4, 4);
  Matrix b1 = loqgate::random_unitary(2, rng);
  Matrix b2 = loqgate::random_unitary(2, rng);
  u.block(0, 0, 2, 2) = b1;
  u.block(2, 2, 2, 2) = b2;
  loqgate::Decomposition d = loqgate::decompose(u);
  for (const loqgate::RotationElement& r : d.rotations) {
    bool first = (r.mode_i == 2 && r.mode_j == 1);
    bool second = (r.mode_i == 4 && r.mode_j == 3);
    CHECK((first || second));
  }
  CHECK(testutil::max_abs_diff(loqgate::reconstruct(d), u) < 1e-12);
}

TEST_CASE("the frozen optimum compiles to six rotations on the active modes") {
  Matrix u = testutil::knill_fixture();
  loqgate::Decomposition d = loqgate::decompose(u);
  REQUIRE(d.rotations.size() == 6);
  std::set<std::pair<int, int>> pairs;
  for (const loqgate::RotationElement& r : d.rotations) pairs.insert({r.mode_i, r.mode_j});
  std::set<std::pair<int, int>> want = {{4, 2}, {5, 2}, {5, 4}, {6, 2}, {6, 4}, {6, 5}};
  CHECK(pairs == want);
  CHECK(testutil::max_abs_diff(loqgate::reconstruct(d), u) < 1e-12);
}

TEST_CASE("the heralded gauge group matches the target structure") {
  loqgate::DualRailEncoding enc = loqgate::default_encoding(2, 2);
  loqgate::GaugeSpec cz = loqgate::heralded_gauge(loqgate::target_gate("cz").matrix, enc);
  CHECK(cz.paired_modes == std::vector<int>{1, 2, 3, 4});
  CHECK(cz.free_out_modes == std::vector<int>{5, 6});
  CHECK(cz.free_in_modes == std::vector<int>{5, 6});

  // CNOT mixes the rails of the second qubit, so only the control qubit's
  // modes admit counter-rotating pairs.
  loqgate::GaugeSpec cnot = loqgate::heralded_gauge(loqgate::target_gate("cnot").matrix, enc);
  CHECK(cnot.paired_modes == std::vector<int>{1, 2});
}

TEST_CASE("gauge fixing maps a whole gauge orbit to one matrix") {
  std::mt19937_64 rng(83);
  Matrix u0 = testutil::knill_fixture();
  loqgate::GaugeSpec gauge =
      loqgate::heralded_gauge(loqgate::target_gate("cz").matrix, loqgate::default_encoding(2, 2));

  loqgate::GaugeFixer fixer(gauge);
  Matrix reference = fixer.apply(u0);
  CHECK(fixer.anchors().size() >= 5);
  for (auto [i, j] : fixer.anchors()) {
    Complex e = reference(i - 1, j - 1);
    CHECK(std::abs(std::arg(e)) < 1e-10);
    CHECK(e.real() > 0.0);
  }
  for (int rep = 0; rep < 8; ++rep) {
    loqgate::GaugeFixer fresh(gauge);
    Matrix fixed = fresh.apply(random_gauge_transform(u0, rng));
    CHECK(testutil::max_abs_diff(fixed, reference) < 1e-9);
  }

  // Re-applying is the identity: the anchors are already real positive.
  CHECK(testutil::max_abs_diff(fixer.apply(reference), reference) < 1e-12);
}

TEST_CASE("angle curves are gauge-independent after fixing") {
  std::mt19937_64 rng(97);
  Matrix u0 = testutil::knill_fixture();
  loqgate::GaugeSpec gauge =
      loqgate::heralded_gauge(loqgate::target_gate("cz").matrix, loqgate::default_encoding(2, 2));

  std::vector<double> deltas;
  std::vector<Matrix> family;
  for (int k = 0; k < 6; ++k) {
    deltas.push_back(0.01 * (k + 1));
    family.push_back(k == 0 ? u0 : random_gauge_transform(u0, rng));
  }
  loqgate::AngleReport report = loqgate::angle_curves(deltas, family, {1, 3}, &gauge);
  REQUIRE(report.pairs.size() == 6);
  REQUIRE(report.has_fixed);
  CHECK(report.anchors.size() >= 5);
  for (size_t s = 0; s < 6; ++s) {
    CHECK(report.phi_fixed_stddev[s] < 1e-9);
    // Mixing angles do not respond to the gauge at all.
    for (size_t p = 1; p < family.size(); ++p) {
      CHECK(std::abs(report.omegas[p][s] - report.omegas[0][s]) < 1e-9);
    }
  }
}

TEST_CASE("a change of rotation support raises a structural break") {
  std::mt19937_64 rng(101);
  Matrix u1 = testutil::knill_fixture();
  Matrix u2 = Matrix::Identity(6, 6);
  Matrix b = loqgate::random_unitary(2, rng);
  u2(1, 1) = b(0, 0);
  u2(1, 3) = b(0, 1);
  u2(3, 1) = b(1, 0);
  u2(3, 3) = b(1, 1);
  try {
    loqgate::angle_curves({0.01, 0.02}, {u1, u2}, {1, 3});
    FAIL("expected an error");
  } catch (const loqgate::Error& e) {
    CHECK(e.code() == loqgate::Errc::StructuralBreak);
  }
}

TEST_CASE("angle curves reject mismatched input lengths") {
  Matrix u = testutil::knill_fixture();
  CHECK_THROWS_AS(loqgate::angle_curves({0.01, 0.02}, {u}, {1, 3}), loqgate::Error);
  CHECK_THROWS_AS(loqgate::angle_curves({}, {}, {1, 3}), loqgate::Error);
}
