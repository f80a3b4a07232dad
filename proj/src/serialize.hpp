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

#include <string>
#include <vector>

#include "optimize.hpp"
#include "reck.hpp"
#include "types.hpp"

namespace loqgate {

// All emitters are hand-rolled with fixed key order and %.17g reals, so a
// given value always produces the same bytes and survives a parse round trip
// bit-exactly.

std::string format_real(double v);

/// Nested row-major array of [re, im] pairs.
std::string matrix_to_json(const Matrix& m);
Matrix matrix_from_json_text(const std::string& text);

std::string circuit_to_json(const Decomposition& d);
Decomposition circuit_from_json(const std::string& text);

/// A curve point bundled with everything needed to re-verify it.
struct PointRecord {
  CurvePoint point;
  GateProblem problem;
  Ansatz ansatz = Ansatz::Knill;
};

std::string point_to_json(const PointRecord& rec);
PointRecord point_from_json(const std::string& text);

std::string curve_to_csv(const std::vector<CurvePoint>& points);
/// Parsed rows carry no matrix; only epsilon/delta/success/converged.
std::vector<CurvePoint> curve_from_csv(const std::string& text);

std::string fit_to_json(const FitResult& fit);

std::string angle_report_to_json(const AngleReport& report);

}  // namespace loqgate
