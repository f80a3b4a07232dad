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

#include "types.hpp"

namespace loqgate {

/// Transition amplitude by brute-force expansion of the creation-operator
/// polynomial: every one of the N^M mode assignments is visited and its
/// monomial accumulated. Deliberately avoids the permanent formula so the
/// two paths can check each other. Capped at `photon_cap` photons.
Complex oracle_amplitude(const Matrix& u, const Occupation& in, const Occupation& out,
                         int photon_cap = 5);

}  // namespace loqgate
