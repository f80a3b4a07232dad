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

#include <stdexcept>
#include <string>

namespace loqgate {

/// Error categories mirrored one-to-one by the C API status codes.
enum class Errc {
  InvalidArgument,
  DimensionMismatch,
  Capacity,       // requested Fock sector (or photon number) above the configured cap
  NotUnitary,
  ZeroMap,        // gate map identically zero; fidelity undefined
  BadFormat,      // malformed JSON/CSV input
  RankDeficient,  // degenerate least-squares design
  StructuralBreak,// beamsplitter sparsity pattern changes along a curve
  ContinuationFailure,
  Io,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

inline void require(bool cond, Errc code, const std::string& what) {
  if (!cond) throw Error(code, what);
}

}  // namespace loqgate
