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

#include "expansion_oracle.hpp"

#include <algorithm>
#include <cmath>

namespace loqgate {

Complex oracle_amplitude(const Matrix& u, const Occupation& in, const Occupation& out,
                         int photon_cap) {
  int n = static_cast<int>(u.rows());
  require(u.cols() == u.rows(), Errc::DimensionMismatch, "mode matrix must be square");
  require(static_cast<int>(in.size()) == n && static_cast<int>(out.size()) == n,
          Errc::DimensionMismatch, "occupation length must match the mode count");
  check_occupation(in, "oracle input");
  check_occupation(out, "oracle output");

  int m = total_photons(in);
  if (m != total_photons(out)) return Complex(0.0, 0.0);
  require(m <= photon_cap, Errc::Capacity, "photon number above the oracle cap");
  if (m == 0) return Complex(1.0, 0.0);

  // One polynomial factor (= one row of U) per photon.
  std::vector<int> photon_row;
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < in[static_cast<std::size_t>(i)]; ++r) photon_row.push_back(i);

  // Walk all N^M assignments of photons to output modes; each assignment is
  // one monomial of the expanded product.
  std::vector<int> choice(static_cast<std::size_t>(m), 0);
  Occupation counts(static_cast<std::size_t>(n), 0);
  Complex coeff_sum(0.0, 0.0);
  while (true) {
    std::fill(counts.begin(), counts.end(), 0);
    Complex term(1.0, 0.0);
    for (int t = 0; t < m; ++t) {
      int j = choice[static_cast<std::size_t>(t)];
      term *= u(photon_row[static_cast<std::size_t>(t)], j);
      counts[static_cast<std::size_t>(j)] += 1;
    }
    if (counts == out) coeff_sum += term;

    int t = 0;
    while (t < m) {
      if (++choice[static_cast<std::size_t>(t)] < n) break;
      choice[static_cast<std::size_t>(t)] = 0;
      ++t;
    }
    if (t == m) break;
  }

  double in_fact = 1.0, out_fact = 1.0;
  for (int i = 0; i < n; ++i) {
    for (int r = 2; r <= in[static_cast<std::size_t>(i)]; ++r) in_fact *= r;
    for (int r = 2; r <= out[static_cast<std::size_t>(i)]; ++r) out_fact *= r;
  }
  // (a^dag_j)^{m_j}|0> carries sqrt(m_j!), and the state is scaled by
  // 1/sqrt(n_i!) per input mode.
  return coeff_sum * std::sqrt(out_fact / in_fact);
}

}  // namespace loqgate
