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

#include "fock.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>

namespace loqgate {

namespace {

double factorial(int n) {
  static const auto table = [] {
    std::array<double, 171> t{};
    t[0] = 1.0;
    for (std::size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] * static_cast<double>(i);
    return t;
  }();
  require(n >= 0 && n < static_cast<int>(table.size()), Errc::Capacity, "factorial overflow");
  return table[static_cast<std::size_t>(n)];
}

// Exact binomial via the multiplicative formula; throws on overflow of the cap.
std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i is always integral at this point
    long double next = static_cast<long double>(result) * static_cast<long double>(n - k + i) /
                       static_cast<long double>(i);
    require(next <= static_cast<long double>(cap) * 2.0L, Errc::Capacity,
            "Fock sector dimension above capacity cap");
    result = result * (n - k + i) / i;
  }
  return result;
}

}  // namespace

void DualRailEncoding::validate() const {
  require(n_qubits >= 1, Errc::InvalidArgument, "encoding needs at least one qubit");
  require(static_cast<int>(computational_modes.size()) == 2 * n_qubits, Errc::DimensionMismatch,
          "dual-rail encoding needs two modes per qubit");
  std::vector<int> all = computational_modes;
  all.insert(all.end(), ancilla_modes.begin(), ancilla_modes.end());
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < all.size(); ++i)
    require(all[i] == static_cast<int>(i) + 1, Errc::InvalidArgument,
            "computational and ancilla modes must partition 1..N");
}

DualRailEncoding default_encoding(int n_qubits, int n_ancilla_modes) {
  DualRailEncoding enc;
  enc.n_qubits = n_qubits;
  for (int m = 1; m <= 2 * n_qubits; ++m) enc.computational_modes.push_back(m);
  for (int m = 0; m < n_ancilla_modes; ++m) enc.ancilla_modes.push_back(2 * n_qubits + 1 + m);
  enc.validate();
  return enc;
}

std::uint64_t sector_dimension(int n_modes, int n_photons) {
  require(n_modes >= 1, Errc::InvalidArgument, "sector needs at least one mode");
  require(n_photons >= 0, Errc::InvalidArgument, "negative photon number");
  std::uint64_t dim = binomial_capped(static_cast<std::uint64_t>(n_modes + n_photons - 1),
                                      static_cast<std::uint64_t>(n_photons), kSectorCap);
  require(dim <= kSectorCap, Errc::Capacity, "Fock sector dimension above capacity cap");
  return dim;
}

std::vector<Occupation> enumerate_sector(int n_modes, int n_photons) {
  std::uint64_t dim = sector_dimension(n_modes, n_photons);
  std::vector<Occupation> basis;
  basis.reserve(dim);
  Occupation occ(static_cast<std::size_t>(n_modes), 0);
  // Lexicographic order falls out of choosing the first mode's count last.
  auto fill = [&](auto&& self, int mode, int remaining) -> void {
    if (mode == n_modes - 1) {
      occ[static_cast<std::size_t>(mode)] = remaining;
      basis.push_back(occ);
      return;
    }
    for (int n = 0; n <= remaining; ++n) {
      occ[static_cast<std::size_t>(mode)] = n;
      self(self, mode + 1, remaining - n);
    }
  };
  fill(fill, 0, n_photons);
  return basis;
}

std::uint64_t sector_index(const Occupation& occ) {
  check_occupation(occ, "sector_index");
  int n = static_cast<int>(occ.size());
  int remaining = total_photons(occ);
  std::uint64_t rank = 0;
  for (int mode = 0; mode < n - 1; ++mode) {
    for (int c = 0; c < occ[static_cast<std::size_t>(mode)]; ++c) {
      // completions with count c at this mode and `remaining - c` photons left
      rank += binomial_capped(static_cast<std::uint64_t>(n - mode - 2 + remaining - c),
                              static_cast<std::uint64_t>(remaining - c), kSectorCap);
    }
    remaining -= occ[static_cast<std::size_t>(mode)];
  }
  return rank;
}

Complex permanent(const Matrix& a) {
  require(a.rows() == a.cols(), Errc::DimensionMismatch, "permanent of a non-square matrix");
  int n = static_cast<int>(a.rows());
  if (n == 0) return Complex(1.0, 0.0);
  require(n <= 24, Errc::Capacity, "permanent dimension above cap");

  // Ryser: per(A) = (-1)^n sum over non-empty column subsets S of
  // (-1)^|S| prod_i sum_{j in S} a_ij, visiting subsets in Gray-code order.
  Eigen::VectorXcd row_sums = Eigen::VectorXcd::Zero(n);
  Complex total(0.0, 0.0);
  std::uint32_t gray = 0;
  int popcount = 0;
  std::uint32_t end = 1u << n;
  for (std::uint32_t k = 1; k < end; ++k) {
    std::uint32_t next_gray = k ^ (k >> 1);
    std::uint32_t changed = gray ^ next_gray;
    int j = std::countr_zero(changed);
    if (next_gray & changed) {
      row_sums += a.col(j);
      ++popcount;
    } else {
      row_sums -= a.col(j);
      --popcount;
    }
    gray = next_gray;
    Complex prod(1.0, 0.0);
    for (int i = 0; i < n; ++i) prod *= row_sums(i);
    total += ((n - popcount) % 2 == 0) ? prod : -prod;
  }
  return total;
}

Complex transition_amplitude(const Matrix& u, const Occupation& in, const Occupation& out) {
  int n = static_cast<int>(u.rows());
  require(u.cols() == u.rows(), Errc::DimensionMismatch, "mode matrix must be square");
  require(static_cast<int>(in.size()) == n && static_cast<int>(out.size()) == n,
          Errc::DimensionMismatch, "occupation length must match the mode count");
  check_occupation(in, "input occupation");
  check_occupation(out, "output occupation");

  int m = total_photons(in);
  if (m != total_photons(out)) return Complex(0.0, 0.0);
  if (m == 0) return Complex(1.0, 0.0);

  Matrix sub(m, m);
  int row = 0;
  for (int i = 0; i < n; ++i) {
    for (int r = 0; r < in[static_cast<std::size_t>(i)]; ++r, ++row) {
      int col = 0;
      for (int j = 0; j < n; ++j)
        for (int c = 0; c < out[static_cast<std::size_t>(j)]; ++c, ++col) sub(row, col) = u(i, j);
    }
  }

  double norm = 1.0;
  for (int i = 0; i < n; ++i) norm *= factorial(in[static_cast<std::size_t>(i)]);
  for (int j = 0; j < n; ++j) norm *= factorial(out[static_cast<std::size_t>(j)]);
  return permanent(sub) / std::sqrt(norm);
}

Complex SectorState::amplitude(const Occupation& occ) const {
  require(static_cast<int>(occ.size()) == n_modes, Errc::DimensionMismatch,
          "occupation length must match the state's mode count");
  require(total_photons(occ) == n_photons, Errc::InvalidArgument,
          "occupation lies outside the state's photon sector");
  return amplitudes(static_cast<Eigen::Index>(sector_index(occ)));
}

SectorState apply_mode_transform(const Matrix& u, const Occupation& in) {
  int n = static_cast<int>(u.rows());
  require(u.cols() == u.rows(), Errc::DimensionMismatch, "mode matrix must be square");
  require(static_cast<int>(in.size()) == n, Errc::DimensionMismatch,
          "input occupation length must match the mode count");
  int m = total_photons(in);

  SectorState state;
  state.n_modes = n;
  state.n_photons = m;
  auto basis = enumerate_sector(n, m);
  state.amplitudes.resize(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k)
    state.amplitudes(static_cast<Eigen::Index>(k)) = transition_amplitude(u, in, basis[k]);
  return state;
}

Occupation register_occupation(const DualRailEncoding& enc, int basis_index,
                               const Occupation& anc_occ) {
  Occupation occ(static_cast<std::size_t>(enc.n_modes()), 0);
  for (int r = 0; r < enc.n_qubits; ++r) {
    int bit = (basis_index >> (enc.n_qubits - 1 - r)) & 1;  // qubit 1 is the high bit
    int mode = enc.computational_modes[static_cast<std::size_t>(2 * r + bit)];
    occ[static_cast<std::size_t>(mode - 1)] += 1;
  }
  for (std::size_t a = 0; a < anc_occ.size(); ++a)
    occ[static_cast<std::size_t>(enc.ancilla_modes[a] - 1)] = anc_occ[a];
  return occ;
}

GateMap extract_gate_map(const Matrix& u, const DualRailEncoding& enc, const AncillaSpec& anc) {
  enc.validate();
  anc.validate();
  require(anc.n_modes() == static_cast<int>(enc.ancilla_modes.size()), Errc::DimensionMismatch,
          "ancilla spec does not match the encoding's ancilla modes");
  require(static_cast<int>(u.rows()) == enc.n_modes(), Errc::DimensionMismatch,
          "mode matrix size must match the encoding");

  int dim = enc.dim();
  int n_comp = enc.n_computational_modes();
  GateMap gm;
  gm.n_qubits = enc.n_qubits;
  gm.entries = Matrix::Zero(dim, dim);
  gm.gram = Matrix::Zero(dim, dim);

  // Photons left on the computational modes after the heralding detectors
  // fire. A pattern the photon budget cannot support heralds nothing.
  int m_out = enc.n_qubits + anc.input_photons() - anc.pattern_photons();
  if (m_out < 0) return gm;

  auto out_sector = enumerate_sector(n_comp, m_out);
  Matrix full(static_cast<Eigen::Index>(out_sector.size()), dim);
  Occupation out(static_cast<std::size_t>(enc.n_modes()), 0);
  for (std::size_t a = 0; a < anc.pattern.size(); ++a)
    out[static_cast<std::size_t>(enc.ancilla_modes[a] - 1)] = anc.pattern[a];
  for (int l = 0; l < dim; ++l) {
    Occupation in = register_occupation(enc, l, anc.input);
    for (std::size_t s = 0; s < out_sector.size(); ++s) {
      for (int c = 0; c < n_comp; ++c)
        out[static_cast<std::size_t>(enc.computational_modes[static_cast<std::size_t>(c)] - 1)] =
            out_sector[s][static_cast<std::size_t>(c)];
      full(static_cast<Eigen::Index>(s), l) = transition_amplitude(u, in, out);
    }
  }
  gm.gram = full.adjoint() * full;

  if (m_out == enc.n_qubits) {
    for (int k = 0; k < dim; ++k) {
      Occupation comp(static_cast<std::size_t>(n_comp), 0);
      for (int r = 0; r < enc.n_qubits; ++r) {
        int bit = (k >> (enc.n_qubits - 1 - r)) & 1;
        comp[static_cast<std::size_t>(2 * r + bit)] += 1;
      }
      gm.entries.row(k) = full.row(static_cast<Eigen::Index>(sector_index(comp)));
    }
  }
  return gm;
}

}  // namespace loqgate
