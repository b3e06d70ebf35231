// Copyright 2026 The kdq developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Brute-force reference computations for the test suites. Everything here
// sticks to explicit index loops over raw amplitudes so that it stays an
// independent route from the library implementations it checks.

#pragma once

#include <complex>
#include <vector>

#include "kdq/kdq.hpp"

namespace oracle {

using kdq::cplx;
using kdq::ComplexMatrix;

/// <b_j|a_i><a_i|rho|b_j> from explicit sums over amplitudes.
inline cplx kd_entry(const ComplexMatrix& rho, const ComplexMatrix& v, std::size_t i,
                     std::size_t j) {
  cplx a_rho_b = 0.0;
  for (std::size_t c = 0; c < rho.cols(); ++c) a_rho_b += rho(i, c) * v(c, j);
  return std::conj(v(i, j)) * a_rho_b;
}

/// Quasiprobability of a state given explicit basis vectors a_i and b_j:
/// <b_j|a_i> <a_i|rho|b_j>.
inline cplx kd_entry_vectors(const ComplexMatrix& rho, const std::vector<cplx>& a,
                             const std::vector<cplx>& b) {
  const std::size_t d = a.size();
  cplx b_a = 0.0;
  for (std::size_t m = 0; m < d; ++m) b_a += std::conj(b[m]) * a[m];
  cplx a_rho_b = 0.0;
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) a_rho_b += std::conj(a[r]) * rho(r, c) * b[c];
  return b_a * a_rho_b;
}

inline ComplexMatrix evolve_unitary(const ComplexMatrix& u, const ComplexMatrix& rho) {
  return u * rho * kdq::dagger(u);
}

inline ComplexMatrix apply_channel(const std::vector<ComplexMatrix>& kraus,
                                   const ComplexMatrix& rho) {
  ComplexMatrix out(rho.rows(), rho.cols());
  for (const ComplexMatrix& k : kraus) out = out + k * rho * kdq::dagger(k);
  return out;
}

inline double born_probability(const ComplexMatrix& povm, const ComplexMatrix& rho) {
  return kdq::trace(povm * rho).real();
}

/// Statevector evolution of a circuit applied to a density matrix, followed
/// by Tr(F rho').
inline double circuit_probability(const kdq::Circuit& c, const ComplexMatrix& rho,
                                  const ComplexMatrix& povm) {
  ComplexMatrix state = rho;
  for (const kdq::Gate& g : c.gates)
    state = evolve_unitary(kdq::embed_unitary(g.u, g.targets, c.d, c.n), state);
  return born_probability(povm, state);
}

/// Separable multidimensional transform, axis by axis: a genuinely different
/// evaluation order from the library's direct double sum.
/// sign_a, sign_b pick the exponent signs on the row and column indices.
inline ComplexMatrix dft_per_axis(const ComplexMatrix& table, std::size_t d, std::size_t n,
                                  int sign_a, int sign_b) {
  const std::size_t dim = table.rows();
  ComplexMatrix cur = table;
  // Row-index axes.
  for (std::size_t axis = 0; axis < n; ++axis) {
    ComplexMatrix next(dim, dim);
    const std::size_t stride = kdq::pow_sz(d, n - 1 - axis);
    for (std::size_t row = 0; row < dim; ++row) {
      const std::size_t digit = (row / stride) % d;
      const std::size_t base = row - digit * stride;
      for (std::size_t src = 0; src < d; ++src) {
        const cplx w = kdq::root_of_unity(
            d, static_cast<long long>(sign_a) * static_cast<long long>(src * digit));
        for (std::size_t col = 0; col < dim; ++col)
          next(row, col) += w * cur(base + src * stride, col);
      }
    }
    cur = next;
  }
  // Column-index axes.
  for (std::size_t axis = 0; axis < n; ++axis) {
    ComplexMatrix next(dim, dim);
    const std::size_t stride = kdq::pow_sz(d, n - 1 - axis);
    for (std::size_t col = 0; col < dim; ++col) {
      const std::size_t digit = (col / stride) % d;
      const std::size_t base = col - digit * stride;
      for (std::size_t src = 0; src < d; ++src) {
        const cplx w = kdq::root_of_unity(
            d, static_cast<long long>(sign_b) * static_cast<long long>(src * digit));
        for (std::size_t row = 0; row < dim; ++row)
          next(row, col) += w * cur(row, base + src * stride);
      }
    }
    cur = next;
  }
  return cur;
}

/// d^{-n} Tr(rho Z^a X^b) via the operator constructors.
inline cplx wh_expectation(const ComplexMatrix& rho, const kdq::QuditIndexVector& a,
                           const kdq::QuditIndexVector& b) {
  const double scale = 1.0 / static_cast<double>(kdq::pow_sz(a.d, a.n()));
  return scale * kdq::trace(rho * kdq::wh_z(a) * kdq::wh_x(b));
}

}  // namespace oracle
