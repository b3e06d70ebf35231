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

#pragma once

#include <vector>

#include "kdq/indexing.hpp"
#include "kdq/matrix.hpp"

namespace kdq {

/// Discrete Fourier transform unitary: entry (j, k) = omega^{jk} / sqrt(d).
/// Symmetric, and equal to the Hadamard for d = 2.
inline ComplexMatrix qft_matrix(std::size_t d) {
  if (d < 2) throw InvalidArgument("qft dimension must be at least 2");
  check_dim_cap(d);
  ComplexMatrix m(d, d);
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k)
      m(j, k) = s * root_of_unity(d, static_cast<long long>(j * k));
  return m;
}

/// Clock operator product Z^a = sum_m omega^{a.m} |m><m| over n qudits.
inline ComplexMatrix wh_z(const QuditIndexVector& a) {
  const std::size_t dim = pow_sz(a.d, a.n());
  check_dim_cap(dim);
  ComplexMatrix m(dim, dim);
  for (std::size_t f = 0; f < dim; ++f) {
    const auto mv = QuditIndexVector::from_flat(f, a.d, a.n());
    m(f, f) = root_of_unity(a.d, static_cast<long long>(dot_mod(a, mv)));
  }
  return m;
}

/// Shift operator product X^b = sum_m |m+b><m| over n qudits (addition mod d).
inline ComplexMatrix wh_x(const QuditIndexVector& b) {
  const std::size_t dim = pow_sz(b.d, b.n());
  check_dim_cap(dim);
  ComplexMatrix m(dim, dim);
  for (std::size_t f = 0; f < dim; ++f) {
    const auto mv = QuditIndexVector::from_flat(f, b.d, b.n());
    m(add_mod(mv, b).flat(), f) = 1.0;
  }
  return m;
}

/// 0/1 matrix with entry (perm[k], k) = 1.
inline ComplexMatrix permutation_matrix(const std::vector<std::size_t>& perm) {
  const std::size_t n = perm.size();
  ComplexMatrix m(n, n);
  std::vector<bool> seen(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    if (perm[k] >= n || seen[perm[k]]) throw InvalidArgument("not a permutation");
    seen[perm[k]] = true;
    m(perm[k], k) = 1.0;
  }
  return m;
}

/// Lift a gate acting on `targets` (in listed order) to the full n-qudit
/// space of local dimension d. Qudit 0 is the most significant index digit.
inline ComplexMatrix embed_unitary(const ComplexMatrix& u, const std::vector<std::size_t>& targets,
                                   std::size_t d, std::size_t n) {
  const std::size_t dim = pow_sz(d, n);
  check_dim_cap(dim);
  const std::size_t ldim = pow_sz(d, targets.size());
  if (u.rows() != ldim || u.cols() != ldim)
    throw DimensionMismatch("gate matrix does not match target arity");
  for (std::size_t t : targets)
    if (t >= n) throw InvalidArgument("gate target out of range");

  ComplexMatrix full(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const auto cv = QuditIndexVector::from_flat(col, d, n);
    std::size_t lcol = 0;
    for (std::size_t t : targets) lcol = lcol * d + cv.digits[t];
    for (std::size_t lrow = 0; lrow < ldim; ++lrow) {
      const cplx amp = u(lrow, lcol);
      if (amp == cplx{0.0, 0.0}) continue;
      auto rv = cv;
      std::size_t rest = lrow;
      for (std::size_t k = targets.size(); k-- > 0;) {
        rv.digits[targets[k]] = rest % d;
        rest /= d;
      }
      full(rv.flat(), col) = amp;
    }
  }
  return full;
}

}  // namespace kdq
