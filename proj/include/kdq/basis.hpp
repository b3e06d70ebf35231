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

#include <optional>
#include <utility>
#include <vector>

#include "kdq/gates.hpp"
#include "kdq/matrix.hpp"

namespace kdq {

/// Reference bases of a quasiprobability distribution. Basis A is pinned to
/// the computational basis; basis B column j is V|j>, so <a_i|b_j> = V_ij.
/// When the pair describes n qudits with a product transition matrix, the
/// per-qudit factors are kept so local gates can be handled locally.
struct BasisPair {
  ComplexMatrix v;
  std::optional<std::vector<ComplexMatrix>> factors;

  std::size_t dim() const { return v.rows(); }

  cplx a_b(std::size_t i, std::size_t j) const { return v(i, j); }         // <a_i|b_j>
  cplx b_a(std::size_t j, std::size_t i) const { return std::conj(v(i, j)); }  // <b_j|a_i>

  /// Local dimension and qudit count: from the factor tag when present,
  /// otherwise the whole space is treated as one qudit.
  std::size_t local_dim() const { return factors ? (*factors)[0].rows() : dim(); }
  std::size_t qudit_count() const { return factors ? factors->size() : 1; }

  const ComplexMatrix& factor(std::size_t q) const {
    return factors ? (*factors)[q] : v;
  }

  static BasisPair from_unitary(ComplexMatrix v, double tol = 1e-12) {
    check_dim_cap(v.rows());
    check_finite(v);
    if (!is_unitary(v, tol)) throw InvalidArgument("transition matrix is not unitary");
    BasisPair bp;
    bp.v = std::move(v);
    return bp;
  }

  static BasisPair from_factors(std::vector<ComplexMatrix> fs, double tol = 1e-12) {
    if (fs.empty()) throw InvalidArgument("factor list is empty");
    const std::size_t d = fs[0].rows();
    ComplexMatrix v = fs[0];
    for (std::size_t q = 1; q < fs.size(); ++q) {
      if (fs[q].rows() != d || fs[q].cols() != d)
        throw InvalidArgument("basis factors must share one local dimension");
      v = kron(v, fs[q]);
    }
    BasisPair bp = from_unitary(std::move(v), tol);
    bp.factors = std::move(fs);
    return bp;
  }

  static BasisPair qft(std::size_t d, std::size_t n = 1) {
    return from_factors(std::vector<ComplexMatrix>(n, qft_matrix(d)));
  }

  static BasisPair hadamard(std::size_t n = 1) { return qft(2, n); }
};

/// (m, M): smallest and largest |<a_i|b_j>| over the pair.
inline std::pair<double, double> completeness_stats(const BasisPair& bp) {
  double lo = 1.0, hi = 0.0;
  for (const cplx& z : bp.v.data()) {
    const double a = std::abs(z);
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  return {lo, hi};
}

inline bool is_informationally_complete(const BasisPair& bp, double zero_tol = 1e-10) {
  return completeness_stats(bp).first > zero_tol;
}

inline void require_informationally_complete(const BasisPair& bp, double zero_tol = 1e-10) {
  if (!is_informationally_complete(bp, zero_tol))
    throw NotInformationallyComplete("a basis overlap vanishes; frame expansion is unavailable");
}

/// Mutually unbiased: every overlap modulus equals 1/sqrt(D).
inline bool is_mub(const BasisPair& bp, double tol = 1e-10) {
  const double target = 1.0 / std::sqrt(static_cast<double>(bp.dim()));
  for (const cplx& z : bp.v.data())
    if (std::abs(std::abs(z) - target) > tol) return false;
  return true;
}

/// Detects V = QFT_d^{(x) n}. Uses the stored factor structure when present;
/// a bare pair is only recognized as the single-qudit transform.
inline std::optional<std::pair<std::size_t, std::size_t>> qft_structure(const BasisPair& bp,
                                                                        double tol = 1e-10) {
  if (bp.factors) {
    const std::size_t d = bp.local_dim();
    const ComplexMatrix f = qft_matrix(d);
    for (std::size_t q = 0; q < bp.qudit_count(); ++q)
      if (max_abs_diff(bp.factor(q), f) > tol) return std::nullopt;
    return std::make_pair(d, bp.qudit_count());
  }
  if (max_abs_diff(bp.v, qft_matrix(bp.dim())) > tol) return std::nullopt;
  return std::make_pair(bp.dim(), std::size_t{1});
}

}  // namespace kdq
