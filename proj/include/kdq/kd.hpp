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

// Quasiprobability distributions over a basis pair: construction from a
// state, frame reconstruction back to the state, and the scalar diagnostics
// (marginals, total non-positivity, support counts).

#pragma once

#include <utility>
#include <vector>

#include "kdq/basis.hpp"
#include "kdq/matrix.hpp"

namespace kdq {

/// D x D table of quasiprobabilities Q_ij = <b_j|a_i><a_i|rho|b_j>.
/// Arbitrary complex tables are representable on purpose: tables that do not
/// come from a quantum state are first-class values here, and validity is a
/// separate check (see hermiticity_residual).
struct KDDist {
  ComplexMatrix q;

  KDDist() = default;
  explicit KDDist(ComplexMatrix table) : q(std::move(table)) {
    if (!q.square()) throw InvalidArgument("quasiprobability table must be square");
    check_finite(q);
  }

  std::size_t dim() const { return q.rows(); }

  cplx sum() const {
    cplx s = 0.0;
    for (const cplx& z : q.data()) s += z;
    return s;
  }
};

inline KDDist build_kd(const DensityMatrix& rho, const BasisPair& bp) {
  const std::size_t d = bp.dim();
  if (rho.dim() != d) throw DimensionMismatch("state and basis pair dimensions differ");
  const ComplexMatrix rv = rho.mat * bp.v;  // (rho V)_ij = <a_i|rho|b_j>
  ComplexMatrix q(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) q(i, j) = std::conj(bp.v(i, j)) * rv(i, j);
  KDDist dist(std::move(q));
  if (std::abs(dist.sum() - cplx{1.0, 0.0}) > 1e-10)
    throw InvalidArgument("constructed distribution does not sum to 1");
  return dist;
}

inline KDDist build_kd(const PureState& psi, const BasisPair& bp) {
  return build_kd(DensityMatrix::pure(psi), bp);
}

/// Rank-1 frame element |a_i><b_j| / <b_j|a_i>.
struct Frame {
  std::size_t i = 0;
  std::size_t j = 0;
  ComplexMatrix op;
};

inline Frame frame(std::size_t i, std::size_t j, const BasisPair& bp, double zero_tol = 1e-10) {
  const std::size_t d = bp.dim();
  if (i >= d || j >= d) throw InvalidArgument("frame index out of range");
  const cplx denom = bp.b_a(j, i);
  if (std::abs(denom) <= zero_tol)
    throw NotInformationallyComplete("frame overlap <b_j|a_i> vanishes");
  ComplexMatrix op(d, d);
  for (std::size_t c = 0; c < d; ++c) op(i, c) = std::conj(bp.v(c, j)) / denom;
  return Frame{i, j, std::move(op)};
}

/// Frame expansion sum_ij Q_ij |a_i><b_j| / <b_j|a_i>, with no validity
/// checks on the result.
inline ComplexMatrix reconstruct_operator(const KDDist& dist, const BasisPair& bp,
                                          double zero_tol = 1e-10) {
  const std::size_t d = bp.dim();
  if (dist.dim() != d) throw DimensionMismatch("distribution and basis pair dimensions differ");
  require_informationally_complete(bp, zero_tol);
  ComplexMatrix rho(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) {
      cplx s = 0.0;
      for (std::size_t j = 0; j < d; ++j)
        s += dist.q(r, j) * std::conj(bp.v(c, j)) / std::conj(bp.v(r, j));
      rho(r, c) = s;
    }
  return rho;
}

inline DensityMatrix reconstruct_rho(const KDDist& dist, const BasisPair& bp,
                                     double zero_tol = 1e-10) {
  ComplexMatrix m = reconstruct_operator(dist, bp, zero_tol);
  // Rounding tolerances are looser than on direct construction; the input
  // table may itself carry ~1e-12 noise per entry.
  return DensityMatrix::from_matrix(std::move(m), 1e-9, 1e-9, 1e-8);
}

/// Row and column sums: outcome probabilities in basis A and basis B.
inline std::pair<std::vector<double>, std::vector<double>> marginals(const KDDist& dist) {
  const std::size_t d = dist.dim();
  std::vector<double> pa(d, 0.0), pb(d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      pa[i] += dist.q(i, j).real();
      pb[j] += dist.q(i, j).real();
    }
  return {std::move(pa), std::move(pb)};
}

/// l1 mass of the distribution; 1 exactly when the table is a probability
/// distribution, larger otherwise.
inline double total_nonpositivity(const KDDist& dist) {
  double n = 0.0;
  for (const cplx& z : dist.q.data()) n += std::abs(z);
  return n;
}

inline bool is_kd_positive(const KDDist& dist, double tol = 1e-10) {
  for (const cplx& z : dist.q.data())
    if (std::abs(z.imag()) > tol || z.real() < -tol) return false;
  return true;
}

struct SupportReport {
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  std::vector<std::size_t> support_a;
  std::vector<std::size_t> support_b;
  double zero_tol = 0.0;
};

/// Counts of non-vanishing amplitudes of a pure state in each basis.
inline SupportReport support_uncertainties(const PureState& psi, const BasisPair& bp,
                                           double zero_tol = 1e-10) {
  if (psi.dim() != bp.dim()) throw DimensionMismatch("state and basis pair dimensions differ");
  SupportReport rep;
  rep.zero_tol = zero_tol;
  const std::vector<cplx> amps_b = mat_vec(dagger(bp.v), psi.amp);  // <b_j|psi>
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    if (std::abs(psi.amp[i]) > zero_tol) rep.support_a.push_back(i);
    if (std::abs(amps_b[i]) > zero_tol) rep.support_b.push_back(i);
  }
  rep.n_a = rep.support_a.size();
  rep.n_b = rep.support_b.size();
  return rep;
}

}  // namespace kdq
