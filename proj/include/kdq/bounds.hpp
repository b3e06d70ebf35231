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

// Magnitude bounds on pure-state quasiprobabilities, the uniform structure
// of positive distributions on mutually unbiased pairs, and the
// distribution-level inner product formula.

#pragma once

#include <cmath>
#include <vector>

#include "kdq/basis.hpp"
#include "kdq/kd.hpp"

namespace kdq {

struct BoundReport {
  double max_abs_q = 0.0;
  double upper_bound = 0.0;   // M^3 sqrt(n_a n_b)
  double lower_bound = 0.0;   // m^3 when the distribution is KD positive, else 0
  bool upper_satisfied = false;
  bool lower_satisfied = false;  // vacuously true when the lower bound is 0
  bool kd_positive = false;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  double m = 0.0;
  double big_m = 0.0;
};

/// Every |Q_ij| of a pure state obeys |Q_ij| <= M^3 sqrt(n_a n_b); when the
/// distribution is KD positive its non-zero entries also obey Q_ij >= m^3.
/// "Non-zero" means modulus above zero_tol.
inline BoundReport check_bounds(const PureState& psi, const BasisPair& bp,
                                double zero_tol = 1e-10) {
  BoundReport rep;
  const auto [m, big_m] = completeness_stats(bp);
  rep.m = m;
  rep.big_m = big_m;
  const SupportReport sup = support_uncertainties(psi, bp, zero_tol);
  rep.n_a = sup.n_a;
  rep.n_b = sup.n_b;
  rep.upper_bound = big_m * big_m * big_m *
                    std::sqrt(static_cast<double>(sup.n_a) * static_cast<double>(sup.n_b));

  const KDDist dist = build_kd(psi, bp);
  rep.max_abs_q = max_abs(dist.q);
  rep.kd_positive = is_kd_positive(dist, zero_tol);
  rep.upper_satisfied = rep.max_abs_q <= rep.upper_bound + 1e-10;

  rep.lower_satisfied = true;
  if (rep.kd_positive && m > zero_tol) {
    rep.lower_bound = m * m * m;
    for (const cplx& z : dist.q.data()) {
      const double a = std::abs(z);
      if (a > zero_tol && a < rep.lower_bound - 1e-10) rep.lower_satisfied = false;
    }
  }
  return rep;
}

/// On a mutually unbiased pair, a KD positive pure state is uniform: every
/// entry is 0 or 1/D, the support size is exactly D, and the state's
/// amplitude moduli are sqrt(1/n_a) and sqrt(1/n_b) on the two supports.
inline bool check_mub_uniformity(const PureState& psi, const BasisPair& bp, double tol = 1e-9) {
  if (!is_mub(bp)) throw NotMUB("basis pair is not mutually unbiased");
  const std::size_t dim = bp.dim();
  const KDDist dist = build_kd(psi, bp);
  if (!is_kd_positive(dist, tol)) return false;

  const double uniform = 1.0 / static_cast<double>(dim);
  std::size_t support = 0;
  for (const cplx& z : dist.q.data()) {
    const double a = std::abs(z);
    if (a <= tol) continue;
    ++support;
    if (std::abs(a - uniform) > tol) return false;
  }
  const SupportReport sup = support_uncertainties(psi, bp, tol);
  if (sup.n_a * sup.n_b != dim || support != dim) return false;

  const double amp_a = std::sqrt(1.0 / static_cast<double>(sup.n_a));
  for (std::size_t i : sup.support_a)
    if (std::abs(std::abs(psi.amp[i]) - amp_a) > tol) return false;
  const std::vector<cplx> amps_b = mat_vec(dagger(bp.v), psi.amp);
  const double amp_b = std::sqrt(1.0 / static_cast<double>(sup.n_b));
  for (std::size_t j : sup.support_b)
    if (std::abs(std::abs(amps_b[j]) - amp_b) > tol) return false;
  return true;
}

/// |<psi|phi>|^2 = sum_ij conj(Q_ij(psi)) Q_ij(phi) / |<a_i|b_j>|^2.
inline double kd_inner_product(const KDDist& q1, const KDDist& q2, const BasisPair& bp,
                               double zero_tol = 1e-10) {
  const std::size_t d = bp.dim();
  if (q1.dim() != d || q2.dim() != d)
    throw DimensionMismatch("distribution and basis pair dimensions differ");
  require_informationally_complete(bp, zero_tol);
  cplx s = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      s += std::conj(q1.q(i, j)) * q2.q(i, j) / std::norm(bp.v(i, j));
  return s.real();
}

}  // namespace kdq
