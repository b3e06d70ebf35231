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

// Vectorized evolution of quasiprobability distributions. A distribution
// matrix flattens row-major into a D^2 vector; a channel then acts as a
// D^2 x D^2 quasi-stochastic matrix (columns sum to 1, entries may be
// complex). POVM elements become dual vectors contracting distributions to
// Born probabilities, and unitaries with stochastic superoperators are
// detected via their generalized-permutation certificates.

#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "kdq/basis.hpp"
#include "kdq/kd.hpp"
#include "kdq/matrix.hpp"

namespace kdq {

/// Flat pair index convention: (i, j) -> i*D + j, matching row-major
/// stacking of the distribution matrix.
struct KDSuperop {
  std::size_t dim = 0;  // Hilbert-space dimension D; the matrix is D^2 per side
  ComplexMatrix m;
};

inline std::vector<cplx> vectorize(const KDDist& dist) { return dist.q.data(); }

inline KDDist devectorize(const std::vector<cplx>& v, std::size_t dim) {
  if (v.size() != dim * dim) throw DimensionMismatch("vector length is not D^2");
  return KDDist(ComplexMatrix(dim, dim, v));
}

namespace detail {

inline void check_column_sums(const ComplexMatrix& m, double tol = 1e-10) {
  for (std::size_t c = 0; c < m.cols(); ++c) {
    cplx s = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) s += m(r, c);
    if (std::abs(s - cplx{1.0, 0.0}) > tol)
      throw InvalidArgument("superoperator column does not sum to 1");
  }
}

}  // namespace detail

/// Superoperator of the channel rho -> sum_mu K_mu rho K_mu^dag.
/// Element ((i,j),(k,l)) = sum_mu <b_j|a_i>/<b_l|a_k> <a_i|K_mu|a_k> <b_l|K_mu^dag|b_j>.
inline KDSuperop superop_from_kraus(const std::vector<ComplexMatrix>& kraus, const BasisPair& bp,
                                    double channel_tol = 1e-10, double zero_tol = 1e-10) {
  const std::size_t d = bp.dim();
  if (kraus.empty()) throw NotAChannel("empty Kraus list");
  ComplexMatrix ksum(d, d);
  for (const ComplexMatrix& k : kraus) {
    if (k.rows() != d || k.cols() != d)
      throw DimensionMismatch("Kraus operator dimension differs from the basis pair");
    ksum = ksum + dagger(k) * k;
  }
  if (max_abs_diff(ksum, ComplexMatrix::identity(d)) > channel_tol)
    throw NotAChannel("Kraus operators do not resolve the identity");
  require_informationally_complete(bp, zero_tol);

  KDSuperop e;
  e.dim = d;
  e.m = ComplexMatrix(d * d, d * d);
  for (const ComplexMatrix& k : kraus) {
    const ComplexMatrix kb = dagger(bp.v) * k * bp.v;  // <b_l|K|b_j> = kb(l, j)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        const cplx num = std::conj(bp.v(i, j));
        for (std::size_t kk = 0; kk < d; ++kk) {
          const cplx ka = k(i, kk);
          if (ka == cplx{0.0, 0.0}) continue;
          for (std::size_t l = 0; l < d; ++l)
            e.m(i * d + j, kk * d + l) +=
                num / std::conj(bp.v(kk, l)) * ka * std::conj(kb(j, l));
        }
      }
  }
  detail::check_column_sums(e.m);
  return e;
}

inline KDSuperop superop_from_unitary(const ComplexMatrix& u, const BasisPair& bp,
                                      double unitary_tol = 1e-10, double zero_tol = 1e-10) {
  if (!is_unitary(u, unitary_tol)) throw NotAChannel("gate matrix is not unitary");
  return superop_from_kraus({u}, bp, 1e-9, zero_tol);
}

inline KDDist apply(const KDSuperop& e, const KDDist& dist) {
  if (e.dim != dist.dim()) throw DimensionMismatch("superoperator and distribution differ");
  return devectorize(mat_vec(e.m, vectorize(dist)), e.dim);
}

/// Tr(E) / D^2, equal to sum_mu |Tr K_mu|^2 / D^2 of the generating channel.
inline double entanglement_fidelity(const KDSuperop& e) {
  return trace(e.m).real() / static_cast<double>(e.dim * e.dim);
}

/// Largest deviation from the element-wise relation between the
/// superoperators of U and of U^dag. Zero (to rounding) for every unitary.
inline double inverse_relation_residual(const ComplexMatrix& u, const BasisPair& bp) {
  const std::size_t d = bp.dim();
  const KDSuperop e = superop_from_unitary(u, bp);
  const KDSuperop einv = superop_from_unitary(dagger(u), bp);
  double res = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) {
          const double w = std::norm(bp.v(i, j)) / std::norm(bp.v(k, l));
          const cplx expected = w * std::conj(e.m(k * d + l, i * d + j));
          res = std::max(res, std::abs(einv.m(i * d + j, k * d + l) - expected));
        }
  return res;
}

/// Functional contracting distributions to Tr(F rho).
struct DualVector {
  std::size_t dim = 0;
  std::vector<cplx> f;  // F_ij at flat index i*D + j
};

inline DualVector dual_vector(const ComplexMatrix& povm, const BasisPair& bp,
                              double zero_tol = 1e-10) {
  const std::size_t d = bp.dim();
  if (povm.rows() != d || povm.cols() != d)
    throw DimensionMismatch("POVM element dimension differs from the basis pair");
  require_informationally_complete(bp, zero_tol);
  const ComplexMatrix bf = dagger(bp.v) * povm;  // <b_j|F|a_i> = bf(j, i)
  DualVector dv;
  dv.dim = d;
  dv.f.resize(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) dv.f[i * d + j] = bf(j, i) / std::conj(bp.v(i, j));
  return dv;
}

inline cplx born_exact_complex(const DualVector& f, const std::vector<KDSuperop>& ops,
                               const KDDist& dist) {
  if (f.dim != dist.dim()) throw DimensionMismatch("dual vector and distribution differ");
  std::vector<cplx> v = vectorize(dist);
  for (const KDSuperop& e : ops) {
    if (e.dim != f.dim) throw DimensionMismatch("superoperator dimension differs");
    v = mat_vec(e.m, v);
  }
  cplx s = 0.0;
  for (std::size_t idx = 0; idx < v.size(); ++idx) s += f.f[idx] * v[idx];
  return s;
}

inline double born_exact(const DualVector& f, const std::vector<KDSuperop>& ops,
                         const KDDist& dist) {
  return born_exact_complex(f, ops, dist).real();
}

inline bool is_stochastic(const KDSuperop& e, double tol = 1e-10) {
  for (const cplx& z : e.m.data())
    if (std::abs(z.imag()) > tol || z.real() < -tol) return false;
  for (std::size_t c = 0; c < e.m.cols(); ++c) {
    cplx s = 0.0;
    for (std::size_t r = 0; r < e.m.rows(); ++r) s += e.m(r, c);
    if (std::abs(s - cplx{1.0, 0.0}) > tol) return false;
  }
  return true;
}

/// Witness that U permutes basis A and basis B up to phases:
/// U|a_i> = e^{i theta_i} |a_{sigma_a(i)}>, U|b_j> = e^{i phi_j} |b_{sigma_b(j)}>.
struct GenPermCertificate {
  std::vector<std::size_t> sigma_a;
  std::vector<double> theta;
  std::vector<std::size_t> sigma_b;
  std::vector<double> phi;
};

namespace detail {

// Scans each column for a single entry of modulus >= 1 - tol. For a unitary
// input a qualifying entry is necessarily unique.
inline bool monomial_action(const ComplexMatrix& m, double tol, std::vector<std::size_t>& perm,
                            std::vector<double>& phase) {
  const std::size_t d = m.rows();
  perm.assign(d, 0);
  phase.assign(d, 0.0);
  std::vector<bool> used(d, false);
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t best = 0;
    double best_mod = -1.0;
    for (std::size_t r = 0; r < d; ++r) {
      const double a = std::abs(m(r, c));
      if (a > best_mod) {
        best_mod = a;
        best = r;
      }
    }
    if (best_mod < 1.0 - tol || used[best]) return false;
    used[best] = true;
    perm[c] = best;
    phase[c] = std::arg(m(best, c));
  }
  return true;
}

}  // namespace detail

inline std::optional<GenPermCertificate> generalized_permutation_certificate(
    const ComplexMatrix& u, const BasisPair& bp, double tol = 1e-8) {
  if (u.rows() != bp.dim() || u.cols() != bp.dim())
    throw DimensionMismatch("unitary and basis pair dimensions differ");
  GenPermCertificate cert;
  if (!detail::monomial_action(u, tol, cert.sigma_a, cert.theta)) return std::nullopt;
  const ComplexMatrix ub = dagger(bp.v) * u * bp.v;  // U in basis B coordinates
  if (!detail::monomial_action(ub, tol, cert.sigma_b, cert.phi)) return std::nullopt;
  return cert;
}

/// The permutation superoperator sigma_a (x) sigma_b named by a certificate.
inline KDSuperop certificate_superop(const GenPermCertificate& cert, std::size_t dim) {
  KDSuperop e;
  e.dim = dim;
  e.m = kron(permutation_matrix(cert.sigma_a), permutation_matrix(cert.sigma_b));
  return e;
}

/// Fixture check used by the CLI classifier: does the superoperator keep
/// every A and B basis-state distribution KD positive?
inline bool preserves_positivity_on_basis_states(const ComplexMatrix& u, const BasisPair& bp,
                                                 double tol = 1e-10) {
  const std::size_t d = bp.dim();
  const KDSuperop e = superop_from_unitary(u, bp);
  for (std::size_t k = 0; k < d; ++k) {
    const KDDist qa = apply(e, build_kd(PureState::basis(d, k), bp));
    if (!is_kd_positive(qa, tol)) return false;
    std::vector<cplx> bcol(d);
    for (std::size_t r = 0; r < d; ++r) bcol[r] = bp.v(r, k);
    const KDDist qb = apply(e, build_kd(PureState(std::move(bcol), 1e-9), bp));
    if (!is_kd_positive(qb, tol)) return false;
  }
  return true;
}

// --- Norms used by the sampling cost model ---

inline double l1_norm(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const cplx& z : v) s += std::abs(z);
  return s;
}

inline double linf_norm(const DualVector& f) {
  double m = 0.0;
  for (const cplx& z : f.f) m = std::max(m, std::abs(z));
  return m;
}

inline double column_l1(const KDSuperop& e, std::size_t col) {
  double s = 0.0;
  for (std::size_t r = 0; r < e.m.rows(); ++r) s += std::abs(e.m(r, col));
  return s;
}

/// Induced l1 norm: the largest column l1 mass.
inline double induced_l1(const KDSuperop& e) {
  double m = 0.0;
  for (std::size_t c = 0; c < e.m.cols(); ++c) m = std::max(m, column_l1(e, c));
  return m;
}

}  // namespace kdq
