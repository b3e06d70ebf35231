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

// Fourier structure of distributions on Fourier-transform basis pairs.
//
// Two transform conventions coexist here and must not be mixed up:
//   hat:   T(x,y) = sum_{a,b} omega^{-(a.x + b.y)} Q(a,b)   (no prefactor)
//   tilde: T(a,b) = d^{-n} sum_{i,j} omega^{-i.a + j.b} Q(i,j)
// The hat transform carries the self-similarity constraint; the conjugated
// tilde transform is the table of Weyl-Heisenberg expectation values that
// feeds the Wigner pipeline for odd d. Transforms are evaluated as direct
// sums (D^4 work), which is fine at the dimensions this library targets.

#pragma once

#include <utility>
#include <vector>

#include "kdq/basis.hpp"
#include "kdq/gates.hpp"
#include "kdq/indexing.hpp"
#include "kdq/kd.hpp"

namespace kdq {

/// Complex table indexed by a pair of vectors in Z_d^n (big-endian flattening
/// on both axes).
struct DftTable {
  std::size_t d = 2;
  std::size_t n = 1;
  ComplexMatrix t;
};

/// Weyl-Heisenberg expectation table: conj(values(a,b)) = d^{-n} Tr(rho Z^a X^b)
/// when built from a state.
struct WHTable {
  std::size_t d = 2;
  std::size_t n = 1;
  ComplexMatrix values;
};

/// Real phase-space table over (p, q) in Z_d^n x Z_d^n, odd d only.
struct WignerDist {
  std::size_t d = 3;
  std::size_t n = 1;
  std::vector<double> w;  // row-major, p-major

  double& at(std::size_t p, std::size_t q) { return w[p * pow_sz(d, n) + q]; }
  double at(std::size_t p, std::size_t q) const { return w[p * pow_sz(d, n) + q]; }
};

inline std::size_t inverse_of_two(std::size_t d) {
  if (d % 2 == 0) throw EvenDimension("2 has no inverse modulo even d");
  return (d + 1) / 2;
}

/// Convolution kernel Omega(a,b) = d^{-n} omega^{a.b}; valid distributions
/// conjugate under convolution with it, and its hat transform is omega^{-x.y}.
struct OmegaKernel {
  std::size_t d = 2;
  std::size_t n = 1;
  ComplexMatrix entries;

  static OmegaKernel make(std::size_t d, std::size_t n) {
    const std::size_t dim = pow_sz(d, n);
    check_dim_cap(dim);
    OmegaKernel k{d, n, ComplexMatrix(dim, dim)};
    const double scale = 1.0 / static_cast<double>(dim);
    for (std::size_t a = 0; a < dim; ++a) {
      const auto av = QuditIndexVector::from_flat(a, d, n);
      for (std::size_t b = 0; b < dim; ++b) {
        const auto bv = QuditIndexVector::from_flat(b, d, n);
        k.entries(a, b) = scale * root_of_unity(d, static_cast<long long>(dot_mod(av, bv)));
      }
    }
    return k;
  }
};

inline ComplexMatrix omega_kernel(std::size_t d, std::size_t n) {
  return OmegaKernel::make(d, n).entries;
}

/// Largest violation of the Hermiticity constraints satisfied by every
/// distribution that reconstructs to a Hermitian operator:
/// Q_uv = sum_ij <a_i|b_v><b_v|a_u><a_u|b_j> / <a_i|b_j> conj(Q_ij).
inline double hermiticity_residual(const KDDist& dist, const BasisPair& bp,
                                   double zero_tol = 1e-10) {
  const std::size_t d = bp.dim();
  if (dist.dim() != d) throw DimensionMismatch("distribution and basis pair dimensions differ");
  require_informationally_complete(bp, zero_tol);
  double res = 0.0;
  for (std::size_t u = 0; u < d; ++u)
    for (std::size_t v = 0; v < d; ++v) {
      cplx s = 0.0;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          s += bp.v(i, v) * std::conj(bp.v(u, v)) * bp.v(u, j) / bp.v(i, j) *
               std::conj(dist.q(i, j));
      res = std::max(res, std::abs(dist.q(u, v) - s));
    }
  return res;
}

namespace detail {

inline std::pair<std::size_t, std::size_t> require_qft_family(const BasisPair& bp) {
  const auto st = qft_structure(bp);
  if (!st) throw WrongBasisFamily("operation requires a Fourier-transform basis pair");
  return *st;
}

inline void check_table_dim(std::size_t table_dim, std::size_t d, std::size_t n) {
  if (table_dim != pow_sz(d, n)) throw DimensionMismatch("table does not match d^n");
}

}  // namespace detail

/// Unnormalized transform with both exponents negative.
inline ComplexMatrix hat_dft_table(const ComplexMatrix& table, std::size_t d, std::size_t n) {
  detail::check_table_dim(table.rows(), d, n);
  const std::size_t dim = table.rows();
  ComplexMatrix out(dim, dim);
  std::vector<QuditIndexVector> idx(dim);
  for (std::size_t f = 0; f < dim; ++f) idx[f] = QuditIndexVector::from_flat(f, d, n);
  for (std::size_t x = 0; x < dim; ++x)
    for (std::size_t y = 0; y < dim; ++y) {
      cplx s = 0.0;
      for (std::size_t a = 0; a < dim; ++a) {
        const long long ax = static_cast<long long>(dot_mod(idx[a], idx[x]));
        for (std::size_t b = 0; b < dim; ++b) {
          const long long by = static_cast<long long>(dot_mod(idx[b], idx[y]));
          s += root_of_unity(d, -(ax + by)) * table(a, b);
        }
      }
      out(x, y) = s;
    }
  return out;
}

inline DftTable hat_dft(const KDDist& dist, const BasisPair& bp) {
  const auto [d, n] = detail::require_qft_family(bp);
  if (dist.dim() != bp.dim()) throw DimensionMismatch("distribution and basis pair differ");
  return DftTable{d, n, hat_dft_table(dist.q, d, n)};
}

/// Largest violation of hat(d-x, d-y) = omega^{x.y} conj(hat(x, y)),
/// index arithmetic component-wise mod d.
inline double self_similarity_residual(const DftTable& hat) {
  const std::size_t dim = pow_sz(hat.d, hat.n);
  double res = 0.0;
  for (std::size_t x = 0; x < dim; ++x) {
    const auto xv = QuditIndexVector::from_flat(x, hat.d, hat.n);
    const std::size_t xm = neg_mod(xv).flat();
    for (std::size_t y = 0; y < dim; ++y) {
      const auto yv = QuditIndexVector::from_flat(y, hat.d, hat.n);
      const std::size_t ym = neg_mod(yv).flat();
      const cplx expected =
          root_of_unity(hat.d, static_cast<long long>(dot_mod(xv, yv))) * std::conj(hat.t(x, y));
      res = std::max(res, std::abs(hat.t(xm, ym) - expected));
    }
  }
  return res;
}

/// Normalized transform with exponent signs (-i.a, +j.b).
inline WHTable tilde_dft(const KDDist& dist, const BasisPair& bp) {
  const auto [d, n] = detail::require_qft_family(bp);
  if (dist.dim() != bp.dim()) throw DimensionMismatch("distribution and basis pair differ");
  const std::size_t dim = dist.dim();
  WHTable out{d, n, ComplexMatrix(dim, dim)};
  const double scale = 1.0 / static_cast<double>(dim);
  std::vector<QuditIndexVector> idx(dim);
  for (std::size_t f = 0; f < dim; ++f) idx[f] = QuditIndexVector::from_flat(f, d, n);
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b) {
      cplx s = 0.0;
      for (std::size_t i = 0; i < dim; ++i) {
        const long long ia = static_cast<long long>(dot_mod(idx[i], idx[a]));
        for (std::size_t j = 0; j < dim; ++j) {
          const long long jb = static_cast<long long>(dot_mod(idx[j], idx[b]));
          s += root_of_unity(d, jb - ia) * dist.q(i, j);
        }
      }
      out.values(a, b) = scale * s;
    }
  return out;
}

namespace detail {

// Entry-wise phase omega^{sign * (a.b) * inv2}; odd d only.
inline ComplexMatrix symplectic_phase(const ComplexMatrix& table, std::size_t d, std::size_t n,
                                      int sign) {
  const long long inv2 = static_cast<long long>(inverse_of_two(d));
  check_table_dim(table.rows(), d, n);
  ComplexMatrix out = table;
  const std::size_t dim = table.rows();
  for (std::size_t a = 0; a < dim; ++a) {
    const auto av = QuditIndexVector::from_flat(a, d, n);
    for (std::size_t b = 0; b < dim; ++b) {
      const auto bv = QuditIndexVector::from_flat(b, d, n);
      const long long e = sign * static_cast<long long>(dot_mod(av, bv)) * inv2;
      out(a, b) *= root_of_unity(d, e);
    }
  }
  return out;
}

}  // namespace detail

/// T(a,b) = omega^{-(a.b) 2^{-1}} conj(tilde(a,b)): expectation values of the
/// phased Weyl-Heisenberg unitaries.
inline WHTable phased_wh_table(const WHTable& t) {
  return WHTable{t.d, t.n, detail::symplectic_phase(conjugate(t.values), t.d, t.n, -1)};
}

/// Inverse of phased_wh_table.
inline WHTable unphased_wh_table(const WHTable& t) {
  return WHTable{t.d, t.n, conjugate(detail::symplectic_phase(t.values, t.d, t.n, +1))};
}

namespace detail {

// Symplectic transform out(p,q) = d^{-n} sum_{r,s} omega^{p.s - q.r} in(r,s).
// Self-inverse: the sign asymmetry between the two index pairings makes the
// composition collapse onto delta functions with no parity flip.
inline ComplexMatrix symplectic_dft(const ComplexMatrix& table, std::size_t d, std::size_t n) {
  check_table_dim(table.rows(), d, n);
  const std::size_t dim = table.rows();
  ComplexMatrix out(dim, dim);
  const double scale = 1.0 / static_cast<double>(dim);
  std::vector<QuditIndexVector> idx(dim);
  for (std::size_t f = 0; f < dim; ++f) idx[f] = QuditIndexVector::from_flat(f, d, n);
  for (std::size_t p = 0; p < dim; ++p)
    for (std::size_t q = 0; q < dim; ++q) {
      cplx s = 0.0;
      for (std::size_t r = 0; r < dim; ++r) {
        const long long qr = static_cast<long long>(dot_mod(idx[q], idx[r]));
        for (std::size_t sidx = 0; sidx < dim; ++sidx) {
          const long long ps = static_cast<long long>(dot_mod(idx[p], idx[sidx]));
          s += root_of_unity(d, ps - qr) * table(r, sidx);
        }
      }
      out(p, q) = scale * s;
    }
  return out;
}

}  // namespace detail

/// Distribution -> Wigner table, for odd d on a Fourier basis pair. The chain
/// is tilde transform, conjugate-and-phase, symplectic transform.
inline WignerDist kd_to_wigner(const KDDist& dist, const BasisPair& bp) {
  const auto [d, n] = detail::require_qft_family(bp);
  if (d % 2 == 0) throw EvenDimension("Wigner table requires odd local dimension");
  const WHTable phased = phased_wh_table(tilde_dft(dist, bp));
  const ComplexMatrix w = detail::symplectic_dft(phased.values, d, n);
  WignerDist out{d, n, std::vector<double>(w.data().size())};
  for (std::size_t i = 0; i < w.data().size(); ++i) out.w[i] = w.data()[i].real();
  return out;
}

/// Wigner table -> distribution on the QFT basis pair of matching (d, n).
inline KDDist wigner_to_kd(const WignerDist& wd) {
  if (wd.d % 2 == 0) throw EvenDimension("Wigner table requires odd local dimension");
  const std::size_t dim = pow_sz(wd.d, wd.n);
  if (wd.w.size() != dim * dim) throw DimensionMismatch("Wigner table entry count is not D^2");
  ComplexMatrix w(dim, dim);
  for (std::size_t i = 0; i < wd.w.size(); ++i) w.data()[i] = wd.w[i];

  // The symplectic transform is an involution, so applying it again inverts
  // it; then undo the phase-and-conjugation and invert the tilde transform:
  // Q(i,j) = d^{-n} sum_{a,b} omega^{i.a - j.b} tilde(a,b).
  const ComplexMatrix phased = detail::symplectic_dft(w, wd.d, wd.n);
  const WHTable tilde = unphased_wh_table(WHTable{wd.d, wd.n, phased});
  ComplexMatrix q(dim, dim);
  const double scale = 1.0 / static_cast<double>(dim);
  std::vector<QuditIndexVector> idx(dim);
  for (std::size_t f = 0; f < dim; ++f) idx[f] = QuditIndexVector::from_flat(f, wd.d, wd.n);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      cplx s = 0.0;
      for (std::size_t a = 0; a < dim; ++a) {
        const long long ia = static_cast<long long>(dot_mod(idx[i], idx[a]));
        for (std::size_t b = 0; b < dim; ++b) {
          const long long jb = static_cast<long long>(dot_mod(idx[j], idx[b]));
          s += root_of_unity(wd.d, ia - jb) * tilde.values(a, b);
        }
      }
      q(i, j) = scale * s;
    }
  return KDDist(std::move(q));
}

/// A^{p,q} = d^{-n} sum_{r,s} omega^{p.s - q.r} omega^{-(r.s) 2^{-1}} Z^r X^s.
/// Hermitian with unit trace; expectation values give the Wigner table.
inline ComplexMatrix phase_point_operator(const QuditIndexVector& p, const QuditIndexVector& q) {
  check_same_space(p, q);
  const std::size_t d = p.d, n = p.n();
  const long long inv2 = static_cast<long long>(inverse_of_two(d));
  const std::size_t dim = pow_sz(d, n);
  check_dim_cap(dim);
  ComplexMatrix acc(dim, dim);
  const double scale = 1.0 / static_cast<double>(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const auto rv = QuditIndexVector::from_flat(r, d, n);
    for (std::size_t s = 0; s < dim; ++s) {
      const auto sv = QuditIndexVector::from_flat(s, d, n);
      const long long phase = static_cast<long long>(dot_mod(p, sv)) -
                              static_cast<long long>(dot_mod(q, rv)) -
                              static_cast<long long>(dot_mod(rv, sv)) * inv2;
      // Z^r X^s column m has its single entry omega^{r.(m+s)} at row m+s.
      for (std::size_t m = 0; m < dim; ++m) {
        const auto mv = QuditIndexVector::from_flat(m, d, n);
        const auto row = add_mod(mv, sv);
        acc(row.flat(), m) +=
            scale * root_of_unity(d, phase + static_cast<long long>(dot_mod(rv, row)));
      }
    }
  }
  return acc;
}

inline ComplexMatrix phase_point_operator(std::size_t p, std::size_t q, std::size_t d,
                                          std::size_t n) {
  return phase_point_operator(QuditIndexVector::from_flat(p, d, n),
                              QuditIndexVector::from_flat(q, d, n));
}

}  // namespace kdq
