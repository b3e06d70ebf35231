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

// Seeded generators for test inputs. Determinism given the seed is the only
// distributional property callers rely on.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "kdq/matrix.hpp"

namespace kdq {

using rng_t = std::mt19937_64;

/// Independent stream for (seed, lane) pairs, used by the parallel samplers.
inline rng_t make_rng(std::uint64_t seed, std::uint64_t lane = 0) {
  std::seed_seq seq{static_cast<std::uint64_t>(0x6b64715f766264ULL), seed, lane};
  return rng_t(seq);
}

inline cplx gaussian_cplx(rng_t& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const double re = g(rng);
  const double im = g(rng);
  return {re, im};
}

inline PureState random_pure_state(std::size_t dim, rng_t& rng) {
  std::vector<cplx> a(dim);
  for (cplx& z : a) z = gaussian_cplx(rng);
  return PureState::normalized(std::move(a));
}

inline PureState random_pure_state(std::size_t dim, std::uint64_t seed) {
  rng_t rng = make_rng(seed);
  return random_pure_state(dim, rng);
}

namespace detail {

// Modified Gram-Schmidt with one re-orthogonalization pass; adequate for the
// dimensions in play (columns stay orthonormal to ~1e-14).
inline void orthonormalize_columns(ComplexMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  for (std::size_t j = 0; j < cols; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        cplx proj = 0.0;
        for (std::size_t r = 0; r < rows; ++r) proj += std::conj(m(r, k)) * m(r, j);
        for (std::size_t r = 0; r < rows; ++r) m(r, j) -= proj * m(r, k);
      }
    }
    double n2 = 0.0;
    for (std::size_t r = 0; r < rows; ++r) n2 += std::norm(m(r, j));
    if (n2 <= 1e-24) throw InvalidArgument("rank-deficient matrix in orthonormalization");
    const double inv = 1.0 / std::sqrt(n2);
    for (std::size_t r = 0; r < rows; ++r) m(r, j) *= inv;
  }
}

}  // namespace detail

/// Haar-like unitary: a complex Gaussian matrix with orthonormalized columns.
inline ComplexMatrix random_unitary(std::size_t dim, rng_t& rng) {
  check_dim_cap(dim);
  ComplexMatrix m(dim, dim);
  for (cplx& z : m.data()) z = gaussian_cplx(rng);
  detail::orthonormalize_columns(m);
  return m;
}

inline ComplexMatrix random_unitary(std::size_t dim, std::uint64_t seed) {
  rng_t rng = make_rng(seed);
  return random_unitary(dim, rng);
}

/// Full-rank mixed state G G^dag / Tr(G G^dag).
inline DensityMatrix random_density_matrix(std::size_t dim, rng_t& rng) {
  ComplexMatrix g(dim, dim);
  for (cplx& z : g.data()) z = gaussian_cplx(rng);
  ComplexMatrix m = g * dagger(g);
  const double t = trace(m).real();
  m = cplx{1.0 / t, 0.0} * m;
  // Symmetrize away rounding in the product before validation.
  ComplexMatrix h = cplx{0.5, 0.0} * (m + dagger(m));
  return DensityMatrix::from_matrix(std::move(h));
}

inline DensityMatrix random_density_matrix(std::size_t dim, std::uint64_t seed) {
  rng_t rng = make_rng(seed);
  return random_density_matrix(dim, rng);
}

/// Random CPTP channel with `n_kraus` Kraus operators, built by slicing a
/// Haar-like isometry so that sum K^dag K = 1 holds to machine precision.
inline std::vector<ComplexMatrix> random_kraus_channel(std::size_t dim, std::size_t n_kraus,
                                                       rng_t& rng) {
  ComplexMatrix stacked(dim * n_kraus, dim);
  for (cplx& z : stacked.data()) z = gaussian_cplx(rng);
  detail::orthonormalize_columns(stacked);
  std::vector<ComplexMatrix> kraus(n_kraus, ComplexMatrix(dim, dim));
  for (std::size_t mu = 0; mu < n_kraus; ++mu)
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) kraus[mu](r, c) = stacked(mu * dim + r, c);
  return kraus;
}

inline std::vector<ComplexMatrix> random_kraus_channel(std::size_t dim, std::size_t n_kraus,
                                                       std::uint64_t seed) {
  rng_t rng = make_rng(seed);
  return random_kraus_channel(dim, n_kraus, rng);
}

}  // namespace kdq
