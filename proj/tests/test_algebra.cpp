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

#include <catch2/catch_amalgamated.hpp>

#include "kdq/kdq.hpp"
#include "oracles.hpp"

using namespace kdq;

namespace {

ComplexMatrix pauli_x() {
  ComplexMatrix x(2, 2);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  return x;
}

ComplexMatrix random_matrix(std::size_t r, std::size_t c, rng_t& rng) {
  ComplexMatrix m(r, c);
  for (cplx& z : m.data()) z = gaussian_cplx(rng);
  return m;
}

}  // namespace

TEST_CASE("kron identity and permutation action") {
  const ComplexMatrix i2 = ComplexMatrix::identity(2);
  CHECK(max_abs_diff(kron(i2, i2), ComplexMatrix::identity(4)) == 0.0);

  // (X (x) I) |00> = |10>
  const ComplexMatrix xi = kron(pauli_x(), i2);
  std::vector<cplx> e00(4, 0.0);
  e00[0] = 1.0;
  const auto out = mat_vec(xi, e00);
  CHECK(std::abs(out[2] - cplx{1.0, 0.0}) == 0.0);
  CHECK(std::abs(out[0]) + std::abs(out[1]) + std::abs(out[3]) == 0.0);
}

TEST_CASE("kron mixed-product identity on random inputs") {
  rng_t rng = make_rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const ComplexMatrix a = random_matrix(2, 2, rng), b = random_matrix(2, 2, rng);
    const ComplexMatrix c = random_matrix(2, 2, rng), d = random_matrix(2, 2, rng);
    CHECK(max_abs_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)) <= 1e-12);
  }
}

TEST_CASE("qft matrix values and unitarity") {
  const ComplexMatrix h = qft_matrix(2);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(h(0, 0) - cplx{s, 0.0}) <= 1e-15);
  CHECK(std::abs(h(0, 1) - cplx{s, 0.0}) <= 1e-15);
  CHECK(std::abs(h(1, 0) - cplx{s, 0.0}) <= 1e-15);
  CHECK(std::abs(h(1, 1) - cplx{-s, 0.0}) <= 1e-15);

  const ComplexMatrix f3 = qft_matrix(3);
  for (std::size_t j = 0; j < 3; ++j)
    CHECK(std::abs(f3(j, 0) - cplx{1.0 / std::sqrt(3.0), 0.0}) <= 1e-15);

  CHECK(max_abs_diff(dagger(qft_matrix(5)) * qft_matrix(5), ComplexMatrix::identity(5)) <= 1e-12);

  for (std::size_t d = 2; d <= 8; ++d) {
    const ComplexMatrix f = qft_matrix(d);
    CHECK(is_unitary(f, 1e-12));
    CHECK(max_abs_diff(f, transpose(f)) <= 1e-12);
  }
}

TEST_CASE("weyl-heisenberg operators") {
  SECTION("zero exponent gives identity") {
    const auto zero = QuditIndexVector::zero(3, 2);
    CHECK(max_abs_diff(wh_z(zero), ComplexMatrix::identity(9)) == 0.0);
    CHECK(max_abs_diff(wh_x(zero), ComplexMatrix::identity(9)) == 0.0);
  }

  SECTION("cyclic shift wraps") {
    const ComplexMatrix x = wh_x({3, {1}});
    std::vector<cplx> e2(3, 0.0);
    e2[2] = 1.0;
    const auto out = mat_vec(x, e2);
    CHECK(std::abs(out[0] - cplx{1.0, 0.0}) == 0.0);
  }

  SECTION("commutation X^b Z^a = w^{-a.b} Z^a X^b") {
    rng_t rng = make_rng(5);
    std::uniform_int_distribution<std::size_t> digit(0, 2);
    for (int rep = 0; rep < 10; ++rep) {
      const QuditIndexVector a{3, {digit(rng), digit(rng)}};
      const QuditIndexVector b{3, {digit(rng), digit(rng)}};
      const ComplexMatrix lhs = wh_x(b) * wh_z(a);
      const ComplexMatrix rhs =
          root_of_unity(3, -static_cast<long long>(dot_mod(a, b))) * (wh_z(a) * wh_x(b));
      CHECK(max_abs_diff(lhs, rhs) <= 1e-12);
    }
  }

  SECTION("group law, exhaustive for d=3 n=2") {
    std::vector<QuditIndexVector> all;
    for (std::size_t f = 0; f < 9; ++f) all.push_back(QuditIndexVector::from_flat(f, 3, 2));
    for (const auto& b : all)
      for (const auto& bp : all) {
        CHECK(max_abs_diff(wh_x(b) * wh_x(bp), wh_x(add_mod(b, bp))) <= 1e-12);
        CHECK(max_abs_diff(wh_z(b) * wh_z(bp), wh_z(add_mod(b, bp))) <= 1e-12);
      }
  }
}

TEST_CASE("seeded randomness is deterministic and well-formed") {
  const PureState s1 = random_pure_state(4, 42);
  const PureState s2 = random_pure_state(4, 42);
  CHECK(s1.amp == s2.amp);
  double n2 = 0.0;
  for (const cplx& z : s1.amp) n2 += std::norm(z);
  CHECK(std::abs(std::sqrt(n2) - 1.0) <= 1e-12);

  const ComplexMatrix u1 = random_unitary(3, 7), u2 = random_unitary(3, 7);
  CHECK(max_abs_diff(u1, u2) == 0.0);
  // Gram matrix of the columns.
  CHECK(max_abs_diff(dagger(u1) * u1, ComplexMatrix::identity(3)) <= 1e-12);

  const auto k1 = random_kraus_channel(3, 2, 9);
  ComplexMatrix sum(3, 3);
  for (const auto& k : k1) sum = sum + dagger(k) * k;
  CHECK(max_abs_diff(sum, ComplexMatrix::identity(3)) <= 1e-12);
}

TEST_CASE("embedding gates into a register") {
  // Adjacent targets in order match a plain Kronecker product.
  rng_t rng = make_rng(21);
  const ComplexMatrix u = random_unitary(4, rng);
  CHECK(max_abs_diff(embed_unitary(u, {0, 1}, 2, 2), u) <= 1e-15);
  const ComplexMatrix v = random_unitary(2, rng);
  CHECK(max_abs_diff(embed_unitary(v, {0}, 2, 2), kron(v, ComplexMatrix::identity(2))) <= 1e-15);
  CHECK(max_abs_diff(embed_unitary(v, {1}, 2, 2), kron(ComplexMatrix::identity(2), v)) <= 1e-15);

  // Reversed targets swap the tensor roles: check action on a product state.
  const ComplexMatrix cnot = [] {
    ComplexMatrix m(4, 4);
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
    return m;
  }();
  const ComplexMatrix rev = embed_unitary(cnot, {1, 0}, 2, 2);
  // Control on qudit 1: |01> -> |11>.
  std::vector<cplx> e01(4, 0.0);
  e01[1] = 1.0;
  CHECK(std::abs(mat_vec(rev, e01)[3] - cplx{1.0, 0.0}) == 0.0);
  CHECK(is_unitary(rev, 1e-12));
}

TEST_CASE("dimension cap guards constructors") {
  const std::size_t old_cap = dim_cap();
  set_dim_cap(8);
  CHECK_THROWS_AS(qft_matrix(9), DimCapExceeded);
  CHECK_THROWS_AS(kron(ComplexMatrix::identity(16), ComplexMatrix::identity(16)),
                  DimCapExceeded);
  set_dim_cap(old_cap);
}

TEST_CASE("state and density matrix validation") {
  CHECK_THROWS_AS(PureState({cplx{1.0, 0.0}, cplx{1.0, 0.0}}), InvalidArgument);
  CHECK_NOTHROW(PureState::normalized({cplx{1.0, 0.0}, cplx{1.0, 0.0}}));

  ComplexMatrix bad = ComplexMatrix::identity(2);  // trace 2
  CHECK_THROWS_AS(DensityMatrix::from_matrix(bad), InvalidArgument);

  ComplexMatrix nonpsd(2, 2);
  nonpsd(0, 0) = 1.5;
  nonpsd(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix::from_matrix(nonpsd), InvalidArgument);

  const DensityMatrix rho = random_density_matrix(4, 3);
  CHECK(std::abs(trace(rho.mat) - cplx{1.0, 0.0}) <= 1e-12);
  auto [vals, vecs] = hermitian_eigensystem(rho.mat);
  for (double v : vals) CHECK(v >= -1e-12);
  // Eigenvectors reassemble the matrix.
  ComplexMatrix sum(4, 4);
  for (std::size_t k = 0; k < 4; ++k) {
    std::vector<cplx> col(4);
    for (std::size_t r = 0; r < 4; ++r) col[r] = vecs(r, k);
    const PureState v(col, 1e-9);
    sum = sum + cplx{vals[k], 0.0} * outer(v, v);
  }
  CHECK(max_abs_diff(sum, rho.mat) <= 1e-10);
}
