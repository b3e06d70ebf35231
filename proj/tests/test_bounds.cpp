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

PureState b_state(const BasisPair& bp, std::size_t j) {
  std::vector<cplx> col(bp.dim());
  for (std::size_t r = 0; r < bp.dim(); ++r) col[r] = bp.v(r, j);
  return PureState(std::move(col), 1e-9);
}

/// Products over {a_0, a_1, b_0, b_1} per qubit: KD positive states of the
/// n-qubit Hadamard pair.
std::vector<PureState> hadamard_positive_states(std::size_t n) {
  const BasisPair h1 = BasisPair::hadamard();
  const std::vector<PureState> single = {PureState::basis(2, 0), PureState::basis(2, 1),
                                         b_state(h1, 0), b_state(h1, 1)};
  std::vector<PureState> out;
  std::vector<std::size_t> pick(n, 0);
  while (true) {
    std::vector<cplx> amp{cplx{1.0, 0.0}};
    for (std::size_t q = 0; q < n; ++q) {
      std::vector<cplx> next(amp.size() * 2);
      for (std::size_t i = 0; i < amp.size(); ++i)
        for (std::size_t b = 0; b < 2; ++b) next[i * 2 + b] = amp[i] * single[pick[q]].amp[b];
      amp = std::move(next);
    }
    out.push_back(PureState(std::move(amp), 1e-9));
    std::size_t q = n;
    while (q-- > 0) {
      if (++pick[q] < 4) break;
      pick[q] = 0;
      if (q == 0) return out;
    }
  }
}

}  // namespace

TEST_CASE("saturated bound for a basis state on the Hadamard pair") {
  const BoundReport rep = check_bounds(PureState::basis(2, 0), BasisPair::hadamard());
  CHECK(rep.big_m == Catch::Approx(1.0 / std::sqrt(2.0)).margin(1e-12));
  CHECK(rep.n_a * rep.n_b == 2);
  CHECK(rep.upper_bound == Catch::Approx(0.5).margin(1e-12));
  CHECK(rep.max_abs_q == Catch::Approx(0.5).margin(1e-12));  // saturated
  CHECK(rep.upper_satisfied);
  CHECK(rep.kd_positive);
  CHECK(rep.lower_bound == Catch::Approx(std::pow(2.0, -1.5)).margin(1e-12));
  CHECK(rep.lower_satisfied);
}

TEST_CASE("upper bound holds for random states") {
  rng_t rng = make_rng(400);
  for (std::size_t d = 2; d <= 5; ++d) {
    const BasisPair mub = BasisPair::qft(d);
    const BasisPair haar = BasisPair::from_unitary(random_unitary(d, rng));
    for (int rep = 0; rep < 50; ++rep) {
      const PureState psi = random_pure_state(d, rng);
      for (const BasisPair* bp : {&mub, &haar}) {
        const BoundReport r = check_bounds(psi, *bp);
        CHECK(r.upper_satisfied);
        CHECK(r.max_abs_q <= r.upper_bound + 1e-10);
      }
    }
  }
}

TEST_CASE("lower bound on enumerated positive states of Hadamard pairs") {
  for (std::size_t n : {1ul, 2ul, 3ul}) {
    const BasisPair bp = BasisPair::hadamard(n);
    for (const PureState& psi : hadamard_positive_states(n)) {
      const BoundReport r = check_bounds(psi, bp);
      CHECK(r.kd_positive);
      CHECK(r.lower_bound > 0.0);
      CHECK(r.lower_satisfied);
    }
  }
}

TEST_CASE("sparse pair reports a vacuous lower bound") {
  const BasisPair sparse = BasisPair::from_unitary(ComplexMatrix::identity(2));
  const BoundReport r = check_bounds(PureState::basis(2, 0), sparse);
  CHECK(r.m == 0.0);
  CHECK(r.lower_bound == 0.0);
  CHECK(r.lower_satisfied);
  CHECK(r.upper_satisfied);
}

TEST_CASE("uniformity of positive states on unbiased pairs") {
  for (std::size_t d : {2ul, 3ul, 5ul}) {
    const BasisPair bp = BasisPair::qft(d);
    for (std::size_t k = 0; k < d; ++k) {
      CHECK(check_mub_uniformity(PureState::basis(d, k), bp));
      CHECK(check_mub_uniformity(b_state(bp, k), bp));
    }
  }

  // Entries of positive states are exactly 1/D on the support.
  const BasisPair h2 = BasisPair::hadamard(2);
  for (const PureState& psi : hadamard_positive_states(2)) {
    CHECK(check_mub_uniformity(psi, h2));
    const KDDist q = build_kd(psi, h2);
    for (const cplx& z : q.q.data()) {
      const double a = std::abs(z);
      CHECK((a <= 1e-9 || std::abs(a - 0.25) <= 1e-9));
    }
  }

  // A non-positive state fails the check.
  const PureState plus_i = PureState::normalized({cplx{1.0, 0.0}, cplx{0.0, 1.0}});
  CHECK_FALSE(check_mub_uniformity(plus_i, BasisPair::hadamard()));

  // Not unbiased -> typed error.
  CHECK_THROWS_AS(
      check_mub_uniformity(PureState::basis(2, 0), BasisPair::from_unitary(random_unitary(2, 8))),
      NotMUB);
}

TEST_CASE("distribution-level inner product") {
  const BasisPair bp = BasisPair::hadamard();
  const KDDist qa0 = build_kd(PureState::basis(2, 0), bp);
  const KDDist qa1 = build_kd(PureState::basis(2, 1), bp);
  const KDDist qb0 = build_kd(b_state(bp, 0), bp);

  CHECK(kd_inner_product(qa0, qa0, bp) == Catch::Approx(1.0).margin(1e-10));
  CHECK(kd_inner_product(qa0, qa1, bp) == Catch::Approx(0.0).margin(1e-10));
  CHECK(kd_inner_product(qa0, qb0, bp) == Catch::Approx(0.5).margin(1e-10));

  // Same value from the amplitudes.
  rng_t rng = make_rng(411);
  const BasisPair bp3 = BasisPair::qft(3);
  const PureState psi = random_pure_state(3, rng), phi = random_pure_state(3, rng);
  const double via_q = kd_inner_product(build_kd(psi, bp3), build_kd(phi, bp3), bp3);
  CHECK(via_q == Catch::Approx(std::norm(inner_product(psi, phi))).margin(1e-10));
}

TEST_CASE("overlaps of positive states on unbiased pairs are sqrt(k/D)") {
  const BasisPair h2 = BasisPair::hadamard(2);
  const auto states = hadamard_positive_states(2);
  for (const PureState& psi : states)
    for (const PureState& phi : states) {
      const KDDist q1 = build_kd(psi, h2), q2 = build_kd(phi, h2);
      std::size_t overlap = 0;
      for (std::size_t idx = 0; idx < q1.q.data().size(); ++idx)
        if (std::abs(q1.q.data()[idx]) > 1e-9 && std::abs(q2.q.data()[idx]) > 1e-9) ++overlap;
      const double expected = std::sqrt(double(overlap) / 4.0);
      CHECK(std::abs(inner_product(psi, phi)) == Catch::Approx(expected).margin(1e-9));
    }
}
