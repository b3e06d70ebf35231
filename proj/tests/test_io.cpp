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
#include <filesystem>

#include "kdq/io.hpp"
#include "kdq/kdq.hpp"

using namespace kdq;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("kdq_io_test_" + name);
}

}  // namespace

TEST_CASE("matrices round trip bit-identically through JSON text") {
  rng_t rng = make_rng(801);
  const ComplexMatrix m = random_unitary(4, rng);
  const auto j = io::json::parse(io::to_json(m).dump());
  const ComplexMatrix back = io::matrix_from_json(j);
  REQUIRE(back.rows() == 4);
  for (std::size_t idx = 0; idx < m.data().size(); ++idx)
    CHECK(back.data()[idx] == m.data()[idx]);  // exact, not approximate
}

TEST_CASE("distributions, bases, superoperators and circuits round trip") {
  const BasisPair bp = BasisPair::qft(3);
  const KDDist q = build_kd(random_density_matrix(3, 802), bp);
  const KDDist q2 = io::kd_from_json(io::json::parse(io::to_json(q).dump()));
  CHECK(q2.q.data() == q.q.data());
  CHECK(io::normalization_residual(q2) <= 1e-10);

  const BasisPair h2 = BasisPair::hadamard(2);
  const BasisPair h2_back = io::basis_from_json(io::json::parse(io::to_json(h2).dump()));
  REQUIRE(h2_back.factors.has_value());
  CHECK(h2_back.qudit_count() == 2);
  CHECK(h2_back.v.data() == h2.v.data());

  const KDSuperop e = superop_from_unitary(qft_matrix(3), bp);
  const KDSuperop e2 = io::superop_from_json(io::json::parse(io::to_json(e).dump()));
  CHECK(e2.dim == 3);
  CHECK(e2.m.data() == e.m.data());

  Circuit c{2, 2, {Gate{{0}, qft_matrix(2)}, Gate{{0, 1}, random_unitary(4, 803)}}};
  const Circuit c2 = io::circuit_from_json(io::json::parse(io::to_json(c).dump()));
  REQUIRE(c2.gates.size() == 2);
  CHECK(c2.gates[1].targets == c.gates[1].targets);
  CHECK(c2.gates[1].u.data() == c.gates[1].u.data());

  const WignerDist w = kd_to_wigner(q, bp);
  const WignerDist w2 = io::wigner_from_json(io::json::parse(io::to_json(w).dump()));
  CHECK(w2.w == w.w);
}

TEST_CASE("malformed payloads raise typed io errors") {
  CHECK_THROWS_AS(io::matrix_from_json(io::json{{"rows", 2}, {"cols", 2}}), IoError);
  CHECK_THROWS_AS(io::matrix_from_json(io::json{
                      {"rows", 2}, {"cols", 2}, {"entries", io::json::array({{1.0, 0.0}})}}),
                  IoError);
  CHECK_THROWS_AS(io::load_json("/nonexistent/kdq.json"), IoError);

  // A distribution that does not sum to 1 loads with a warning residual.
  io::json bad{{"dim", 2},
               {"q", io::json::array({{0.5, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}})}};
  const KDDist q = io::kd_from_json(bad);
  CHECK(io::normalization_residual(q) > 0.4);
}

TEST_CASE("file save and load") {
  const fs::path path = temp_file("matrix.json");
  const ComplexMatrix m = qft_matrix(5);
  io::save_json(path.string(), io::to_json(m));
  const ComplexMatrix back = io::matrix_from_json(io::load_json(path.string()));
  CHECK(back.data() == m.data());
  fs::remove(path);
}

TEST_CASE("basis specs") {
  const BasisPair qft = io::resolve_basis_spec("qft", 3, 2);
  CHECK(qft.dim() == 9);
  CHECK(qft.qudit_count() == 2);

  const BasisPair had = io::resolve_basis_spec("hadamard", 2, 2);
  CHECK(max_abs_diff(had.v, BasisPair::hadamard(2).v) == 0.0);
  CHECK_THROWS_AS(io::resolve_basis_spec("hadamard", 3, 1), InvalidArgument);

  const BasisPair r1 = io::resolve_basis_spec("random:9", 3, 2);
  const BasisPair r2 = io::resolve_basis_spec("random:9", 3, 2);
  CHECK(max_abs_diff(r1.v, r2.v) == 0.0);
  CHECK(r1.qudit_count() == 2);

  const fs::path path = temp_file("basis.json");
  io::save_json(path.string(), io::to_json(had));
  const BasisPair loaded = io::resolve_basis_spec("file:" + path.string(), 2, 2);
  CHECK(loaded.v.data() == had.v.data());
  fs::remove(path);

  CHECK_THROWS_AS(io::resolve_basis_spec("nonsense", 2, 1), InvalidArgument);
}

TEST_CASE("state and operator specs") {
  const BasisPair bp = BasisPair::qft(3);

  const PureState a1 = io::resolve_pure_spec("a1", bp);
  CHECK(std::abs(a1.amp[1] - cplx{1.0, 0.0}) == 0.0);
  const PureState b2 = io::resolve_pure_spec("b2", bp);
  CHECK(std::abs(inner_product(b2, b2) - cplx{1.0, 0.0}) <= 1e-12);

  const DensityMatrix mixed = io::resolve_density_spec("mixed", bp);
  CHECK(std::abs(mixed.mat(0, 0) - cplx{1.0 / 3.0, 0.0}) <= 1e-15);
  const DensityMatrix rnd = io::resolve_density_spec("random:4", bp);
  CHECK(std::abs(trace(rnd.mat) - cplx{1.0, 0.0}) <= 1e-12);

  const ComplexMatrix u = io::resolve_unitary_spec("qft", 3, 1);
  CHECK(max_abs_diff(u, qft_matrix(3)) == 0.0);
  const ComplexMatrix x = io::resolve_unitary_spec("x", 3, 2);
  CHECK(max_abs_diff(x, wh_x({3, {1, 1}})) == 0.0);
  CHECK(max_abs_diff(io::resolve_unitary_spec("identity", 2, 2), ComplexMatrix::identity(4)) ==
        0.0);

  const ComplexMatrix proj = io::resolve_povm_spec("a2", bp);
  CHECK(std::abs(proj(2, 2) - cplx{1.0, 0.0}) == 0.0);
  CHECK(max_abs_diff(io::resolve_povm_spec("id", bp), ComplexMatrix::identity(3)) == 0.0);

  CHECK_THROWS_AS(io::resolve_pure_spec("a9", bp), InvalidArgument);
  CHECK_THROWS_AS(io::resolve_pure_spec("mixed", bp), InvalidArgument);
}

TEST_CASE("csv emitters") {
  EstimateReport rep;
  rep.estimate = 0.5;
  rep.n_t = 2.0;
  rep.samples_used = 100;
  rep.elapsed_seconds = 0.25;
  const std::string csv = io::estimate_csv(rep, "0.5");
  CHECK(csv.rfind("estimate,exact,n_t,samples,seconds\n", 0) == 0);
  CHECK(csv.find("0.5,0.5,2,100,0.25") != std::string::npos);

  NegativityBudget b;
  b.gate_norms = {1.0, 3.0};
  const std::string bcsv = io::budget_csv(b);
  CHECK(bcsv == "gate,induced_l1\n0,1\n1,3\n");

  CHECK(io::marginals_csv({1.0, 0.0}, {0.5, 0.5}) == "index,prob_a,prob_b\n0,1,0.5\n1,0,0.5\n");
}

TEST_CASE("list splitting") {
  CHECK(io::split_list("a0") == std::vector<std::string>{"a0"});
  CHECK(io::split_list("a0,b1,mixed") == std::vector<std::string>{"a0", "b1", "mixed"});
}
