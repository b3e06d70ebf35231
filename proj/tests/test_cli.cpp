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

// End-to-end checks on the installed binary: verbs, exit codes, error
// payloads and byte-level reproducibility.

#include <catch2/catch_amalgamated.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "kdq/io.hpp"
#include "kdq/kdq.hpp"

using namespace kdq;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

CliResult run_cli(const std::string& args) {
  const fs::path out = fs::temp_directory_path() / "kdq_cli_stdout.txt";
  const fs::path err = fs::temp_directory_path() / "kdq_cli_stderr.txt";
  const std::string cmd = std::string(KDQ_CLI_BINARY) + " " + args + " > " + out.string() +
                          " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  fs::remove(out);
  fs::remove(err);
  return r;
}

io::json result_of(const CliResult& r) { return io::json::parse(r.out).at("result"); }

fs::path write_two_qubit_circuit() {
  ComplexMatrix cz = ComplexMatrix::identity(4);
  cz(3, 3) = -1.0;
  const Circuit c{2, 2, {Gate{{0}, qft_matrix(2)}, Gate{{0, 1}, cz}}};
  const fs::path path = fs::temp_directory_path() / "kdq_cli_circuit.json";
  io::save_json(path.string(), io::to_json(c));
  return path;
}

std::string strip_elapsed(std::string payload) {
  const auto pos = payload.find("\"elapsed_seconds\"");
  if (pos == std::string::npos) return payload;
  const auto end = payload.find('\n', pos);
  payload.erase(pos, end - pos);
  return payload;
}

}  // namespace

TEST_CASE("kd build emits the expected distribution") {
  const CliResult r = run_cli("kd build --d 2 --v qft --state a0");
  REQUIRE(r.exit_code == 0);
  const io::json payload = io::json::parse(r.out);
  CHECK(payload.at("config").at("verb") == "kd build");
  const KDDist q = io::kd_from_json(payload.at("result"));
  CHECK(std::abs(q.q(0, 0) - cplx{0.5, 0.0}) <= 1e-12);
  CHECK(std::abs(q.q(0, 1) - cplx{0.5, 0.0}) <= 1e-12);
  CHECK(std::abs(q.q(1, 0)) <= 1e-12);
  CHECK(std::abs(q.q(1, 1)) <= 1e-12);
}

TEST_CASE("artifacts written by one verb feed the next") {
  const fs::path qpath = fs::temp_directory_path() / "kdq_cli_q.json";
  REQUIRE(run_cli("kd build --d 3 --v qft --state random:5 --out " + qpath.string()).exit_code ==
          0);

  // The saved payload reloads to the same value the library computes.
  const io::json payload = io::json::parse(slurp(qpath));
  const KDDist direct =
      build_kd(random_density_matrix(3, 5), BasisPair::qft(3));
  CHECK(io::kd_from_json(payload.at("result")).q.data() == direct.q.data());

  // The emitted payload feeds the next verb directly (--q unwraps it).
  const CliResult marg = run_cli("kd marginals --d 3 --v qft --q " + qpath.string());
  REQUIRE(marg.exit_code == 0);
  const auto pa = result_of(marg).at("probs_a").get<std::vector<double>>();
  double total = 0.0;
  for (double p : pa) total += p;
  CHECK(total == Catch::Approx(1.0).margin(1e-10));
  fs::remove(qpath);
}

TEST_CASE("kd evolve applies a unitary channel") {
  const CliResult r = run_cli("kd evolve --d 2 --v qft --state a0 --u x");
  REQUIRE(r.exit_code == 0);
  const KDDist q = io::kd_from_json(result_of(r));
  // X maps a_0 to a_1: the distribution moves to row 1.
  CHECK(std::abs(q.q(1, 0) - cplx{0.5, 0.0}) <= 1e-12);
  CHECK(std::abs(q.q(0, 0)) <= 1e-12);
}

TEST_CASE("superop classify flags the fourier counterexample") {
  const CliResult r = run_cli("superop classify --d 3 --v qft --u qft");
  REQUIRE(r.exit_code == 0);
  const io::json res = result_of(r);
  CHECK(res.at("stochastic") == false);
  CHECK(res.at("gen_perm") == false);
  CHECK(res.at("positivity_preserving_on_fixture") == true);
  CHECK(res.at("induced_l1").get<double>() > 1.1);

  const CliResult shift = run_cli("superop classify --d 3 --v qft --u x");
  REQUIRE(shift.exit_code == 0);
  CHECK(result_of(shift).at("stochastic") == true);
  CHECK(result_of(shift).at("gen_perm") == true);
  CHECK(result_of(shift).contains("certificate"));
}

TEST_CASE("simulate estimate follows the sample budget formula") {
  const fs::path circuit = write_two_qubit_circuit();
  const CliResult r = run_cli("simulate estimate --circuit " + circuit.string() +
                              " --v hadamard --state a0 --povm a0,id --epsilon 0.05 --delta "
                              "0.05 --seed 7");
  REQUIRE(r.exit_code == 0);
  const io::json res = result_of(r);
  const double n_t = res.at("n_t").get<double>();
  CHECK(res.at("samples").get<std::size_t>() ==
        std::size_t(std::ceil(2.0 / 0.0025 * n_t * n_t * std::log(2.0 / 0.05))));
  CHECK(std::abs(res.at("estimate").get<double>() - res.at("exact").get<double>()) <= 0.05);

  // Reproducibility: identical config and seed give identical bytes
  // (elapsed time aside).
  const CliResult again = run_cli("simulate estimate --circuit " + circuit.string() +
                                  " --v hadamard --state a0 --povm a0,id --epsilon 0.05 "
                                  "--delta 0.05 --seed 7");
  CHECK(strip_elapsed(r.out) == strip_elapsed(again.out));
  fs::remove(circuit);
}

TEST_CASE("simulate budget writes plot-ready csv") {
  const fs::path circuit = write_two_qubit_circuit();
  const fs::path csv = fs::temp_directory_path() / "kdq_cli_budget.csv";
  const CliResult r = run_cli("simulate budget --circuit " + circuit.string() +
                              " --v hadamard --state a0 --povm a0,id --csv " + csv.string());
  REQUIRE(r.exit_code == 0);
  CHECK(result_of(r).at("n_t").get<double>() == Catch::Approx(4.0).margin(1e-9));
  const std::string table = slurp(csv);
  CHECK(table.rfind("gate,induced_l1\n", 0) == 0);
  CHECK(std::count(table.begin(), table.end(), '\n') == 3);  // header + 2 gates
  fs::remove(circuit);
  fs::remove(csv);
}

TEST_CASE("spectral and verify verbs") {
  const CliResult self = run_cli("spectral selfsim --d 3 --v qft --state random:11");
  REQUIRE(self.exit_code == 0);
  CHECK(result_of(self).at("residual").get<double>() <= 1e-9);

  const CliResult herm = run_cli("verify hermiticity --d 3 --v qft --state random:11");
  REQUIRE(herm.exit_code == 0);
  CHECK(result_of(herm).at("residual").get<double>() <= 1e-9);

  const CliResult bounds = run_cli("verify bounds --d 2 --v qft --state a0");
  REQUIRE(bounds.exit_code == 0);
  CHECK(result_of(bounds).at("upper_bound").get<double>() == Catch::Approx(0.5).margin(1e-12));
  CHECK(result_of(bounds).at("mub_uniform") == true);

  // Wigner there and back through the emitted payload file.
  const fs::path wpath = fs::temp_directory_path() / "kdq_cli_w.json";
  const CliResult wig =
      run_cli("spectral wigner --d 3 --v qft --state random:13 --out " + wpath.string());
  REQUIRE(wig.exit_code == 0);
  const CliResult back = run_cli("spectral wigner --d 3 --v qft --inverse --w " + wpath.string());
  REQUIRE(back.exit_code == 0);
  const KDDist q = io::kd_from_json(result_of(back));
  const KDDist direct = build_kd(random_density_matrix(3, 13), BasisPair::qft(3));
  CHECK(max_abs_diff(q.q, direct.q) <= 1e-10);
  fs::remove(wpath);
}

TEST_CASE("cycle run produces a shot report or a complex estimate") {
  const CliResult single = run_cli("cycle run --d 2 --v qft --i 0 --j 0 --s 0 --shots 20000 "
                                   "--seed 5");
  REQUIRE(single.exit_code == 0);
  const io::json rep = result_of(single);
  CHECK(rep.at("zeros").get<std::size_t>() + rep.at("ones").get<std::size_t>() == 20000);
  CHECK(std::abs(rep.at("estimate").get<double>() - 0.5) <=
        3.0 * rep.at("stderr").get<double>() + 1e-9);

  const CliResult both = run_cli("cycle run --d 2 --v qft --i 0 --j 0 --shots 20000 --seed 5");
  REQUIRE(both.exit_code == 0);
  CHECK(result_of(both).contains("estimate"));
  CHECK(result_of(both).at("estimate").size() == 2);

  const CliResult element = run_cli(
      "cycle run --d 2 --v qft --u x --i 1 --j 0 --k 0 --l 0 --shots 20000 --seed 6");
  REQUIRE(element.exit_code == 0);
  // (E_X)_{(1,0),(0,0)} = 1 for the swap (x) id permutation.
  CHECK(std::abs(result_of(element).at("estimate").at(0).get<double>() - 1.0) <= 0.05);
}

TEST_CASE("validation failures exit 2 with machine-readable errors") {
  const CliResult bad_file = run_cli("kd build --d 2 --v file:/nonexistent/v.json --state a0");
  CHECK(bad_file.exit_code == 2);
  const io::json err = io::json::parse(bad_file.err);
  CHECK(err.at("error") == "IoError");

  const CliResult bad_spec = run_cli("kd build --d 2 --v qft --state a7");
  CHECK(bad_spec.exit_code == 2);
  CHECK(io::json::parse(bad_spec.err).at("error") == "InvalidArgument");

  const CliResult unknown = run_cli("frobnicate");
  CHECK(unknown.exit_code == 2);
  CHECK(io::json::parse(unknown.err).at("error") == "UsageError");
}

TEST_CASE("budget overruns exit 3") {
  const fs::path circuit = write_two_qubit_circuit();
  const CliResult r = run_cli("simulate estimate --circuit " + circuit.string() +
                              " --v hadamard --state a0 --povm a0,id --epsilon 0.001 "
                              "--delta 0.001 --seed 1 --sample-cap 1000");
  CHECK(r.exit_code == 3);
  CHECK(io::json::parse(r.err).at("error") == "BudgetExceeded");
  fs::remove(circuit);
}

TEST_CASE("dimension cap environment variable is honored") {
  const CliResult r = run_cli("kd build --d 64 --n 2 --v qft --state a0");
  CHECK(r.exit_code == 3);  // 64^2 = 4096 exceeds the default cap of 128
  CHECK(io::json::parse(r.err).at("error") == "DimCapExceeded");
}
