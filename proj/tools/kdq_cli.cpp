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

// Command-line front door. Every verb resolves its flags into a config
// object, delegates to the library, and emits {"config": ..., "result": ...}
// as JSON (stdout, or --out). Validation failures exit 2 with an error JSON
// on stderr; budget and cap overruns exit 3. Identical config and seed give
// byte-identical payloads apart from the elapsed_seconds field.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "kdq/io.hpp"
#include "kdq/kdq.hpp"

namespace {

using kdq::io::json;

struct CommonOpts {
  std::size_t d = 2;
  std::size_t n = 1;
  std::string basis = "qft";
  std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_basis = true) {
  cmd->add_option("--d", o.d, "Local (per-qudit) dimension")->capture_default_str();
  cmd->add_option("--n", o.n, "Number of qudits")->capture_default_str();
  if (with_basis)
    cmd->add_option("--v", o.basis,
                    "Transition-matrix spec: qft | hadamard | random:<seed> | file:<path>")
        ->capture_default_str();
  cmd->add_option("--out", o.out, "Write the JSON payload to this path instead of stdout");
}

void emit(const CommonOpts& o, json config, json result) {
  json payload{{"config", std::move(config)}, {"result", std::move(result)}};
  if (o.out.empty())
    std::cout << payload.dump(2) << "\n";
  else
    kdq::io::save_json(o.out, payload);
}

kdq::KDDist load_or_build_dist(const std::string& q_file, const std::string& state,
                               const kdq::BasisPair& bp) {
  if (!q_file.empty()) {
    const kdq::KDDist q = kdq::io::kd_from_json(kdq::io::load_artifact(q_file));
    if (q.dim() != bp.dim()) throw kdq::DimensionMismatch("distribution file dimension mismatch");
    if (kdq::io::normalization_residual(q) > 1e-10)
      std::cerr << "warning: loaded distribution sums to 1 only within "
                << kdq::io::normalization_residual(q) << "\n";
    return q;
  }
  return kdq::build_kd(kdq::io::resolve_density_spec(state, bp), bp);
}

// simulate verbs share the instance-building logic.
struct SimulateOpts {
  std::string circuit_path;
  std::string basis = "qft";
  std::string state = "a0";
  std::string povm = "a0";
  bool dense = false;
  std::string out;
  std::string csv;
};

kdq::SimInstance build_sim_instance(const SimulateOpts& o, kdq::Circuit& circuit,
                                    kdq::BasisPair& bp) {
  circuit = kdq::io::circuit_from_json(kdq::io::load_artifact(o.circuit_path));
  bp = kdq::io::resolve_basis_spec(o.basis, circuit.d, circuit.n);
  if (o.dense) {
    const kdq::DensityMatrix rho = kdq::io::resolve_density_spec(o.state, bp);
    const kdq::ComplexMatrix povm = kdq::io::resolve_povm_spec(o.povm, bp);
    return kdq::build_dense_instance(circuit, bp, rho, povm);
  }
  auto expand = [&](const std::string& csv_list) {
    std::vector<std::string> parts = kdq::io::split_list(csv_list);
    if (parts.size() == 1 && circuit.n > 1) parts.assign(circuit.n, parts[0]);
    if (parts.size() != circuit.n)
      throw kdq::InvalidArgument("need one spec per qudit (or a single spec for all)");
    return parts;
  };
  std::vector<kdq::DensityMatrix> rho_factors;
  std::vector<kdq::ComplexMatrix> povm_factors;
  for (std::size_t q = 0; q < circuit.n; ++q) {
    const kdq::BasisPair bq = kdq::BasisPair::from_unitary(bp.factor(q), 1e-10);
    rho_factors.push_back(kdq::io::resolve_density_spec(expand(o.state)[q], bq));
    povm_factors.push_back(kdq::io::resolve_povm_spec(expand(o.povm)[q], bq));
  }
  return kdq::build_instance(circuit, bp, rho_factors, povm_factors);
}

int exit_code_for(const kdq::Error& e) {
  switch (e.code()) {
    case kdq::errc::budget_exceeded:
    case kdq::errc::path_space_too_large:
    case kdq::errc::dim_cap_exceeded:
      return 3;
    default:
      return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* cap = std::getenv("KDQ_DIM_CAP")) {
    try {
      kdq::set_dim_cap(std::stoull(cap));
    } catch (const std::exception&) {
      std::cerr << json{{"error", "UsageError"}, {"message", "bad KDQ_DIM_CAP value"}}.dump()
                << "\n";
      return 2;
    }
  }

  CLI::App app{"Kirkwood-Dirac quasiprobability toolkit"};
  app.require_subcommand(1);
  std::size_t dim_cap_flag = 0;
  app.add_option("--dim-cap", dim_cap_flag,
                 "Override the global dimension cap (also: KDQ_DIM_CAP)");

  // Deferred actions; CLI11 runs callbacks during parse, so each verb stashes
  // a closure executed after parsing succeeds.
  std::function<void()> action;

  // ---- kd ----
  auto* kd = app.add_subcommand("kd", "Build and inspect distributions");
  kd->require_subcommand(1);

  {
    auto* cmd = kd->add_subcommand("build", "Construct the distribution of a state");
    auto opts = std::make_shared<CommonOpts>();
    auto state = std::make_shared<std::string>("a0");
    add_common(cmd, *opts);
    cmd->add_option("--state", *state, "State spec: a<i> | b<j> | mixed | random:<seed> | file:<path>")
        ->capture_default_str();
    cmd->callback([opts, state, &action] {
      action = [opts, state] {
        const kdq::BasisPair bp = kdq::io::resolve_basis_spec(opts->basis, opts->d, opts->n);
        const kdq::KDDist q = kdq::build_kd(kdq::io::resolve_density_spec(*state, bp), bp);
        emit(*opts,
             json{{"verb", "kd build"}, {"d", opts->d}, {"n", opts->n}, {"v", opts->basis},
                  {"state", *state}},
             kdq::io::to_json(q));
      };
    });
  }

  {
    auto* cmd = kd->add_subcommand("evolve", "Apply a channel to a distribution");
    auto opts = std::make_shared<CommonOpts>();
    auto state = std::make_shared<std::string>("a0");
    auto q_file = std::make_shared<std::string>();
    auto u_spec = std::make_shared<std::string>();
    auto kraus_file = std::make_shared<std::string>();
    auto zero_tol = std::make_shared<double>(1e-10);
    add_common(cmd, *opts);
    cmd->add_option("--state", *state, "State spec for the input distribution")
        ->capture_default_str();
    cmd->add_option("--zero-tol", *zero_tol, "Overlap threshold for informational completeness")
        ->capture_default_str();
    auto channel_tol = std::make_shared<double>(1e-10);
    cmd->add_option("--channel-tol", *channel_tol, "Tolerance on sum K^dag K = 1 for Kraus input")
        ->capture_default_str();
    cmd->add_option("--q", *q_file, "Load the input distribution from a JSON file instead");
    cmd->add_option("--u", *u_spec, "Unitary spec: qft | identity | x | z | random:<seed> | file:<path>");
    cmd->add_option("--kraus", *kraus_file, "JSON file with {\"kraus\": [matrix, ...]}");
    cmd->callback([opts, state, q_file, u_spec, kraus_file, zero_tol, channel_tol, &action] {
      action = [opts, state, q_file, u_spec, kraus_file, zero_tol, channel_tol] {
        if (u_spec->empty() == kraus_file->empty())
          throw kdq::InvalidArgument("pass exactly one of --u and --kraus");
        const kdq::BasisPair bp = kdq::io::resolve_basis_spec(opts->basis, opts->d, opts->n);
        const kdq::KDDist q = load_or_build_dist(*q_file, *state, bp);
        kdq::KDSuperop e;
        if (!u_spec->empty()) {
          e = kdq::superop_from_unitary(kdq::io::resolve_unitary_spec(*u_spec, opts->d, opts->n),
                                        bp, 1e-10, *zero_tol);
        } else {
          std::vector<kdq::ComplexMatrix> kraus;
          for (const auto& k : kdq::io::load_json(*kraus_file).at("kraus"))
            kraus.push_back(kdq::io::matrix_from_json(k));
          e = kdq::superop_from_kraus(kraus, bp, *channel_tol, *zero_tol);
        }
        emit(*opts,
             json{{"verb", "kd evolve"}, {"d", opts->d}, {"n", opts->n}, {"v", opts->basis},
                  {"state", *state}, {"q", *q_file}, {"u", *u_spec}, {"kraus", *kraus_file},
                  {"zero_tol", *zero_tol}, {"channel_tol", *channel_tol}},
             kdq::io::to_json(kdq::apply(e, q)));
      };
    });
  }

  {
    auto* cmd = kd->add_subcommand("marginals", "Outcome probabilities in both bases");
    auto opts = std::make_shared<CommonOpts>();
    auto state = std::make_shared<std::string>("a0");
    auto q_file = std::make_shared<std::string>();
    auto csv = std::make_shared<std::string>();
    add_common(cmd, *opts);
    cmd->add_option("--state", *state, "State spec")->capture_default_str();
    cmd->add_option("--q", *q_file, "Load the distribution from a JSON file instead");
    cmd->add_option("--csv", *csv, "Also write a plot-ready CSV table to this path");
    auto pos_tol = std::make_shared<double>(1e-10);
    cmd->add_option("--pos-tol", *pos_tol, "Tolerance for the KD-positivity verdict")
        ->capture_default_str();
    cmd->callback([opts, state, q_file, csv, pos_tol, &action] {
      action = [opts, state, q_file, csv, pos_tol] {
        const kdq::BasisPair bp = kdq::io::resolve_basis_spec(opts->basis, opts->d, opts->n);
        const kdq::KDDist q = load_or_build_dist(*q_file, *state, bp);
        const auto [pa, pb] = kdq::marginals(q);
        if (!csv->empty()) kdq::io::save_text(*csv, kdq::io::marginals_csv(pa, pb));
        emit(*opts,
             json{{"verb", "kd marginals"}, {"d", opts->d}, {"n", opts->n}, {"v", opts->basis},
                  {"state", *state}, {"q", *q_file}, {"pos_tol", *pos_tol}},
             json{{"probs_a", pa}, {"probs_b", pb},
                  {"nonpositivity", kdq::total_nonpositivity(q)},
                  {"kd_positive", kdq::is_kd_positive(q, *pos_tol)}});
      };
    });
  }

  // ---- superop ----
  auto* superop = app.add_subcommand("superop", "Superoperators of channels");
  superop->require_subcommand(1);

  {
    auto* cmd = superop->add_subcommand("build", "Materialize a channel superoperator");
    auto opts = std::make_shared<CommonOpts>();
    auto u_spec = std::make_shared<std::string>();
    auto kraus_file = std::make_shared<std::string>();
    auto zero_tol = std::make_shared<double>(1e-10);
    auto channel_tol = std::make_shared<double>(1e-10);
    add_common(cmd, *opts);
    cmd->add_option("--u", *u_spec, "Unitary spec");
    cmd->add_option("--kraus", *kraus_file, "JSON file with {\"kraus\": [matrix, ...]}");
    cmd->add_option("--zero-tol", *zero_tol, "Overlap threshold for informational completeness")
        ->capture_default_str();
    cmd->add_option("--channel-tol", *channel_tol,
                    "Tolerance on sum K^dag K = 1 for Kraus input")
        ->capture_default_str();
    cmd->callback([opts, u_spec, kraus_file, zero_tol, channel_tol, &action] {
      action = [opts, u_spec, kraus_file, zero_tol, channel_tol] {
        if (u_spec->empty() == kraus_file->empty())
          throw kdq::InvalidArgument("pass exactly one of --u and --kraus");
        const kdq::BasisPair bp = kdq::io::resolve_basis_spec(opts->basis, opts->d, opts->n);
        kdq::KDSuperop e;
        if (!u_spec->empty()) {
          e = kdq::superop_from_unitary(kdq::io::resolve_unitary_spec(*u_spec, opts->d, opts->n),
                                        bp, 1e-10, *zero_tol);
        } else {
          std::vector<kdq::ComplexMatrix> kraus;
          for (const auto& k : kdq::io::load_json(*kraus_file).at("kraus"))
            kraus.push_back(kdq::io::matrix_from_json(k));
          e = kdq::superop_from_kraus(kraus, bp, *channel_tol, *zero_tol);
        }
        json result = kdq::io::to_json(e);
        result["entanglement_fidelity"] = kdq::entanglement_fidelity(e);
        result["induced_l1"] = kdq::induced_l1(e);
        emit(*opts,
             json{{"verb", "superop build"}, {"d", opts->d}, {"n", opts->n}, {"v", opts->basis},
                  {"u", *u_spec}, {"kraus", *kraus_file}, {"zero_tol", *zero_tol},
                  {"channel_tol", *channel_tol}},
             std::move(result));
      };
    });
  }

  {
    auto* cmd = superop->add_subcommand("classify", "Stochasticity and permutation structure");
    auto opts = std::make_shared<CommonOpts>();
    auto u_spec = std::make_shared<std::string>("qft");
    auto zero_tol = std::make_shared<double>(1e-10);
    auto pos_tol = std::make_shared<double>(1e-10);
    auto perm_tol = std::make_shared<double>(1e-8);
    add_common(cmd, *opts);
    cmd->add_option("--u", *u_spec, "Unitary spec")->capture_default_str();
    cmd->add_option("--zero-tol", *zero_tol, "Overlap threshold for informational completeness")
        ->capture_default_str();
    cmd->add_option("--pos-tol", *pos_tol, "Tolerance for stochasticity/positivity verdicts")
        ->capture_default_str();
    cmd->add_option("--perm-tol", *perm_tol, "Modulus threshold for permutation detection")
        ->capture_default_str();
    cmd->callback([opts, u_spec, zero_tol, pos_tol, perm_tol, &action] {
      action = [opts, u_spec, zero_tol, pos_tol, perm_tol] {
        const kdq::BasisPair bp = kdq::io::resolve_basis_spec(opts->basis, opts->d, opts->n);
        const kdq::ComplexMatrix u = kdq::io::resolve_unitary_spec(*u_spec, opts->d, opts->n);
        const kdq::KDSuperop e = kdq::superop_from_unitary(u, bp, 1e-10, *zero_tol);
        const auto cert = kdq::generalized_permutation_certificate(u, bp, *perm_tol);
        json result{{"stochastic", kdq::is_stochastic(e, *pos_tol)},
                    {"gen_perm", cert.has_value()},
                    {"positivity_preserving_on_fixture",
                     kdq::preserves_positivity_on_basis_states(u, bp, *pos_tol)},
                    {"induced_l1", kdq::induced_l1(e)}};
        if (cert) result["certificate"] = kdq::io::to_json(*cert);
        emit(*opts,
             json{{"verb", "superop classify"}, {"d", opts->d}, {"n", opts->n},
                  {"v", opts->basis}, {"u", *u_spec}, {"zero_tol", *zero_tol},
                  {"pos_tol", *pos_tol}, {"perm_tol", *perm_tol}},
             std::move(result));
      };
    });
  }

  // ---- simulate ----
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo Born-rule estimation");
  simulate->require_subcommand(1);

  {
    auto* cmd = simulate->add_subcommand("estimate", "Sampled outcome-probability estimate");
    auto o = std::make_shared<SimulateOpts>();
    auto eps = std::make_shared<double>(0.1);
    auto delta = std::make_shared<double>(0.1);
    auto seed = std::make_shared<std::uint64_t>(0);
    auto workers = std::make_shared<std::size_t>(1);
    auto samples = std::make_shared<std::size_t>(0);
    auto cap = std::make_shared<std::size_t>(100000000);
    cmd->add_option("--circuit", o->circuit_path, "Circuit JSON path")->required();
    cmd->add_option("--v", o->basis, "Basis spec")->capture_default_str();
    cmd->add_option("--state", o->state, "Per-qudit state specs (comma list, or one for all)")
        ->capture_default_str();
    cmd->add_option("--povm", o->povm, "Per-qudit POVM specs (comma list, or one for all)")
        ->capture_default_str();
    cmd->add_flag("--dense", o->dense, "Treat the register as one qudit (non-product inputs)");
    cmd->add_option("--epsilon", *eps, "Target precision")->capture_default_str();
    cmd->add_option("--delta", *delta, "Failure probability")->capture_default_str();
    cmd->add_option("--seed", *seed, "RNG seed")->capture_default_str();
    cmd->add_option("--workers", *workers, "Worker lanes")->capture_default_str();
    cmd->add_option("--samples", *samples, "Override the sample budget (0 = auto)")
        ->capture_default_str();
    cmd->add_option("--sample-cap", *cap, "Refuse budgets above this")->capture_default_str();
    cmd->add_option("--csv", o->csv, "Also write the report as a CSV row");
    cmd->add_option("--out", o->out, "Write the JSON payload to this path");
    cmd->callback([o, eps, delta, seed, workers, samples, cap, &action] {
      action = [o, eps, delta, seed, workers, samples, cap] {
        kdq::Circuit circuit;
        kdq::BasisPair bp;
        const kdq::SimInstance inst = build_sim_instance(*o, circuit, bp);
        const kdq::EstimateReport rep =
            kdq::estimate_born(inst, *eps, *delta, *seed, *workers, *cap, *samples);
        json result = kdq::io::to_json(rep);
        std::string exact_str;
        try {
          const double exact = kdq::exhaustive_path_sum(inst, 1e6).real();
          result["exact"] = exact;
          exact_str = std::to_string(exact);
        } catch (const kdq::PathSpaceTooLarge&) {
          result["exact"] = nullptr;
        }
        if (!o->csv.empty()) kdq::io::save_text(o->csv, kdq::io::estimate_csv(rep, exact_str));
        CommonOpts co;
        co.out = o->out;
        emit(co,
             json{{"verb", "simulate estimate"}, {"circuit", o->circuit_path}, {"v", o->basis},
                  {"state", o->state}, {"povm", o->povm}, {"dense", o->dense},
                  {"epsilon", *eps}, {"delta", *delta}, {"seed", *seed}, {"workers", *workers},
                  {"samples", *samples}, {"sample_cap", *cap}},
             std::move(result));
      };
    });
  }

  {
    auto* cmd = simulate->add_subcommand("budget", "Negativity budget of an instance");
    auto o = std::make_shared<SimulateOpts>();
    cmd->add_option("--circuit", o->circuit_path, "Circuit JSON path")->required();
    cmd->add_option("--v", o->basis, "Basis spec")->capture_default_str();
    cmd->add_option("--state", o->state, "Per-qudit state specs")->capture_default_str();
    cmd->add_option("--povm", o->povm, "Per-qudit POVM specs")->capture_default_str();
    cmd->add_flag("--dense", o->dense, "Treat the register as one qudit");
    cmd->add_option("--csv", o->csv, "Write per-gate norms as CSV");
    cmd->add_option("--out", o->out, "Write the JSON payload to this path");
    cmd->callback([o, &action] {
      action = [o] {
        kdq::Circuit circuit;
        kdq::BasisPair bp;
        const kdq::SimInstance inst = build_sim_instance(*o, circuit, bp);
        const kdq::NegativityBudget b = kdq::negativity_budget(inst);
        if (!o->csv.empty()) kdq::io::save_text(o->csv, kdq::io::budget_csv(b));
        CommonOpts co;
        co.out = o->out;
        emit(co,
             json{{"verb", "simulate budget"}, {"circuit", o->circuit_path}, {"v", o->basis},
                  {"state", o->state}, {"povm", o->povm}, {"dense", o->dense}},
             kdq::io::to_json(b));
      };
    });
  }

  // ---- spectral ----
  auto* spectral = app.add_subcommand("spectral", "Fourier structure and Wigner pipeline");
  spectral->require_subcommand(1);

  {
    auto* cmd = spectral->add_subcommand("selfsim", "Self-similarity residual of the hat table");
    auto opts = std::make_shared<CommonOpts>();
    auto state = std::make_shared<std::string>("a0");
    auto q_file = std::make_shared<std::string>();
    add_common(cmd, *opts);
    cmd->add_option("--state", *state, "State spec")->capture_default_str();
    cmd->add_option("--q", *q_file, "Load the distribution from a JSON file instead");
    cmd->callback([opts, state, q_file, &action] {
      action = [opts, state, q_file] {
        const kdq::BasisPair bp = kdq::io::resolve_basis_spec(opts->basis, opts->d, opts->n);
        const kdq::KDDist q = load_or_build_dist(*q_file, *state, bp);
        const kdq::DftTable hat = kdq::hat_dft(q, bp);
        emit(*opts,
             json{{"verb", "spectral selfsim"}, {"d", opts->d}, {"n", opts->n},
                  {"v", opts->basis}, {"state", *state}, {"q", *q_file}},
             json{{"residual", kdq::self_similarity_residual(hat)}});
      };
    });
  }

  {
    auto* cmd = spectral->add_subcommand("wigner", "Transform between the two distributions");
    auto opts = std::make_shared<CommonOpts>();
    auto state = std::make_shared<std::string>("a0");
    auto q_file = std::make_shared<std::string>();
    auto w_file = std::make_shared<std::string>();
    auto inverse = std::make_shared<bool>(false);
    add_common(cmd, *opts);
    cmd->add_option("--state", *state, "State spec")->capture_default_str();
    cmd->add_option("--q", *q_file, "Load the distribution from a JSON file instead");
    cmd->add_flag("--inverse", *inverse, "Go from a Wigner table back to a distribution");
    cmd->add_option("--w", *w_file, "Wigner JSON path (with --inverse)");
    cmd->callback([opts, state, q_file, w_file, inverse, &action] {
      action = [opts, state, q_file, w_file, inverse] {
        json config{{"verb", "spectral wigner"}, {"d", opts->d}, {"n", opts->n},
                    {"v", opts->basis}, {"state", *state}, {"q", *q_file},
                    {"inverse", *inverse}, {"w", *w_file}};
        if (*inverse) {
          if (w_file->empty()) throw kdq::InvalidArgument("--inverse needs --w <path>");
          const kdq::WignerDist w = kdq::io::wigner_from_json(kdq::io::load_artifact(*w_file));
          emit(*opts, std::move(config), kdq::io::to_json(kdq::wigner_to_kd(w)));
          return;
        }
        const kdq::BasisPair bp = kdq::io::resolve_basis_spec(opts->basis, opts->d, opts->n);
        const kdq::KDDist q = load_or_build_dist(*q_file, *state, bp);
        emit(*opts, std::move(config), kdq::io::to_json(kdq::kd_to_wigner(q, bp)));
      };
    });
  }

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "Bound and validity checks");
  verify->require_subcommand(1);

  {
    auto* cmd = verify->add_subcommand("bounds", "Magnitude bounds for a pure state");
    auto opts = std::make_shared<CommonOpts>();
    auto state = std::make_shared<std::string>("a0");
    auto zero_tol = std::make_shared<double>(1e-10);
    auto uniform_tol = std::make_shared<double>(1e-9);
    add_common(cmd, *opts);
    cmd->add_option("--state", *state, "Pure-state spec")->capture_default_str();
    cmd->add_option("--zero-tol", *zero_tol, "Support-counting threshold")
        ->capture_default_str();
    cmd->add_option("--uniform-tol", *uniform_tol, "Tolerance for the uniformity check")
        ->capture_default_str();
    cmd->callback([opts, state, zero_tol, uniform_tol, &action] {
      action = [opts, state, zero_tol, uniform_tol] {
        const kdq::BasisPair bp = kdq::io::resolve_basis_spec(opts->basis, opts->d, opts->n);
        const kdq::PureState psi = kdq::io::resolve_pure_spec(*state, bp);
        json result = kdq::io::to_json(kdq::check_bounds(psi, bp, *zero_tol));
        if (kdq::is_mub(bp))
          result["mub_uniform"] = kdq::check_mub_uniformity(psi, bp, *uniform_tol);
        else
          result["mub_uniform"] = nullptr;
        emit(*opts,
             json{{"verb", "verify bounds"}, {"d", opts->d}, {"n", opts->n}, {"v", opts->basis},
                  {"state", *state}, {"zero_tol", *zero_tol}, {"uniform_tol", *uniform_tol}},
             std::move(result));
      };
    });
  }

  {
    auto* cmd = verify->add_subcommand("hermiticity", "Validity constraints on a table");
    auto opts = std::make_shared<CommonOpts>();
    auto state = std::make_shared<std::string>("a0");
    auto q_file = std::make_shared<std::string>();
    add_common(cmd, *opts);
    cmd->add_option("--state", *state, "State spec")->capture_default_str();
    cmd->add_option("--q", *q_file, "Load the distribution from a JSON file instead");
    auto zero_tol = std::make_shared<double>(1e-10);
    cmd->add_option("--zero-tol", *zero_tol, "Overlap threshold for informational completeness")
        ->capture_default_str();
    cmd->callback([opts, state, q_file, zero_tol, &action] {
      action = [opts, state, q_file, zero_tol] {
        const kdq::BasisPair bp = kdq::io::resolve_basis_spec(opts->basis, opts->d, opts->n);
        const kdq::KDDist q = load_or_build_dist(*q_file, *state, bp);
        emit(*opts,
             json{{"verb", "verify hermiticity"}, {"d", opts->d}, {"n", opts->n},
                  {"v", opts->basis}, {"state", *state}, {"q", *q_file},
                  {"zero_tol", *zero_tol}},
             json{{"residual", kdq::hermiticity_residual(q, bp, *zero_tol)}});
      };
    });
  }

  // ---- cycle ----
  {
    auto* cmd = app.add_subcommand("cycle", "Simulated cycle-test measurement")
                    ->add_subcommand("run", "Run a shot-based estimate");
    auto opts = std::make_shared<CommonOpts>();
    auto state = std::make_shared<std::string>("a0");
    auto u_spec = std::make_shared<std::string>();
    auto i = std::make_shared<std::size_t>(0);
    auto j = std::make_shared<std::size_t>(0);
    auto k = std::make_shared<int>(-1);
    auto l = std::make_shared<int>(-1);
    auto shots = std::make_shared<std::size_t>(100000);
    auto seed = std::make_shared<std::uint64_t>(0);
    auto s_mode = std::make_shared<std::string>("both");
    auto est_denom = std::make_shared<bool>(false);
    add_common(cmd, *opts);
    cmd->add_option("--state", *state, "State spec (quasiprobability mode)")
        ->capture_default_str();
    cmd->add_option("--i", *i, "Row index")->capture_default_str();
    cmd->add_option("--j", *j, "Column index")->capture_default_str();
    cmd->add_option("--k", *k, "Superoperator source row (enables element mode)");
    cmd->add_option("--l", *l, "Superoperator source column (enables element mode)");
    cmd->add_option("--u", *u_spec, "Unitary spec (element mode)");
    cmd->add_option("--shots", *shots, "Shots per run")->capture_default_str();
    cmd->add_option("--seed", *seed, "RNG seed")->capture_default_str();
    cmd->add_option("--s", *s_mode, "Phase mode: both | 0 | 1")->capture_default_str();
    cmd->add_flag("--estimate-denominator", *est_denom,
                  "Estimate |<b_l|a_k>|^2 with a simulated SWAP test");
    cmd->callback([opts, state, u_spec, i, j, k, l, shots, seed, s_mode, est_denom, &action] {
      action = [opts, state, u_spec, i, j, k, l, shots, seed, s_mode, est_denom] {
        const kdq::BasisPair bp = kdq::io::resolve_basis_spec(opts->basis, opts->d, opts->n);
        const bool element_mode = *k >= 0 || *l >= 0;
        json config{{"verb", "cycle run"}, {"d", opts->d}, {"n", opts->n}, {"v", opts->basis},
                    {"state", *state}, {"u", *u_spec}, {"i", *i}, {"j", *j}, {"k", *k},
                    {"l", *l}, {"shots", *shots}, {"seed", *seed}, {"s", *s_mode},
                    {"estimate_denominator", *est_denom}};
        if (*s_mode != "both" && *s_mode != "0" && *s_mode != "1")
          throw kdq::InvalidArgument("--s must be both, 0 or 1");
        if (element_mode) {
          if (*k < 0 || *l < 0 || u_spec->empty())
            throw kdq::InvalidArgument("element mode needs --k, --l and --u");
          const kdq::ComplexMatrix u =
              kdq::io::resolve_unitary_spec(*u_spec, opts->d, opts->n);
          if (*s_mode == "both") {
            emit(*opts, std::move(config),
                 kdq::io::to_json(kdq::estimate_superop_element(
                     u, *i, *j, std::size_t(*k), std::size_t(*l), bp, *shots, *seed,
                     *est_denom)));
          } else {
            emit(*opts, std::move(config),
                 kdq::io::to_json(kdq::run_superop_cycle(u, *i, *j, std::size_t(*k),
                                                         std::size_t(*l), bp,
                                                         *s_mode == "1" ? 1 : 0, *shots,
                                                         *seed)));
          }
          return;
        }
        const kdq::DensityMatrix rho = kdq::io::resolve_density_spec(*state, bp);
        if (*s_mode == "both") {
          emit(*opts, std::move(config),
               kdq::io::to_json(kdq::estimate_quasiprobability(rho, *i, *j, bp, *shots, *seed)));
        } else {
          emit(*opts, std::move(config),
               kdq::io::to_json(kdq::run_quasiprob_cycle(rho, *i, *j, bp,
                                                         *s_mode == "1" ? 1 : 0, *shots,
                                                         *seed)));
        }
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << json{{"error", "UsageError"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }

  if (dim_cap_flag > 0) kdq::set_dim_cap(dim_cap_flag);

  try {
    if (action) action();
  } catch (const kdq::Error& e) {
    std::cerr << json{{"error", e.name()},
                      {"code", static_cast<int>(e.code())},
                      {"message", e.what()}}
                     .dump()
              << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "InternalError"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }
  return 0;
}
