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

// JSON schemas for every artifact, CSV emitters for plot-ready tables, and
// the spec-string resolvers behind the CLI flags (basis/state/unitary/POVM
// shorthands). Matrices serialize row-major as {"rows", "cols", "entries":
// [[re, im], ...]}; keys are emitted in sorted order so identical values give
// identical bytes.

#pragma once

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

#include "kdq/basis.hpp"
#include "kdq/bounds.hpp"
#include "kdq/cycle.hpp"
#include "kdq/kd.hpp"
#include "kdq/random.hpp"
#include "kdq/sampler.hpp"
#include "kdq/spectral.hpp"
#include "kdq/superop.hpp"

namespace kdq::io {

using nlohmann::json;

// --- Matrices and core values ---

inline json to_json(const ComplexMatrix& m) {
  json entries = json::array();
  for (const cplx& z : m.data()) entries.push_back({z.real(), z.imag()});
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline ComplexMatrix matrix_from_json(const json& j) {
  if (!j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
    throw IoError("matrix JSON needs rows, cols and entries");
  const std::size_t rows = j.at("rows").get<std::size_t>();
  const std::size_t cols = j.at("cols").get<std::size_t>();
  const auto& entries = j.at("entries");
  if (entries.size() != rows * cols) throw IoError("matrix entry count mismatch");
  std::vector<cplx> data;
  data.reserve(entries.size());
  for (const auto& e : entries) data.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
  ComplexMatrix m(rows, cols, std::move(data));
  check_finite(m);
  return m;
}

inline json to_json(const KDDist& q) {
  json flat = json::array();
  for (const cplx& z : q.q.data()) flat.push_back({z.real(), z.imag()});
  return json{{"dim", q.dim()}, {"q", std::move(flat)}};
}

inline KDDist kd_from_json(const json& j) {
  const std::size_t dim = j.at("dim").get<std::size_t>();
  const auto& flat = j.at("q");
  if (flat.size() != dim * dim) throw IoError("distribution entry count is not dim^2");
  std::vector<cplx> data;
  data.reserve(flat.size());
  for (const auto& e : flat) data.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
  return KDDist(ComplexMatrix(dim, dim, std::move(data)));
}

/// |sum - 1|; loaders treat a large value as a warning, not an error.
inline double normalization_residual(const KDDist& q) {
  return std::abs(q.sum() - cplx{1.0, 0.0});
}

inline json to_json(const BasisPair& bp) {
  json j{{"dim", bp.dim()}, {"v", to_json(bp.v)}};
  if (bp.factors) {
    json fs = json::array();
    for (const ComplexMatrix& f : *bp.factors) fs.push_back(to_json(f));
    j["factors"] = std::move(fs);
  }
  return j;
}

inline BasisPair basis_from_json(const json& j) {
  ComplexMatrix v = matrix_from_json(j.at("v"));
  if (j.contains("dim") && j.at("dim").get<std::size_t>() != v.rows())
    throw IoError("basis pair dim field disagrees with the matrix");
  if (j.contains("factors")) {
    std::vector<ComplexMatrix> fs;
    for (const auto& f : j.at("factors")) fs.push_back(matrix_from_json(f));
    BasisPair bp = BasisPair::from_factors(std::move(fs));
    if (max_abs_diff(bp.v, v) > 1e-12)
      throw IoError("basis factors do not reproduce the transition matrix");
    return bp;
  }
  return BasisPair::from_unitary(std::move(v));
}

inline json to_json(const KDSuperop& e) { return json{{"dim", e.dim}, {"m", to_json(e.m)}}; }

inline KDSuperop superop_from_json(const json& j) {
  KDSuperop e;
  e.dim = j.at("dim").get<std::size_t>();
  e.m = matrix_from_json(j.at("m"));
  if (e.m.rows() != e.dim * e.dim || !e.m.square())
    throw IoError("superoperator matrix is not dim^2 x dim^2");
  return e;
}

inline json to_json(const Circuit& c) {
  json gates = json::array();
  for (const Gate& g : c.gates) gates.push_back(json{{"targets", g.targets}, {"u", to_json(g.u)}});
  return json{{"d", c.d}, {"n", c.n}, {"gates", std::move(gates)}};
}

inline Circuit circuit_from_json(const json& j) {
  Circuit c;
  c.d = j.at("d").get<std::size_t>();
  c.n = j.at("n").get<std::size_t>();
  for (const auto& g : j.at("gates"))
    c.gates.push_back(Gate{g.at("targets").get<std::vector<std::size_t>>(),
                           matrix_from_json(g.at("u"))});
  validate_circuit(c);
  return c;
}

inline json to_json(const WHTable& t) {
  json values = json::array();
  for (const cplx& z : t.values.data()) values.push_back({z.real(), z.imag()});
  return json{{"d", t.d}, {"n", t.n}, {"values", std::move(values)}};
}

inline json to_json(const WignerDist& w) {
  return json{{"d", w.d}, {"n", w.n}, {"values", w.w}};
}

inline WignerDist wigner_from_json(const json& j) {
  WignerDist w;
  w.d = j.at("d").get<std::size_t>();
  w.n = j.at("n").get<std::size_t>();
  w.w = j.at("values").get<std::vector<double>>();
  const std::size_t dim = pow_sz(w.d, w.n);
  if (w.w.size() != dim * dim) throw IoError("Wigner table entry count is not D^2");
  return w;
}

// --- Reports ---

inline json to_json(const EstimateReport& r) {
  return json{{"estimate", r.estimate},       {"imag_mean", r.imag_mean},
              {"samples", r.samples_used},    {"auto_budgeted", r.auto_budgeted},
              {"epsilon", r.epsilon},         {"delta", r.delta},
              {"n_t", r.n_t},                 {"seed", r.seed},
              {"workers", r.workers},         {"elapsed_seconds", r.elapsed_seconds}};
}

inline json to_json(const NegativityBudget& b) {
  return json{{"n_q", b.n_q}, {"gate_norms", b.gate_norms}, {"f_inf", b.f_inf}, {"n_t", b.n_t}};
}

inline json to_json(const ShotReport& r) {
  return json{{"zeros", r.zeros}, {"ones", r.ones}, {"estimate", r.estimate},
              {"stderr", r.std_error}};
}

inline json to_json(const ComplexEstimate& e) {
  return json{{"estimate", {e.value.real(), e.value.imag()}},
              {"stderr_re", e.stderr_re},
              {"stderr_im", e.stderr_im}};
}

inline json to_json(const BoundReport& r) {
  return json{{"max_abs_q", r.max_abs_q},
              {"upper_bound", r.upper_bound},
              {"lower_bound", r.lower_bound},
              {"upper_satisfied", r.upper_satisfied},
              {"lower_satisfied", r.lower_satisfied},
              {"kd_positive", r.kd_positive},
              {"n_a", r.n_a},
              {"n_b", r.n_b},
              {"m", r.m},
              {"big_m", r.big_m}};
}

inline json to_json(const SupportReport& r) {
  return json{{"n_a", r.n_a},
              {"n_b", r.n_b},
              {"support_a", r.support_a},
              {"support_b", r.support_b},
              {"zero_tol", r.zero_tol}};
}

inline json to_json(const GenPermCertificate& c) {
  return json{{"sigma_a", c.sigma_a}, {"theta", c.theta}, {"sigma_b", c.sigma_b},
              {"phi", c.phi}};
}

// --- Files ---

inline json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw IoError("cannot parse " + path + ": " + e.what());
  }
  return j;
}

/// Loads a JSON artifact, unwrapping a {"config", "result"} payload written
/// by the CLI so emitted files can feed the next verb directly.
inline json load_artifact(const std::string& path) {
  json j = load_json(path);
  if (j.is_object() && j.contains("config") && j.contains("result")) return j.at("result");
  return j;
}

inline void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << text;
}

inline void save_json(const std::string& path, const json& j) {
  save_text(path, j.dump(2) + "\n");
}

// --- CSV ---

inline std::string estimate_csv(const EstimateReport& r, const std::string& exact = "") {
  std::ostringstream out;
  out.precision(17);
  out << "estimate,exact,n_t,samples,seconds\n";
  out << r.estimate << "," << exact << "," << r.n_t << "," << r.samples_used << ","
      << r.elapsed_seconds << "\n";
  return out.str();
}

inline std::string budget_csv(const NegativityBudget& b) {
  std::ostringstream out;
  out.precision(17);
  out << "gate,induced_l1\n";
  for (std::size_t k = 0; k < b.gate_norms.size(); ++k)
    out << k << "," << b.gate_norms[k] << "\n";
  return out.str();
}

inline std::string marginals_csv(const std::vector<double>& pa, const std::vector<double>& pb) {
  std::ostringstream out;
  out.precision(17);
  out << "index,prob_a,prob_b\n";
  for (std::size_t i = 0; i < pa.size(); ++i) out << i << "," << pa[i] << "," << pb[i] << "\n";
  return out.str();
}

// --- Spec-string resolvers used by the CLI ---

namespace detail {

inline bool has_prefix(const std::string& s, const std::string& prefix, std::string& rest) {
  if (s.rfind(prefix, 0) != 0) return false;
  rest = s.substr(prefix.size());
  return true;
}

inline std::uint64_t parse_seed(const std::string& s) {
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw InvalidArgument("cannot parse seed '" + s + "'");
  }
}

inline std::size_t parse_index(const std::string& s, const char* what) {
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw InvalidArgument(std::string("cannot parse ") + what + " '" + s + "'");
  }
}

}  // namespace detail

/// "qft" | "hadamard" | "random:<seed>" | "file:<path>".
/// random draws independent per-qudit factors so product-form machinery
/// stays available.
inline BasisPair resolve_basis_spec(const std::string& spec, std::size_t d, std::size_t n) {
  std::string rest;
  if (spec == "qft") return BasisPair::qft(d, n);
  if (spec == "hadamard") {
    if (d != 2) throw InvalidArgument("hadamard basis requires d = 2");
    return BasisPair::hadamard(n);
  }
  if (detail::has_prefix(spec, "random:", rest)) {
    const std::uint64_t seed = detail::parse_seed(rest);
    std::vector<ComplexMatrix> fs;
    for (std::size_t q = 0; q < n; ++q) fs.push_back(random_unitary(d, seed + q));
    return n == 1 ? BasisPair::from_unitary(std::move(fs[0])) : BasisPair::from_factors(fs);
  }
  if (detail::has_prefix(spec, "file:", rest)) {
    BasisPair bp = basis_from_json(load_artifact(rest));
    if (bp.dim() != pow_sz(d, n)) throw InvalidArgument("basis file dimension mismatch");
    return bp;
  }
  throw InvalidArgument("unknown basis spec '" + spec + "'");
}

/// "a<i>" | "b<j>" | "random:<seed>" | "file:<path>" (vector-shaped matrix).
inline PureState resolve_pure_spec(const std::string& spec, const BasisPair& bp) {
  std::string rest;
  if (detail::has_prefix(spec, "a", rest) && !rest.empty() && std::isdigit(rest[0]))
    return PureState::basis(bp.dim(), detail::parse_index(rest, "basis index"));
  if (detail::has_prefix(spec, "b", rest) && !rest.empty() && std::isdigit(rest[0])) {
    const std::size_t j = detail::parse_index(rest, "basis index");
    if (j >= bp.dim()) throw InvalidArgument("basis index out of range");
    std::vector<cplx> col(bp.dim());
    for (std::size_t r = 0; r < bp.dim(); ++r) col[r] = bp.v(r, j);
    return PureState(std::move(col), 1e-9);
  }
  if (detail::has_prefix(spec, "random:", rest))
    return random_pure_state(bp.dim(), detail::parse_seed(rest));
  if (detail::has_prefix(spec, "file:", rest)) {
    const ComplexMatrix m = matrix_from_json(load_artifact(rest));
    if (m.rows() != 1 && m.cols() != 1)
      throw InvalidArgument("pure-state file must hold a vector");
    return PureState::normalized(m.data());
  }
  throw InvalidArgument("unknown pure-state spec '" + spec + "'");
}

/// Pure specs plus "mixed" and density-matrix files.
inline DensityMatrix resolve_density_spec(const std::string& spec, const BasisPair& bp) {
  std::string rest;
  if (spec == "mixed") return DensityMatrix::maximally_mixed(bp.dim());
  if (detail::has_prefix(spec, "random:", rest))
    return random_density_matrix(bp.dim(), detail::parse_seed(rest));
  if (detail::has_prefix(spec, "file:", rest)) {
    const ComplexMatrix m = matrix_from_json(load_artifact(rest));
    if (m.rows() == 1 || m.cols() == 1)
      return DensityMatrix::pure(PureState::normalized(m.data()));
    if (m.rows() != bp.dim()) throw InvalidArgument("state file dimension mismatch");
    return DensityMatrix::from_matrix(m, 1e-9, 1e-9);
  }
  return DensityMatrix::pure(resolve_pure_spec(spec, bp));
}

/// "qft" | "identity" | "x" | "z" (single-step shift/clock on every qudit) |
/// "random:<seed>" | "file:<path>".
inline ComplexMatrix resolve_unitary_spec(const std::string& spec, std::size_t d, std::size_t n) {
  std::string rest;
  if (spec == "qft") {
    ComplexMatrix u = qft_matrix(d);
    for (std::size_t q = 1; q < n; ++q) u = kron(u, qft_matrix(d));
    return u;
  }
  if (spec == "identity") return ComplexMatrix::identity(pow_sz(d, n));
  if (spec == "x") return wh_x(QuditIndexVector{d, std::vector<std::size_t>(n, 1)});
  if (spec == "z") return wh_z(QuditIndexVector{d, std::vector<std::size_t>(n, 1)});
  if (detail::has_prefix(spec, "random:", rest))
    return random_unitary(pow_sz(d, n), detail::parse_seed(rest));
  if (detail::has_prefix(spec, "file:", rest)) {
    ComplexMatrix u = matrix_from_json(load_artifact(rest));
    if (u.rows() != pow_sz(d, n)) throw InvalidArgument("unitary file dimension mismatch");
    return u;
  }
  throw InvalidArgument("unknown unitary spec '" + spec + "'");
}

/// "a<k>" | "b<k>" (projectors), "id", or "file:<path>".
inline ComplexMatrix resolve_povm_spec(const std::string& spec, const BasisPair& bp) {
  std::string rest;
  if (spec == "id") return ComplexMatrix::identity(bp.dim());
  if (detail::has_prefix(spec, "file:", rest)) {
    const ComplexMatrix m = matrix_from_json(load_artifact(rest));
    if (m.rows() != bp.dim() || !m.square())
      throw InvalidArgument("POVM file dimension mismatch");
    return m;
  }
  const PureState s = resolve_pure_spec(spec, bp);
  return outer(s, s);
}

inline std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(csv);
  while (std::getline(in, cur, ',')) parts.push_back(cur);
  if (parts.empty()) parts.push_back(csv);
  return parts;
}

}  // namespace kdq::io
