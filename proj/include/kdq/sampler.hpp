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

// Monte Carlo Born-rule estimation. A circuit of 1- and 2-qudit gates is
// simulated by sampling chains of index pairs: the start pair from the
// initial distribution's absolute values, each subsequent pair from the
// absolute values of the active gate's superoperator column. Each chain
// contributes a phase-weighted value whose expectation is the exact outcome
// probability; the l1 masses met along the way bound its magnitude, so the
// total non-positivity sets the Hoeffding sample budget.

#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <thread>
#include <utility>
#include <vector>

#include "kdq/basis.hpp"
#include "kdq/gates.hpp"
#include "kdq/kd.hpp"
#include "kdq/random.hpp"
#include "kdq/superop.hpp"

namespace kdq {

struct Gate {
  std::vector<std::size_t> targets;
  ComplexMatrix u;
};

struct Circuit {
  std::size_t d = 2;
  std::size_t n = 1;
  std::vector<Gate> gates;
};

inline void validate_circuit(const Circuit& c, double unitary_tol = 1e-10) {
  if (c.d < 2 || c.n < 1) throw InvalidArgument("circuit needs d >= 2 and n >= 1");
  check_dim_cap(pow_sz(c.d, c.n));
  for (const Gate& g : c.gates) {
    if (g.targets.empty() || g.targets.size() > 2)
      throw InvalidArgument("gates act on 1 or 2 qudits");
    if (g.targets.size() == 2 && g.targets[0] == g.targets[1])
      throw InvalidArgument("gate targets must be distinct");
    for (std::size_t t : g.targets)
      if (t >= c.n) throw InvalidArgument("gate target out of range");
    const std::size_t ldim = pow_sz(c.d, g.targets.size());
    if (g.u.rows() != ldim || g.u.cols() != ldim)
      throw DimensionMismatch("gate matrix does not match its arity");
    if (!is_unitary(g.u, unitary_tol)) throw InvalidArgument("gate matrix is not unitary");
  }
}

/// Gate superoperator over its target qudits only, with per-column l1 masses
/// and sampling tables precomputed once (the gate is revisited by every path).
struct LocalSuperop {
  std::vector<std::size_t> targets;
  std::size_t local_dim = 0;  // d^arity
  KDSuperop op;
  std::vector<double> col_norm;
  std::vector<std::vector<double>> col_cdf;
  double induced = 1.0;
};

namespace detail {

inline LocalSuperop finalize_local(std::vector<std::size_t> targets, KDSuperop op) {
  LocalSuperop l;
  l.targets = std::move(targets);
  l.op = std::move(op);
  l.local_dim = static_cast<std::size_t>(std::llround(std::sqrt(double(l.op.m.rows()))));
  const std::size_t side = l.op.m.rows();
  l.col_norm.resize(side);
  l.col_cdf.assign(side, std::vector<double>(side));
  for (std::size_t c = 0; c < side; ++c) {
    double acc = 0.0;
    for (std::size_t r = 0; r < side; ++r) {
      acc += std::abs(l.op.m(r, c));
      l.col_cdf[c][r] = acc;
    }
    l.col_norm[c] = acc;
    l.induced = std::max(l.induced, acc);
  }
  return l;
}

}  // namespace detail

/// Builds the superoperator of a gate over its targets, using the tensor
/// product of the targets' basis factors. Identity on untouched qudits is
/// implicit.
inline LocalSuperop local_superop(const Gate& gate, const BasisPair& bp, std::size_t circuit_n) {
  if (circuit_n > 1 && !bp.factors)
    throw NonProductBasis("local gates need per-qudit basis factors");
  BasisPair local_bp = gate.targets.size() == 1
                           ? BasisPair::from_unitary(bp.factor(gate.targets[0]), 1e-10)
                           : BasisPair::from_factors(
                                 {bp.factor(gate.targets[0]), bp.factor(gate.targets[1])}, 1e-10);
  return detail::finalize_local(gate.targets, superop_from_unitary(gate.u, local_bp));
}

/// Lift a local superoperator to the full D^2 x D^2 matrix (identity on the
/// other qudits), matching superop_from_unitary of the embedded gate.
inline KDSuperop embed_local_superop(const LocalSuperop& local, std::size_t d, std::size_t n) {
  const std::size_t dim = pow_sz(d, n);
  const std::size_t ldim = local.local_dim;
  KDSuperop full;
  full.dim = dim;
  full.m = ComplexMatrix(dim * dim, dim * dim);
  const std::size_t arity = local.targets.size();
  for (std::size_t k = 0; k < dim; ++k) {
    const auto kv = QuditIndexVector::from_flat(k, d, n);
    for (std::size_t l = 0; l < dim; ++l) {
      const auto lv = QuditIndexVector::from_flat(l, d, n);
      std::size_t kloc = 0, lloc = 0;
      for (std::size_t t : local.targets) {
        kloc = kloc * d + kv.digits[t];
        lloc = lloc * d + lv.digits[t];
      }
      const std::size_t lcol = kloc * ldim + lloc;
      for (std::size_t lrow = 0; lrow < ldim * ldim; ++lrow) {
        const cplx entry = local.op.m(lrow, lcol);
        if (entry == cplx{0.0, 0.0}) continue;
        std::size_t iloc = lrow / ldim, jloc = lrow % ldim;
        auto iv = kv;
        auto jv = lv;
        for (std::size_t t = arity; t-- > 0;) {
          iv.digits[local.targets[t]] = iloc % d;
          jv.digits[local.targets[t]] = jloc % d;
          iloc /= d;
          jloc /= d;
        }
        full.m(iv.flat() * dim + jv.flat(), k * dim + l) = entry;
      }
    }
  }
  return full;
}

/// A circuit prepared for sampling: per-qudit initial distributions and POVM
/// duals, plus per-gate local superoperators. Built either from genuinely
/// product-form inputs or, as a fallback, with the whole register treated as
/// one qudit of dimension D.
struct SimInstance {
  std::size_t d = 2;
  std::size_t n = 1;
  std::vector<KDDist> q0;
  std::vector<double> q0_norm;
  std::vector<std::vector<double>> q0_cdf;
  std::vector<LocalSuperop> ops;
  std::vector<DualVector> povm;
};

namespace detail {

inline void attach_initial(SimInstance& inst) {
  inst.q0_norm.clear();
  inst.q0_cdf.clear();
  for (const KDDist& q : inst.q0) {
    std::vector<double> cdf(q.q.data().size());
    double acc = 0.0;
    for (std::size_t i = 0; i < cdf.size(); ++i) {
      acc += std::abs(q.q.data()[i]);
      cdf[i] = acc;
    }
    if (acc <= 0.0) throw ZeroDistribution("initial distribution has zero l1 mass");
    inst.q0_norm.push_back(acc);
    inst.q0_cdf.push_back(std::move(cdf));
  }
}

}  // namespace detail

/// Product-form preparation: one state factor and one POVM factor per qudit.
inline SimInstance build_instance(const Circuit& circuit, const BasisPair& bp,
                                  const std::vector<DensityMatrix>& rho_factors,
                                  const std::vector<ComplexMatrix>& povm_factors) {
  validate_circuit(circuit);
  if (bp.dim() != pow_sz(circuit.d, circuit.n))
    throw DimensionMismatch("basis pair does not match the circuit register");
  if (circuit.n > 1 && (!bp.factors || bp.qudit_count() != circuit.n ||
                        bp.local_dim() != circuit.d))
    throw NonProductBasis("circuit with n > 1 requires matching per-qudit basis factors");
  if (rho_factors.size() != circuit.n || povm_factors.size() != circuit.n)
    throw DimensionMismatch("need one state and one POVM factor per qudit");

  SimInstance inst;
  inst.d = circuit.d;
  inst.n = circuit.n;
  for (std::size_t q = 0; q < circuit.n; ++q) {
    const BasisPair bq = BasisPair::from_unitary(bp.factor(q), 1e-10);
    inst.q0.push_back(build_kd(rho_factors[q], bq));
    inst.povm.push_back(dual_vector(povm_factors[q], bq));
  }
  for (const Gate& g : circuit.gates) inst.ops.push_back(local_superop(g, bp, circuit.n));
  detail::attach_initial(inst);
  return inst;
}

/// Dense fallback: the register becomes a single qudit of dimension D and
/// every gate is embedded. Correct for arbitrary (non-product) inputs, with
/// no tensor savings.
inline SimInstance build_dense_instance(const Circuit& circuit, const BasisPair& bp,
                                        const DensityMatrix& rho, const ComplexMatrix& povm) {
  validate_circuit(circuit);
  const std::size_t dim = pow_sz(circuit.d, circuit.n);
  if (bp.dim() != dim) throw DimensionMismatch("basis pair does not match the circuit register");
  SimInstance inst;
  inst.d = dim;
  inst.n = 1;
  const BasisPair flat = BasisPair::from_unitary(bp.v, 1e-10);  // drop factor structure
  inst.q0.push_back(build_kd(rho, flat));
  inst.povm.push_back(dual_vector(povm, flat));
  for (const Gate& g : circuit.gates) {
    Gate full{{0}, embed_unitary(g.u, g.targets, circuit.d, circuit.n)};
    inst.ops.push_back(local_superop(full, flat, 1));
  }
  detail::attach_initial(inst);
  return inst;
}

struct NegativityBudget {
  double n_q = 1.0;                 // l1 mass of the initial distribution
  std::vector<double> gate_norms;   // induced l1 norm per gate
  double f_inf = 1.0;               // largest |F_I|
  double n_t = 1.0;                 // product of all of the above
};

inline NegativityBudget negativity_budget(const SimInstance& inst) {
  NegativityBudget b;
  for (double nq : inst.q0_norm) b.n_q *= nq;
  b.n_t = b.n_q;
  for (const LocalSuperop& op : inst.ops) {
    b.gate_norms.push_back(op.induced);
    b.n_t *= op.induced;
  }
  double fi = 1.0;
  for (const DualVector& f : inst.povm) fi *= linf_norm(f);
  b.f_inf = fi;
  b.n_t *= fi;
  return b;
}

/// One sampled index-pair chain. indices[k][q] is qudit q's (i, j) pair after
/// k gates; z is the chain's phase-weighted value and x its real part.
struct PathSample {
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> indices;
  cplx z{0.0, 0.0};
  double x = 0.0;
};

namespace detail {

inline cplx phase_of(cplx z) {
  const double a = std::abs(z);
  if (a == 0.0) return cplx{1.0, 0.0};  // never sampled; defined for totality
  return z / a;
}

inline std::size_t sample_cdf(const std::vector<double>& cdf, rng_t& rng) {
  std::uniform_real_distribution<double> u(0.0, cdf.back());
  const double x = u(rng);
  std::size_t lo = 0, hi = cdf.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (cdf[mid] > x)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

}  // namespace detail

inline PathSample sample_path(const SimInstance& inst, rng_t& rng, bool record_indices = true) {
  PathSample out;
  std::vector<std::pair<std::size_t, std::size_t>> pairs(inst.n);
  cplx z{1.0, 0.0};
  for (std::size_t q = 0; q < inst.n; ++q) {
    const std::size_t flat = detail::sample_cdf(inst.q0_cdf[q], rng);
    pairs[q] = {flat / inst.d, flat % inst.d};
    z *= inst.q0_norm[q] * detail::phase_of(inst.q0[q].q.data()[flat]);
  }
  if (record_indices) out.indices.push_back(pairs);

  for (const LocalSuperop& op : inst.ops) {
    const std::size_t ldim = op.local_dim;
    std::size_t kloc = 0, lloc = 0;
    for (std::size_t t : op.targets) {
      kloc = kloc * inst.d + pairs[t].first;
      lloc = lloc * inst.d + pairs[t].second;
    }
    const std::size_t col = kloc * ldim + lloc;
    const std::size_t row = detail::sample_cdf(op.col_cdf[col], rng);
    z *= op.col_norm[col] * detail::phase_of(op.op.m(row, col));
    std::size_t iloc = row / ldim, jloc = row % ldim;
    for (std::size_t t = op.targets.size(); t-- > 0;) {
      pairs[op.targets[t]] = {iloc % inst.d, jloc % inst.d};
      iloc /= inst.d;
      jloc /= inst.d;
    }
    if (record_indices) out.indices.push_back(pairs);
  }

  for (std::size_t q = 0; q < inst.n; ++q)
    z *= inst.povm[q].f[pairs[q].first * inst.d + pairs[q].second];
  out.z = z;
  out.x = z.real();
  return out;
}

/// Exact sum over every index-pair chain; the independent check on the
/// sampler (and on the dense contraction it estimates).
inline cplx exhaustive_path_sum(const SimInstance& inst, double path_cap = 1e7) {
  double nominal = 1.0;
  for (std::size_t q = 0; q < inst.n; ++q) nominal *= double(inst.d) * double(inst.d);
  for (const LocalSuperop& op : inst.ops)
    nominal *= double(op.local_dim) * double(op.local_dim);
  if (nominal > path_cap)
    throw PathSpaceTooLarge("path count " + std::to_string(nominal) + " exceeds the cap");

  cplx total{0.0, 0.0};
  std::vector<std::pair<std::size_t, std::size_t>> pairs(inst.n);

  struct Rec {
    const SimInstance& inst;
    cplx& total;
    std::vector<std::pair<std::size_t, std::size_t>>& pairs;

    void steps(std::size_t step, cplx weight) {
      if (weight == cplx{0.0, 0.0}) return;  // all continuations contribute 0
      if (step == inst.ops.size()) {
        cplx w = weight;
        for (std::size_t q = 0; q < inst.n; ++q)
          w *= inst.povm[q].f[pairs[q].first * inst.d + pairs[q].second];
        total += w;
        return;
      }
      const LocalSuperop& op = inst.ops[step];
      const std::size_t ldim = op.local_dim;
      std::size_t kloc = 0, lloc = 0;
      for (std::size_t t : op.targets) {
        kloc = kloc * inst.d + pairs[t].first;
        lloc = lloc * inst.d + pairs[t].second;
      }
      const std::size_t col = kloc * ldim + lloc;
      const auto saved = pairs;
      for (std::size_t row = 0; row < ldim * ldim; ++row) {
        const cplx entry = op.op.m(row, col);
        if (entry == cplx{0.0, 0.0}) continue;
        std::size_t iloc = row / ldim, jloc = row % ldim;
        for (std::size_t t = op.targets.size(); t-- > 0;) {
          pairs[op.targets[t]] = {iloc % inst.d, jloc % inst.d};
          iloc /= inst.d;
          jloc /= inst.d;
        }
        steps(step + 1, weight * entry);
        pairs = saved;
      }
    }

    void initial(std::size_t q, cplx weight) {
      if (q == inst.n) {
        steps(0, weight);
        return;
      }
      for (std::size_t flat = 0; flat < inst.d * inst.d; ++flat) {
        const cplx entry = inst.q0[q].q.data()[flat];
        if (entry == cplx{0.0, 0.0}) continue;
        pairs[q] = {flat / inst.d, flat % inst.d};
        initial(q + 1, weight * entry);
      }
    }
  } rec{inst, total, pairs};

  rec.initial(0, cplx{1.0, 0.0});
  return total;
}

struct EstimateReport {
  double estimate = 0.0;
  double imag_mean = 0.0;  // diagnostic; the estimator returns the real part
  std::size_t samples_used = 0;
  bool auto_budgeted = true;
  double epsilon = 0.0;
  double delta = 0.0;
  double n_t = 1.0;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  double elapsed_seconds = 0.0;
};

inline std::size_t hoeffding_samples(double epsilon, double delta, double n_t) {
  if (epsilon <= 0.0 || delta <= 0.0 || delta >= 1.0)
    throw InvalidArgument("need epsilon > 0 and 0 < delta < 1");
  return static_cast<std::size_t>(
      std::ceil(2.0 / (epsilon * epsilon) * n_t * n_t * std::log(2.0 / delta)));
}

/// Mean of the sampled real parts over the Hoeffding budget
/// s = ceil(2 eps^-2 N_T^2 ln(2/delta)). Deterministic for a fixed
/// (seed, workers): lanes get pre-assigned path counts and their own
/// substreams, and partial sums merge in lane order.
inline EstimateReport estimate_born(const SimInstance& inst, double epsilon, double delta,
                                    std::uint64_t seed, std::size_t workers = 1,
                                    std::size_t sample_cap = 100000000,
                                    std::size_t samples_override = 0) {
  const auto t0 = std::chrono::steady_clock::now();
  const NegativityBudget budget = negativity_budget(inst);
  EstimateReport rep;
  rep.epsilon = epsilon;
  rep.delta = delta;
  rep.n_t = budget.n_t;
  rep.seed = seed;
  rep.workers = std::max<std::size_t>(workers, 1);

  std::size_t s = samples_override;
  rep.auto_budgeted = samples_override == 0;
  if (rep.auto_budgeted) {
    s = hoeffding_samples(epsilon, delta, budget.n_t);
    if (s > sample_cap)
      throw BudgetExceeded("required " + std::to_string(s) + " samples (N_T = " +
                           std::to_string(budget.n_t) + "), cap is " +
                           std::to_string(sample_cap));
  }
  rep.samples_used = s;

  const std::size_t lanes = std::min(rep.workers, std::max<std::size_t>(s, 1));
  std::vector<double> lane_x(lanes, 0.0), lane_im(lanes, 0.0);
  auto run_lane = [&](std::size_t lane) {
    std::size_t count = s / lanes + (lane < s % lanes ? 1 : 0);
    rng_t rng = make_rng(seed, lane + 1);
    double sx = 0.0, sim = 0.0;
    for (std::size_t it = 0; it < count; ++it) {
      const PathSample p = sample_path(inst, rng, /*record_indices=*/false);
      sx += p.x;
      sim += p.z.imag();
    }
    lane_x[lane] = sx;
    lane_im[lane] = sim;
  };
  if (lanes == 1) {
    run_lane(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t lane = 0; lane < lanes; ++lane) pool.emplace_back(run_lane, lane);
    for (std::thread& t : pool) t.join();
  }
  double sx = 0.0, sim = 0.0;
  for (std::size_t lane = 0; lane < lanes; ++lane) {
    sx += lane_x[lane];
    sim += lane_im[lane];
  }
  rep.estimate = s ? sx / double(s) : 0.0;
  rep.imag_mean = s ? sim / double(s) : 0.0;
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace kdq
