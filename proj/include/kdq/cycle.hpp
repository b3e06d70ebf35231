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

// Simulated measurement of quasiprobabilities and superoperator elements via
// cycle tests. A cycle test is a Hadamard test around a controlled cyclic
// register shift: with registers (phi_1, ..., phi_k) the ancilla's outcome
// probability encodes the Bargmann invariant
// <phi_1|phi_2><phi_2|phi_3> ... <phi_k|phi_1>, real part at s = 0 and
// imaginary part at s = 1.
//
// The default path computes the outcome probability in closed form and draws
// shots binomially. The full statevector route (Hadamard, ancilla phase,
// controlled-SWAP cascade, Hadamard) is also implemented; keeping both
// catches convention mistakes in the cycle direction.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "kdq/basis.hpp"
#include "kdq/matrix.hpp"
#include "kdq/random.hpp"

namespace kdq {

/// Cyclic product of overlaps <phi_1|phi_2> ... <phi_k|phi_1>. Invariant
/// under cyclic rotation of the list; conjugates under reversal.
inline cplx bargmann(const std::vector<PureState>& states) {
  if (states.size() < 2) throw InvalidArgument("a cycle needs at least two states");
  cplx prod{1.0, 0.0};
  for (std::size_t t = 0; t < states.size(); ++t)
    prod *= inner_product(states[t], states[(t + 1) % states.size()]);
  return prod;
}

/// Exact ancilla outcome probability p(0) = (1 + Re(e^{-i s pi/2} Delta)) / 2.
/// At s = 1 the factor -i turns the real part into +Im(Delta).
inline double cycle_p0(const std::vector<PureState>& registers, int s) {
  if (s != 0 && s != 1) throw InvalidArgument("phase flag s must be 0 or 1");
  const cplx delta = bargmann(registers);
  const cplx rotated = (s == 0) ? delta : cplx{0.0, -1.0} * delta;
  return 0.5 * (1.0 + rotated.real());
}

/// Statevector cross-check: builds ancilla + registers explicitly, applies
/// the controlled cyclic shift as a cascade of controlled register swaps and
/// returns the ancilla p(0). Register space capped at `cap` amplitudes.
inline double cycle_p0_statevector(const std::vector<PureState>& registers, int s,
                                   std::size_t cap = 256) {
  if (s != 0 && s != 1) throw InvalidArgument("phase flag s must be 0 or 1");
  const std::size_t k = registers.size();
  if (k < 2) throw InvalidArgument("a cycle needs at least two states");
  const std::size_t d = registers[0].dim();
  std::size_t dim = 1;
  for (const PureState& r : registers) {
    if (r.dim() != d) throw DimensionMismatch("cycle registers differ in dimension");
    if (dim > cap / d) throw DimCapExceeded("statevector register space exceeds the cap");
    dim *= d;
  }

  // Register product state; index digits are big-endian, register 0 first.
  std::vector<cplx> phi(dim, cplx{1.0, 0.0});
  for (std::size_t idx = 0; idx < dim; ++idx) {
    std::size_t rest = idx;
    for (std::size_t r = k; r-- > 0;) {
      phi[idx] *= registers[r].amp[rest % d];
      rest /= d;
    }
  }

  // Ancilla Hadamard on |0>: both branches hold phi / sqrt(2).
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<cplx> branch0(phi), branch1(phi);
  for (cplx& z : branch0) z *= inv_sqrt2;
  for (cplx& z : branch1) z *= inv_sqrt2;

  // Controlled cyclic shift on the |1> branch: swapping register contents
  // (r, r+1) for r = 0 .. k-2 sends (phi_1, ..., phi_k) to
  // (phi_2, ..., phi_k, phi_1).
  std::vector<std::size_t> digits(k);
  for (std::size_t r = 0; r + 1 < k; ++r) {
    std::vector<cplx> next(dim);
    for (std::size_t idx = 0; idx < dim; ++idx) {
      std::size_t rest = idx;
      for (std::size_t t = k; t-- > 0;) {
        digits[t] = rest % d;
        rest /= d;
      }
      std::swap(digits[r], digits[r + 1]);
      std::size_t swapped = 0;
      for (std::size_t t = 0; t < k; ++t) swapped = swapped * d + digits[t];
      next[swapped] = branch1[idx];
    }
    branch1 = std::move(next);
  }

  // Ancilla phase, pinned so that s = 1 estimates +Im.
  if (s == 1)
    for (cplx& z : branch1) z *= cplx{0.0, -1.0};

  // Final ancilla Hadamard; p(0) is the mass of branch0 + branch1.
  double p0 = 0.0;
  for (std::size_t idx = 0; idx < dim; ++idx) p0 += std::norm(inv_sqrt2 * (branch0[idx] + branch1[idx]));
  return p0;
}

struct CycleExperiment {
  std::vector<PureState> registers;
  int s = 0;
  std::size_t shots = 1;
  std::uint64_t seed = 0;
};

struct ShotReport {
  std::size_t zeros = 0;
  std::size_t ones = 0;
  double estimate = 0.0;   // 2 zeros / shots - 1
  double std_error = 0.0;  // 2 sqrt(p(1-p)/shots) at the empirical p
};

namespace detail {

inline std::size_t binomial_draw(std::size_t trials, double p, rng_t& rng) {
  if (p <= 0.0) return 0;
  if (p >= 1.0) return trials;
  std::binomial_distribution<std::size_t> dist(trials, p);
  return dist(rng);
}

inline ShotReport shot_report(std::size_t zeros, std::size_t shots) {
  ShotReport rep;
  rep.zeros = zeros;
  rep.ones = shots - zeros;
  const double p = double(zeros) / double(shots);
  rep.estimate = 2.0 * p - 1.0;
  rep.std_error = 2.0 * std::sqrt(std::max(p * (1.0 - p), 0.0) / double(shots));
  return rep;
}

}  // namespace detail

inline ShotReport run_cycle_test(const CycleExperiment& exp) {
  if (exp.shots < 1) throw InvalidArgument("need at least one shot");
  rng_t rng = make_rng(exp.seed);
  const double p0 = cycle_p0(exp.registers, exp.s);
  return detail::shot_report(detail::binomial_draw(exp.shots, p0, rng), exp.shots);
}

struct ComplexEstimate {
  cplx value{0.0, 0.0};
  double stderr_re = 0.0;
  double stderr_im = 0.0;
};

namespace detail {

// Mixture weights of a state: eigenvalues above 1e-12, renormalized.
inline std::pair<std::vector<double>, ComplexMatrix> mixture_of(const DensityMatrix& rho) {
  auto [vals, vecs] = hermitian_eigensystem(rho.mat);
  double total = 0.0;
  for (double& v : vals) {
    if (v < 1e-12) v = 0.0;
    total += v;
  }
  for (double& v : vals) v /= total;
  return {std::move(vals), std::move(vecs)};
}

// Draws a per-component shot allocation (multinomial via sequential binomial
// splitting), then pools binomial outcomes: a fresh mixture component per
// shot, grouped.
inline std::size_t mixture_zeros(const std::vector<double>& weights,
                                 const std::vector<double>& p0s, std::size_t shots, rng_t& rng) {
  std::size_t zeros = 0, remaining = shots;
  double wleft = 1.0;
  for (std::size_t v = 0; v < weights.size() && remaining > 0; ++v) {
    if (weights[v] <= 0.0) continue;
    std::size_t nv;
    if (wleft <= weights[v]) {
      nv = remaining;
    } else {
      nv = binomial_draw(remaining, std::min(1.0, weights[v] / wleft), rng);
    }
    zeros += binomial_draw(nv, p0s[v], rng);
    remaining -= nv;
    wleft -= weights[v];
  }
  return zeros;
}

}  // namespace detail

/// Simulated cycle-test estimate of Q_ij(rho). Register order (rho eigenstate,
/// b_j, a_i) makes the cycle product equal <psi|b_j><b_j|a_i><a_i|psi>, i.e.
/// the quasiprobability itself; s = 0 and s = 1 runs give its real and
/// imaginary parts from `shots` shots each. Mixed states draw an eigenvector
/// per shot with eigenvalue weights.
inline ComplexEstimate estimate_quasiprobability(const DensityMatrix& rho, std::size_t i,
                                                 std::size_t j, const BasisPair& bp,
                                                 std::size_t shots, std::uint64_t seed) {
  const std::size_t d = bp.dim();
  if (rho.dim() != d) throw DimensionMismatch("state and basis pair dimensions differ");
  if (i >= d || j >= d) throw InvalidArgument("quasiprobability index out of range");
  if (shots < 1) throw InvalidArgument("need at least one shot");

  auto [weights, vecs] = detail::mixture_of(rho);
  std::vector<cplx> bcol(d);
  for (std::size_t r = 0; r < d; ++r) bcol[r] = bp.v(r, j);
  const PureState bj(std::move(bcol), 1e-9);
  const PureState ai = PureState::basis(d, i);

  rng_t rng = make_rng(seed);
  ComplexEstimate est;
  for (int s = 0; s <= 1; ++s) {
    std::vector<double> p0s(weights.size(), 0.0);
    for (std::size_t v = 0; v < weights.size(); ++v) {
      if (weights[v] <= 0.0) continue;
      std::vector<cplx> col(d);
      for (std::size_t r = 0; r < d; ++r) col[r] = vecs(r, v);
      p0s[v] = cycle_p0({PureState(std::move(col), 1e-9), bj, ai}, s);
    }
    const ShotReport rep =
        detail::shot_report(detail::mixture_zeros(weights, p0s, shots, rng), shots);
    if (s == 0) {
      est.value += rep.estimate;
      est.stderr_re = rep.std_error;
    } else {
      est.value += cplx{0.0, 1.0} * rep.estimate;
      est.stderr_im = rep.std_error;
    }
  }
  return est;
}

/// Single-s shot run of the quasiprobability cycle; estimates Re (s = 0) or
/// Im (s = 1) of Q_ij(rho).
inline ShotReport run_quasiprob_cycle(const DensityMatrix& rho, std::size_t i, std::size_t j,
                                      const BasisPair& bp, int s, std::size_t shots,
                                      std::uint64_t seed) {
  const std::size_t d = bp.dim();
  if (rho.dim() != d) throw DimensionMismatch("state and basis pair dimensions differ");
  if (i >= d || j >= d) throw InvalidArgument("quasiprobability index out of range");
  auto [weights, vecs] = detail::mixture_of(rho);
  std::vector<cplx> bcol(d);
  for (std::size_t r = 0; r < d; ++r) bcol[r] = bp.v(r, j);
  const PureState bj(std::move(bcol), 1e-9);
  const PureState ai = PureState::basis(d, i);
  std::vector<double> p0s(weights.size(), 0.0);
  for (std::size_t v = 0; v < weights.size(); ++v) {
    if (weights[v] <= 0.0) continue;
    std::vector<cplx> col(d);
    for (std::size_t r = 0; r < d; ++r) col[r] = vecs(r, v);
    p0s[v] = cycle_p0({PureState(std::move(col), 1e-9), bj, ai}, s);
  }
  rng_t rng = make_rng(seed);
  return detail::shot_report(detail::mixture_zeros(weights, p0s, shots, rng), shots);
}

/// Single-s shot run of the 4-state cycle; estimates Re or Im of the scaled
/// element |<b_l|a_k>|^2 (E_U)_{ij,kl}, with no denominator division.
inline ShotReport run_superop_cycle(const ComplexMatrix& u, std::size_t i, std::size_t j,
                                    std::size_t k, std::size_t l, const BasisPair& bp, int s,
                                    std::size_t shots, std::uint64_t seed) {
  const std::size_t d = bp.dim();
  if (i >= d || j >= d || k >= d || l >= d)
    throw InvalidArgument("superoperator element index out of range");
  std::vector<cplx> bl(d), bj(d);
  for (std::size_t r = 0; r < d; ++r) {
    bl[r] = bp.v(r, l);
    bj[r] = bp.v(r, j);
  }
  const std::vector<PureState> regs{PureState::basis(d, i), apply(u, PureState::basis(d, k)),
                                    apply(u, PureState(std::move(bl), 1e-9)),
                                    PureState(std::move(bj), 1e-9)};
  rng_t rng = make_rng(seed);
  return detail::shot_report(detail::binomial_draw(shots, cycle_p0(regs, s), rng), shots);
}

/// Simulated SWAP test for |<a|b>|^2: p(0) = (1 + |<a|b>|^2) / 2.
inline ShotReport swap_test_overlap_sq(const PureState& a, const PureState& b, std::size_t shots,
                                       rng_t& rng) {
  const double p0 = 0.5 * (1.0 + std::norm(inner_product(a, b)));
  return detail::shot_report(detail::binomial_draw(shots, p0, rng), shots);
}

/// Simulated 4-state cycle test for a unitary's superoperator element
/// ((i,j),(k,l)). Registers (a_i, U a_k, U b_l, b_j) give the Bargmann
/// invariant |<b_l|a_k>|^2 (E_U)_{ij,kl}; the denominator is divided out
/// exactly, or estimated with a simulated SWAP test when
/// `estimate_denominator` is set.
inline ComplexEstimate estimate_superop_element(const ComplexMatrix& u, std::size_t i,
                                                std::size_t j, std::size_t k, std::size_t l,
                                                const BasisPair& bp, std::size_t shots,
                                                std::uint64_t seed,
                                                bool estimate_denominator = false,
                                                double zero_tol = 1e-10) {
  const std::size_t d = bp.dim();
  if (u.rows() != d || u.cols() != d)
    throw DimensionMismatch("unitary and basis pair dimensions differ");
  if (i >= d || j >= d || k >= d || l >= d)
    throw InvalidArgument("superoperator element index out of range");
  if (shots < 1) throw InvalidArgument("need at least one shot");
  const double overlap_sq = std::norm(bp.v(k, l));
  if (overlap_sq <= zero_tol * zero_tol)
    throw NotInformationallyComplete("overlap <b_l|a_k> vanishes");

  const PureState ai = PureState::basis(d, i);
  const PureState ak = PureState::basis(d, k);
  std::vector<cplx> bl(d), bj(d);
  for (std::size_t r = 0; r < d; ++r) {
    bl[r] = bp.v(r, l);
    bj[r] = bp.v(r, j);
  }
  const PureState bl_state(std::move(bl), 1e-9);
  const std::vector<PureState> regs{ai, apply(u, ak), apply(u, bl_state),
                                    PureState(std::move(bj), 1e-9)};

  rng_t rng = make_rng(seed);
  cplx numerator{0.0, 0.0};
  double se_re = 0.0, se_im = 0.0;
  for (int s = 0; s <= 1; ++s) {
    const ShotReport rep =
        detail::shot_report(detail::binomial_draw(shots, cycle_p0(regs, s), rng), shots);
    if (s == 0) {
      numerator += rep.estimate;
      se_re = rep.std_error;
    } else {
      numerator += cplx{0.0, 1.0} * rep.estimate;
      se_im = rep.std_error;
    }
  }

  double denom = overlap_sq;
  if (estimate_denominator) {
    const ShotReport rep = swap_test_overlap_sq(ak, bl_state, shots, rng);
    if (rep.estimate < 10.0 * rep.std_error || rep.estimate <= 0.0)
      throw DenominatorTooSmall("estimated |<b_l|a_k>|^2 is statistically indistinct from 0");
    denom = rep.estimate;
  }

  ComplexEstimate est;
  est.value = numerator / denom;
  est.stderr_re = se_re / denom;
  est.stderr_im = se_im / denom;
  return est;
}

}  // namespace kdq
