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

#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "kdq/errors.hpp"

namespace kdq {

using cplx = std::complex<double>;

/// d^n with overflow detection.
inline std::size_t pow_sz(std::size_t d, std::size_t n) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (r > SIZE_MAX / d) throw DimCapExceeded("dimension d^n overflows size_t");
    r *= d;
  }
  return r;
}

/// omega^k for omega = exp(2*pi*i/d). The exponent is reduced mod d before
/// evaluation so large accumulated exponents do not lose precision.
inline cplx root_of_unity(std::size_t d, long long k) {
  long long m = k % static_cast<long long>(d);
  if (m < 0) m += static_cast<long long>(d);
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(d));
}

/// Index vector in Z_d^n, big-endian: digits[0] is the most significant digit
/// of the flattened index. Matches the ordering of tensor (Kronecker) factors.
struct QuditIndexVector {
  std::size_t d = 2;
  std::vector<std::size_t> digits;

  std::size_t n() const { return digits.size(); }

  static QuditIndexVector zero(std::size_t d, std::size_t n) {
    return {d, std::vector<std::size_t>(n, 0)};
  }

  static QuditIndexVector from_flat(std::size_t flat, std::size_t d, std::size_t n) {
    QuditIndexVector v{d, std::vector<std::size_t>(n, 0)};
    for (std::size_t k = n; k-- > 0;) {
      v.digits[k] = flat % d;
      flat /= d;
    }
    return v;
  }

  std::size_t flat() const {
    std::size_t f = 0;
    for (std::size_t x : digits) f = f * d + x;
    return f;
  }

  bool operator==(const QuditIndexVector& o) const { return d == o.d && digits == o.digits; }
};

inline void check_same_space(const QuditIndexVector& a, const QuditIndexVector& b) {
  if (a.d != b.d || a.n() != b.n())
    throw DimensionMismatch("index vectors live in different Z_d^n spaces");
}

/// a . b mod d
inline std::size_t dot_mod(const QuditIndexVector& a, const QuditIndexVector& b) {
  check_same_space(a, b);
  std::size_t s = 0;
  for (std::size_t k = 0; k < a.n(); ++k) s = (s + a.digits[k] * b.digits[k]) % a.d;
  return s;
}

/// a + b, entry-wise mod d
inline QuditIndexVector add_mod(const QuditIndexVector& a, const QuditIndexVector& b) {
  check_same_space(a, b);
  QuditIndexVector r = a;
  for (std::size_t k = 0; k < a.n(); ++k) r.digits[k] = (a.digits[k] + b.digits[k]) % a.d;
  return r;
}

/// -a, entry-wise mod d
inline QuditIndexVector neg_mod(const QuditIndexVector& a) {
  QuditIndexVector r = a;
  for (std::size_t k = 0; k < a.n(); ++k) r.digits[k] = (a.d - a.digits[k]) % a.d;
  return r;
}

inline QuditIndexVector sub_mod(const QuditIndexVector& a, const QuditIndexVector& b) {
  return add_mod(a, neg_mod(b));
}

}  // namespace kdq
