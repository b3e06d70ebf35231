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

#include <stdexcept>
#include <string>

namespace kdq {

// Stable error identifiers. The CLI maps these onto exit codes and
// machine-readable error payloads, so names and values must not be reordered.
enum class errc {
  dimension_mismatch = 1,
  dim_cap_exceeded,
  not_informationally_complete,
  not_a_channel,
  not_mub,
  even_dimension,
  wrong_basis_family,
  non_product_basis,
  zero_distribution,
  path_space_too_large,
  budget_exceeded,
  denominator_too_small,
  invalid_argument,
  io_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::dim_cap_exceeded: return "DimCapExceeded";
    case errc::not_informationally_complete: return "NotInformationallyComplete";
    case errc::not_a_channel: return "NotAChannel";
    case errc::not_mub: return "NotMUB";
    case errc::even_dimension: return "EvenDimension";
    case errc::wrong_basis_family: return "WrongBasisFamily";
    case errc::non_product_basis: return "NonProductBasis";
    case errc::zero_distribution: return "ZeroDistribution";
    case errc::path_space_too_large: return "PathSpaceTooLarge";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::denominator_too_small: return "DenominatorTooSmall";
    case errc::invalid_argument: return "InvalidArgument";
    case errc::io_error: return "IoError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }
  const char* name() const noexcept { return errc_name(code_); }

 private:
  errc code_;
};

#define KDQ_DEFINE_ERROR(TYPE, CODE)                                     \
  struct TYPE : Error {                                                  \
    explicit TYPE(const std::string& what) : Error(errc::CODE, what) {} \
  }

KDQ_DEFINE_ERROR(DimensionMismatch, dimension_mismatch);
KDQ_DEFINE_ERROR(DimCapExceeded, dim_cap_exceeded);
KDQ_DEFINE_ERROR(NotInformationallyComplete, not_informationally_complete);
KDQ_DEFINE_ERROR(NotAChannel, not_a_channel);
KDQ_DEFINE_ERROR(NotMUB, not_mub);
KDQ_DEFINE_ERROR(EvenDimension, even_dimension);
KDQ_DEFINE_ERROR(WrongBasisFamily, wrong_basis_family);
KDQ_DEFINE_ERROR(NonProductBasis, non_product_basis);
KDQ_DEFINE_ERROR(ZeroDistribution, zero_distribution);
KDQ_DEFINE_ERROR(PathSpaceTooLarge, path_space_too_large);
KDQ_DEFINE_ERROR(BudgetExceeded, budget_exceeded);
KDQ_DEFINE_ERROR(DenominatorTooSmall, denominator_too_small);
KDQ_DEFINE_ERROR(InvalidArgument, invalid_argument);
KDQ_DEFINE_ERROR(IoError, io_error);

#undef KDQ_DEFINE_ERROR

}  // namespace kdq
