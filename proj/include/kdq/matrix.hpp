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

// Dense complex matrices, pure states and density matrices. Everything is
// stored row-major. Sizes on the target workloads stay below a few hundred
// per side, so the plain triple loop is fast enough and easy to audit;
// Eigen is pulled in only for the Hermitian eigensolver.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "kdq/errors.hpp"
#include "kdq/indexing.hpp"

namespace kdq {

/// Global cap on the Hilbert-space dimension D of newly constructed states
/// and bases. Superoperators are D^2 per side and are allowed up to cap^2.
inline std::atomic<std::size_t>& dim_cap_ref() {
  static std::atomic<std::size_t> cap{128};
  return cap;
}
inline std::size_t dim_cap() { return dim_cap_ref().load(); }
inline void set_dim_cap(std::size_t cap) { dim_cap_ref().store(cap); }

inline void check_dim_cap(std::size_t dim) {
  if (dim > dim_cap())
    throw DimCapExceeded("dimension " + std::to_string(dim) + " exceeds cap " +
                         std::to_string(dim_cap()));
}

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {}
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
      throw InvalidArgument("entry count does not match rows x cols");
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<cplx>& data() { return data_; }
  const std::vector<cplx>& data() const { return data_; }

  bool all_finite() const {
    for (const cplx& z : data_)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

inline void check_finite(const ComplexMatrix& m) {
  if (!m.all_finite()) throw InvalidArgument("matrix contains non-finite entries");
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape mismatch");
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

inline ComplexMatrix operator*(cplx s, const ComplexMatrix& a) {
  ComplexMatrix c = a;
  for (cplx& z : c.data()) z *= s;
  return c;
}

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("matrix sum shape mismatch");
  ComplexMatrix c = a;
  for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] += b.data()[i];
  return c;
}

inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("matrix difference shape mismatch");
  ComplexMatrix c = a;
  for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] -= b.data()[i];
  return c;
}

inline ComplexMatrix dagger(const ComplexMatrix& a) {
  ComplexMatrix c(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = std::conj(a(i, j));
  return c;
}

inline ComplexMatrix transpose(const ComplexMatrix& a) {
  ComplexMatrix c(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = a(i, j);
  return c;
}

inline ComplexMatrix conjugate(const ComplexMatrix& a) {
  ComplexMatrix c = a;
  for (cplx& z : c.data()) z = std::conj(z);
  return c;
}

inline cplx trace(const ComplexMatrix& a) {
  if (!a.square()) throw DimensionMismatch("trace of a non-square matrix");
  cplx t = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

inline double max_abs(const ComplexMatrix& a) {
  double m = 0.0;
  for (const cplx& z : a.data()) m = std::max(m, std::abs(z));
  return m;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("comparing matrices of different shapes");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

inline bool is_unitary(const ComplexMatrix& u, double tol = 1e-12) {
  if (!u.square()) return false;
  return max_abs_diff(dagger(u) * u, ComplexMatrix::identity(u.rows())) <= tol;
}

inline bool is_hermitian(const ComplexMatrix& m, double tol = 1e-12) {
  if (!m.square()) return false;
  return max_abs_diff(m, dagger(m)) <= tol;
}

inline std::vector<cplx> mat_vec(const ComplexMatrix& a, const std::vector<cplx>& v) {
  if (a.cols() != v.size()) throw DimensionMismatch("matrix-vector shape mismatch");
  std::vector<cplx> r(a.rows(), cplx{0.0, 0.0});
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r[i] += a(i, j) * v[j];
  return r;
}

/// Kronecker product. The result may be superoperator-sized, so the guard is
/// against cap^2 rather than the state-space cap.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t cap = dim_cap();
  if (a.rows() * b.rows() > cap * cap || a.cols() * b.cols() > cap * cap)
    throw DimCapExceeded("kron result exceeds configured dimension cap");
  ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx{0.0, 0.0}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return c;
}

/// Normalized state vector. The constructor enforces unit norm; use
/// PureState::normalized to build from an arbitrary non-zero vector.
struct PureState {
  std::vector<cplx> amp;

  PureState() = default;
  explicit PureState(std::vector<cplx> amplitudes, double tol = 1e-12) : amp(std::move(amplitudes)) {
    check_dim_cap(amp.size());
    double n2 = 0.0;
    for (const cplx& z : amp) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw InvalidArgument("state amplitude is not finite");
      n2 += std::norm(z);
    }
    if (std::abs(std::sqrt(n2) - 1.0) > tol)
      throw InvalidArgument("state vector is not normalized");
  }

  std::size_t dim() const { return amp.size(); }

  static PureState basis(std::size_t dim, std::size_t k) {
    if (k >= dim) throw InvalidArgument("basis index out of range");
    std::vector<cplx> a(dim, cplx{0.0, 0.0});
    a[k] = 1.0;
    return PureState(std::move(a));
  }

  static PureState normalized(std::vector<cplx> a) {
    double n2 = 0.0;
    for (const cplx& z : a) n2 += std::norm(z);
    if (n2 <= 0.0) throw InvalidArgument("cannot normalize the zero vector");
    const double inv = 1.0 / std::sqrt(n2);
    for (cplx& z : a) z *= inv;
    return PureState(std::move(a));
  }
};

inline cplx inner_product(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("inner product of different dimensions");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a.amp[i]) * b.amp[i];
  return s;
}

inline PureState apply(const ComplexMatrix& u, const PureState& s) {
  return PureState(mat_vec(u, s.amp), 1e-9);
}

inline ComplexMatrix outer(const PureState& a, const PureState& b) {
  ComplexMatrix m(a.dim(), b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) m(i, j) = a.amp[i] * std::conj(b.amp[j]);
  return m;
}

namespace detail {

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(static_cast<long>(i), static_cast<long>(j)) = m(i, j);
  return e;
}

}  // namespace detail

/// Eigenvalues (ascending) and orthonormal eigenvectors (matrix columns) of a
/// Hermitian matrix.
inline std::pair<std::vector<double>, ComplexMatrix> hermitian_eigensystem(const ComplexMatrix& m) {
  if (!m.square()) throw DimensionMismatch("eigensystem of a non-square matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(detail::to_eigen(m));
  if (solver.info() != Eigen::Success) throw InvalidArgument("hermitian eigensolver failed");
  const std::size_t n = m.rows();
  std::vector<double> vals(n);
  ComplexMatrix vecs(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    vals[i] = solver.eigenvalues()(static_cast<long>(i));
    for (std::size_t r = 0; r < n; ++r)
      vecs(r, i) = solver.eigenvectors()(static_cast<long>(r), static_cast<long>(i));
  }
  return {std::move(vals), std::move(vecs)};
}

/// Trace-one positive semidefinite Hermitian operator. Validation tolerances:
/// Hermiticity and trace within 1e-12, eigenvalues above -1e-10.
struct DensityMatrix {
  ComplexMatrix mat;

  DensityMatrix() = default;

  std::size_t dim() const { return mat.rows(); }

  static DensityMatrix from_matrix(ComplexMatrix m, double herm_tol = 1e-12,
                                   double trace_tol = 1e-12, double psd_tol = 1e-10) {
    check_dim_cap(m.rows());
    check_finite(m);
    if (!m.square()) throw InvalidArgument("density matrix must be square");
    if (!is_hermitian(m, herm_tol)) throw InvalidArgument("density matrix is not Hermitian");
    if (std::abs(trace(m) - cplx{1.0, 0.0}) > trace_tol)
      throw InvalidArgument("density matrix trace differs from 1");
    auto [vals, vecs] = hermitian_eigensystem(m);
    (void)vecs;
    for (double v : vals)
      if (v < -psd_tol) throw InvalidArgument("density matrix has a negative eigenvalue");
    DensityMatrix rho;
    rho.mat = std::move(m);
    return rho;
  }

  static DensityMatrix pure(const PureState& psi) {
    DensityMatrix rho;
    rho.mat = outer(psi, psi);
    return rho;
  }

  static DensityMatrix maximally_mixed(std::size_t dim) {
    check_dim_cap(dim);
    DensityMatrix rho;
    rho.mat = cplx{1.0 / static_cast<double>(dim), 0.0} * ComplexMatrix::identity(dim);
    return rho;
  }
};

}  // namespace kdq
