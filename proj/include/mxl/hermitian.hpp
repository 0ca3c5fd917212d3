// Copyright 2026 The mxl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Dense complex Hermitian algebra: matrix functions through the Hermitian
// eigendecomposition, trace and spectral norms, masking, and block-diagonal
// composition.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <utility>
#include <vector>

#include "mxl/errors.hpp"

namespace mxl {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kPsdTolerance = 1e-10;
inline constexpr double kLogFloor = 1e-14;

namespace detail {

// Largest |A - A^H| entry, scaled by max(1, max |A_ij|).
inline double hermitian_defect(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - a.adjoint()).cwiseAbs().maxCoeff() / scale;
}

inline ComplexMatrix symmetrized(const ComplexMatrix& a) {
  return (a + a.adjoint()) * 0.5;
}

}  // namespace detail

/// Square complex matrix equal to its conjugate transpose.
///
/// Construction from an arbitrary matrix symmetrizes it when the defect
/// exceeds kHermitianTolerance and records that in repaired(); strict()
/// rejects such input instead.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  explicit HermitianMatrix(Index dim) : m_(ComplexMatrix::Zero(dim, dim)) {}

  explicit HermitianMatrix(ComplexMatrix m) {
    if (m.rows() != m.cols()) throw InvalidInput("HermitianMatrix: matrix is not square");
    if (!m.allFinite()) throw InvalidInput("HermitianMatrix: non-finite entry");
    repaired_ = detail::hermitian_defect(m) > kHermitianTolerance;
    // Always symmetrize; below tolerance this only removes roundoff.
    m_ = detail::symmetrized(m);
  }

  static HermitianMatrix strict(ComplexMatrix m) {
    if (m.rows() != m.cols()) throw InvalidInput("HermitianMatrix: matrix is not square");
    if (detail::hermitian_defect(m) > kHermitianTolerance) {
      throw InvalidInput("HermitianMatrix: input is not Hermitian within tolerance");
    }
    return HermitianMatrix(std::move(m));
  }

  static HermitianMatrix zero(Index dim) { return HermitianMatrix(dim); }

  static HermitianMatrix identity(Index dim) {
    return from_exact(ComplexMatrix::Identity(dim, dim));
  }

  static HermitianMatrix diagonal(const RealVector& d) {
    return from_exact(d.cast<Complex>().asDiagonal());
  }

  // Caller guarantees m is exactly Hermitian (e.g. built as A + A^H).
  static HermitianMatrix from_exact(ComplexMatrix m) {
    HermitianMatrix h;
    h.m_ = std::move(m);
    return h;
  }

  Index dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  bool repaired() const { return repaired_; }
  Complex operator()(Index i, Index j) const { return m_(i, j); }
  double trace() const { return m_.diagonal().real().sum(); }

  HermitianMatrix& operator+=(const HermitianMatrix& o) {
    check_same_dim(o);
    m_ += o.m_;
    return *this;
  }
  HermitianMatrix& operator-=(const HermitianMatrix& o) {
    check_same_dim(o);
    m_ -= o.m_;
    return *this;
  }
  HermitianMatrix& operator*=(double s) {
    m_ *= s;
    return *this;
  }

  friend HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) { return a += b; }
  friend HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b) { return a -= b; }
  friend HermitianMatrix operator*(double s, HermitianMatrix a) { return a *= s; }
  friend HermitianMatrix operator*(HermitianMatrix a, double s) { return a *= s; }

 private:
  void check_same_dim(const HermitianMatrix& o) const {
    if (o.dim() != dim()) throw InvalidInput("HermitianMatrix: dimension mismatch");
  }

  ComplexMatrix m_;
  bool repaired_ = false;
};

/// Eigendecomposition H = U diag(values) U^H, eigenvalues ascending.
struct Spectrum {
  RealVector values;
  ComplexMatrix vectors;

  Index dim() const { return values.size(); }
  double max() const { return values.size() ? values.maxCoeff() : -INFINITY; }
  double min() const { return values.size() ? values.minCoeff() : INFINITY; }
};

inline Spectrum eigen(const HermitianMatrix& h) {
  if (h.dim() == 0) return {};
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    throw InvalidInput("eigen: Hermitian eigendecomposition failed");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

inline RealVector eigenvalues(const HermitianMatrix& h) {
  if (h.dim() == 0) return {};
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw InvalidInput("eigenvalues: Hermitian eigendecomposition failed");
  }
  return solver.eigenvalues();
}

/// U diag(d) U^H, exactly Hermitian.
inline HermitianMatrix reconstruct(const ComplexMatrix& u, const RealVector& d) {
  ComplexMatrix m = u * d.cast<Complex>().asDiagonal() * u.adjoint();
  return HermitianMatrix::from_exact(detail::symmetrized(m));
}

/// f applied to the spectrum of h.
template <class F>
HermitianMatrix apply_spectral(const Spectrum& s, F&& f) {
  return reconstruct(s.vectors, s.values.unaryExpr(std::forward<F>(f)));
}

/// Hermitian matrix with eigenvalues >= -kPsdTolerance.
class PsdMatrix {
 public:
  explicit PsdMatrix(HermitianMatrix h) : h_(std::move(h)) {
    if (h_.dim() > 0 && eigenvalues(h_).minCoeff() < -kPsdTolerance) {
      throw DomainError("PsdMatrix: negative eigenvalue");
    }
  }

  // Caller guarantees the spectrum (e.g. exponentials).
  static PsdMatrix from_exact(HermitianMatrix h) {
    PsdMatrix p;
    p.h_ = std::move(h);
    return p;
  }

  const HermitianMatrix& hermitian() const { return h_; }
  const ComplexMatrix& matrix() const { return h_.matrix(); }
  Index dim() const { return h_.dim(); }
  operator const HermitianMatrix&() const { return h_; }  // NOLINT

 private:
  PsdMatrix() = default;
  HermitianMatrix h_;
};

inline PsdMatrix expm(const HermitianMatrix& h) {
  const Spectrum s = eigen(h);
  return PsdMatrix::from_exact(apply_spectral(s, [](double x) { return std::exp(x); }));
}

inline HermitianMatrix logm(const PsdMatrix& p) {
  const Spectrum s = eigen(p.hermitian());
  if (s.dim() > 0 && s.min() < kLogFloor) {
    throw SingularMatrix("logm: eigenvalue below 1e-14");
  }
  return apply_spectral(s, [](double x) { return std::log(x); });
}

/// (A + A^H) / 2.
inline HermitianMatrix hermitize(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw InvalidInput("hermitize: matrix is not square");
  return HermitianMatrix::from_exact(detail::symmetrized(a));
}

inline double trace_norm(const HermitianMatrix& h) { return eigenvalues(h).cwiseAbs().sum(); }

inline double spectral_norm(const HermitianMatrix& h) {
  return h.dim() ? eigenvalues(h).cwiseAbs().maxCoeff() : 0.0;
}

/// Entrywise product. A real symmetric mask keeps the result exactly Hermitian.
inline HermitianMatrix hadamard(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw InvalidInput("hadamard: dimension mismatch");
  return HermitianMatrix::from_exact(a.matrix().cwiseProduct(b.matrix()));
}

inline HermitianMatrix hadamard(const RealMatrix& mask, const HermitianMatrix& b) {
  if (mask.rows() != b.dim() || mask.cols() != b.dim()) {
    throw InvalidInput("hadamard: dimension mismatch");
  }
  return HermitianMatrix::from_exact(mask.cast<Complex>().cwiseProduct(b.matrix()));
}

// ---------------------------------------------------------------------------
// Block-diagonal composition

/// diag(B_1, ..., B_S). Only the blocks are stored; to_dense() materializes.
template <class Block>
class BlockDiagonal {
 public:
  BlockDiagonal() = default;
  explicit BlockDiagonal(std::vector<Block> blocks) : blocks_(std::move(blocks)) {}
  BlockDiagonal(Block single) { blocks_.push_back(std::move(single)); }  // NOLINT

  std::size_t size() const { return blocks_.size(); }
  const Block& operator[](std::size_t s) const { return blocks_[s]; }
  Block& operator[](std::size_t s) { return blocks_[s]; }
  const std::vector<Block>& blocks() const { return blocks_; }
  auto begin() const { return blocks_.begin(); }
  auto end() const { return blocks_.end(); }

  Index rows() const {
    return std::accumulate(blocks_.begin(), blocks_.end(), Index{0},
                           [](Index acc, const Block& b) { return acc + rows_of(b); });
  }
  Index cols() const {
    return std::accumulate(blocks_.begin(), blocks_.end(), Index{0},
                           [](Index acc, const Block& b) { return acc + cols_of(b); });
  }

  ComplexMatrix to_dense() const {
    ComplexMatrix out = ComplexMatrix::Zero(rows(), cols());
    Index r = 0, c = 0;
    for (const Block& b : blocks_) {
      out.block(r, c, rows_of(b), cols_of(b)) = dense_of(b);
      r += rows_of(b);
      c += cols_of(b);
    }
    return out;
  }

 private:
  static Index rows_of(const Block& b) {
    if constexpr (requires { b.dim(); }) return b.dim(); else return b.rows();
  }
  static Index cols_of(const Block& b) {
    if constexpr (requires { b.dim(); }) return b.dim(); else return b.cols();
  }
  static ComplexMatrix dense_of(const Block& b) {
    if constexpr (requires { b.matrix(); }) return b.matrix(); else return b;
  }

  std::vector<Block> blocks_;
};

using BlockHermitian = BlockDiagonal<HermitianMatrix>;
using BlockMatrix = BlockDiagonal<ComplexMatrix>;

inline BlockHermitian zero_blocks(std::size_t count, Index dim) {
  return BlockHermitian(std::vector<HermitianMatrix>(count, HermitianMatrix::zero(dim)));
}

inline double trace(const BlockHermitian& b) {
  double t = 0.0;
  for (const auto& blk : b) t += blk.trace();
  return t;
}

inline double trace_norm(const BlockHermitian& b) {
  double t = 0.0;
  for (const auto& blk : b) t += trace_norm(blk);
  return t;
}

inline double spectral_norm(const BlockHermitian& b) {
  double m = 0.0;
  for (const auto& blk : b) m = std::max(m, spectral_norm(blk));
  return m;
}

/// Sum of |entry|^2 over all in-block entries.
inline double squared_frobenius(const BlockHermitian& b) {
  double t = 0.0;
  for (const auto& blk : b) t += blk.matrix().squaredNorm();
  return t;
}

inline void check_same_shape(const BlockHermitian& a, const BlockHermitian& b) {
  if (a.size() != b.size()) throw InvalidInput("block count mismatch");
  for (std::size_t s = 0; s < a.size(); ++s) {
    if (a[s].dim() != b[s].dim()) throw InvalidInput("block dimension mismatch");
  }
}

inline BlockHermitian operator+(const BlockHermitian& a, const BlockHermitian& b) {
  check_same_shape(a, b);
  std::vector<HermitianMatrix> out;
  out.reserve(a.size());
  for (std::size_t s = 0; s < a.size(); ++s) out.push_back(a[s] + b[s]);
  return BlockHermitian(std::move(out));
}

inline BlockHermitian operator-(const BlockHermitian& a, const BlockHermitian& b) {
  check_same_shape(a, b);
  std::vector<HermitianMatrix> out;
  out.reserve(a.size());
  for (std::size_t s = 0; s < a.size(); ++s) out.push_back(a[s] - b[s]);
  return BlockHermitian(std::move(out));
}

inline BlockHermitian operator*(double c, const BlockHermitian& a) {
  std::vector<HermitianMatrix> out;
  out.reserve(a.size());
  for (const auto& blk : a) out.push_back(c * blk);
  return BlockHermitian(std::move(out));
}

/// Re tr(A B) summed over blocks.
inline double trace_product(const BlockHermitian& a, const BlockHermitian& b) {
  check_same_shape(a, b);
  double t = 0.0;
  for (std::size_t s = 0; s < a.size(); ++s) {
    // tr(AB) = sum_ij A_ij B_ji = sum_ij A_ij conj(B_ij) for Hermitian B.
    t += (a[s].matrix().cwiseProduct(b[s].matrix().conjugate())).sum().real();
  }
  return t;
}

inline bool bitwise_equal(const BlockHermitian& a, const BlockHermitian& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t s = 0; s < a.size(); ++s) {
    if (a[s].dim() != b[s].dim()) return false;
    if (!(a[s].matrix().array() == b[s].matrix().array()).all()) return false;
  }
  return true;
}

}  // namespace mxl
