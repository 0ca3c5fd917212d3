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

// Random generators and independent oracles shared by the test suites.
#pragma once

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <random>
#include <vector>

#include "mxl/hermitian.hpp"
#include "mxl/geometry.hpp"
#include "mxl/mimo.hpp"

namespace mxl::testing {

using Gen = std::mt19937_64;

inline ComplexMatrix random_complex(Index rows, Index cols, Gen& g, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  ComplexMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = Complex(n(g), n(g));
  }
  return m;
}

inline ComplexMatrix random_unitary(Index dim, Gen& g) {
  Eigen::HouseholderQR<ComplexMatrix> qr(random_complex(dim, dim, g));
  return qr.householderQ() * ComplexMatrix::Identity(dim, dim);
}

/// U diag(d) U^H with a Haar-like U; the spectrum is known exactly.
inline HermitianMatrix with_spectrum(const RealVector& d, Gen& g) {
  const ComplexMatrix u = random_unitary(d.size(), g);
  return HermitianMatrix(ComplexMatrix(u * d.cast<Complex>().asDiagonal() * u.adjoint()));
}

inline RealVector uniform_vector(Index dim, double lo, double hi, Gen& g) {
  std::uniform_real_distribution<double> u(lo, hi);
  RealVector d(dim);
  for (Index i = 0; i < dim; ++i) d(i) = u(g);
  return d;
}

inline HermitianMatrix random_hermitian(Index dim, double lo, double hi, Gen& g) {
  return with_spectrum(uniform_vector(dim, lo, hi, g), g);
}

inline BlockHermitian random_blocks(std::size_t blocks, Index dim, double lo, double hi, Gen& g) {
  std::vector<HermitianMatrix> b;
  for (std::size_t s = 0; s < blocks; ++s) b.push_back(random_hermitian(dim, lo, hi, g));
  return BlockHermitian(std::move(b));
}

/// Random positive-definite point with total trace drawn from (0.05, 0.95).
inline FeasibleAction random_feasible(std::size_t blocks, Index dim, Gen& g, double bound = 1.0) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<RealVector> spectra;
  double total = 0.0;
  for (std::size_t s = 0; s < blocks; ++s) {
    RealVector d(dim);
    for (Index i = 0; i < dim; ++i) d(i) = u(g);
    total += d.sum();
    spectra.push_back(d);
  }
  const double target = std::uniform_real_distribution<double>(0.05, 0.95)(g);
  std::vector<HermitianMatrix> b;
  for (auto& d : spectra) b.push_back(with_spectrum(d * (target * bound / total), g));
  return FeasibleAction::from_matrix(BlockHermitian(std::move(b)), bound);
}

/// Eigenvalues through the general (non-Hermitian) complex solver.
inline RealVector oracle_eigenvalues(const ComplexMatrix& m) {
  Eigen::ComplexEigenSolver<ComplexMatrix> es(m);
  RealVector v = es.eigenvalues().real();
  std::sort(v.data(), v.data() + v.size());
  return v;
}

inline ComplexMatrix taylor_exp(const ComplexMatrix& h, int terms = 40) {
  ComplexMatrix sum = ComplexMatrix::Identity(h.rows(), h.cols());
  ComplexMatrix term = sum;
  for (int k = 1; k <= terms; ++k) {
    term = term * h / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

/// Central differences of utility k along every Hermitian direction of every
/// block: E_ii, E_ij + E_ji and i E_ij - i E_ji, whose directional derivatives
/// are V_ii, 2 Re V_ij and 2 Im V_ij. Returns the largest deviation over the
/// largest analytic value.
inline double fd_gradient_error(std::size_t k, const mimo::ActionProfile& x, const mimo::ChannelSet& h,
                                const mimo::NetworkConfig& cfg, double step = 1e-6) {
  const BlockHermitian v = mimo::gradient(k, x, h, cfg);
  double err = 0.0, scale = 0.0;
  auto probe = [&](std::size_t s, const ComplexMatrix& dir, double analytic) {
    mimo::ActionProfile plus = x, minus = x;
    std::vector<HermitianMatrix> bp(plus[k].blocks()), bm(minus[k].blocks());
    bp[s] = HermitianMatrix(bp[s].matrix() + step * dir);
    bm[s] = HermitianMatrix(bm[s].matrix() - step * dir);
    plus[k] = BlockHermitian(std::move(bp));
    minus[k] = BlockHermitian(std::move(bm));
    const double fd = (mimo::utility(k, plus, h, cfg) - mimo::utility(k, minus, h, cfg)) / (2 * step);
    err = std::max(err, std::abs(fd - analytic));
    scale = std::max(scale, std::abs(analytic));
  };
  for (std::size_t s = 0; s < v.size(); ++s) {
    const ComplexMatrix& vs = v[s].matrix();
    const Index m = vs.rows();
    for (Index j = 0; j < m; ++j) {
      ComplexMatrix d = ComplexMatrix::Zero(m, m);
      d(j, j) = 1.0;
      probe(s, d, vs(j, j).real());
      for (Index i = j + 1; i < m; ++i) {
        ComplexMatrix re = ComplexMatrix::Zero(m, m);
        re(i, j) = re(j, i) = 1.0;
        probe(s, re, 2 * vs(i, j).real());
        ComplexMatrix im = ComplexMatrix::Zero(m, m);
        im(i, j) = Complex(0, 1);
        im(j, i) = Complex(0, -1);
        probe(s, im, 2 * vs(i, j).imag());
      }
    }
  }
  return err / scale;
}

/// Random profile of feasible adjusted actions, one per link.
inline mimo::ActionProfile random_profile(const mimo::NetworkConfig& cfg, Gen& g) {
  mimo::ActionProfile x;
  for (std::size_t k = 0; k < cfg.K; ++k) x.push_back(random_feasible(cfg.S, cfg.Nt, g).matrix());
  return x;
}

}  // namespace mxl::testing
