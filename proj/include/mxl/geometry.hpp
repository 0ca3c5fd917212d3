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

// Entropic geometry of the trace-constrained spectrahedron
//   { X >= 0 : tr X <= 1 }
// generated by h(X) = tr(X log X) + (1 - tr X) log(1 - tr X).
//
// Points are stored as a spectral factorization with log-eigenvalues and a
// log-slack, so positivity and tr X < 1 survive dual variables whose spectra
// are far outside the range of exp().
#pragma once

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "mxl/errors.hpp"
#include "mxl/hermitian.hpp"

namespace mxl {

/// Positive-definite X with tr X < bound.
///
/// Internally the normalized point X / bound is kept as, per block, an
/// eigenbasis with log-eigenvalues, plus log(1 - tr(X / bound)).
class FeasibleAction {
 public:
  FeasibleAction() = default;

  /// Validates and factorizes an explicit point. Throws DomainError unless
  /// every eigenvalue is > 0 and tr x < bound. With eigen_floor > 0,
  /// eigenvalues of x / bound below the floor are raised to it instead, which
  /// admits points on (or numerically at) the boundary of the cone.
  static FeasibleAction from_matrix(const BlockHermitian& x, double bound = 1.0, double eigen_floor = 0.0) {
    if (!(bound > 0.0)) throw InvalidInput("FeasibleAction: bound must be positive");
    if (!(eigen_floor >= 0.0)) throw InvalidInput("FeasibleAction: eigenvalue floor must be nonnegative");
    FeasibleAction a;
    a.bound_ = bound;
    double tr = 0.0;
    a.log_spectrum_.reserve(x.size());
    for (const auto& blk : x) {
      Spectrum s = eigen((1.0 / bound) * blk);
      if (eigen_floor > 0.0) s.values = s.values.cwiseMax(eigen_floor);
      if (s.dim() > 0 && !(s.min() > 0.0)) {
        throw DomainError("FeasibleAction: matrix is not positive definite");
      }
      tr += s.values.sum();
      s.values = s.values.array().log().matrix();
      a.log_spectrum_.push_back(std::move(s));
    }
    if (!(tr < 1.0)) throw DomainError("FeasibleAction: trace must stay below the bound");
    a.log_slack_ = std::log1p(-tr);
    a.materialize();
    return a;
  }

  /// From log-domain data of the normalized point; used by the mirror map.
  static FeasibleAction from_log_spectrum(std::vector<Spectrum> log_spectrum, double log_slack,
                                          double bound) {
    FeasibleAction a;
    a.log_spectrum_ = std::move(log_spectrum);
    a.log_slack_ = log_slack;
    a.bound_ = bound;
    a.materialize();
    return a;
  }

  /// The action X (scaled by the bound).
  const BlockHermitian& matrix() const { return x_; }
  /// X / bound.
  const BlockHermitian& normalized() const { return normalized_; }
  double bound() const { return bound_; }
  double trace() const { return bound_ * normalized_trace(); }
  double normalized_trace() const { return -std::expm1(log_slack_); }
  double log_slack() const { return log_slack_; }
  const std::vector<Spectrum>& log_spectrum() const { return log_spectrum_; }
  std::size_t blocks() const { return log_spectrum_.size(); }

  double min_log_eigenvalue() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& s : log_spectrum_) m = std::min(m, s.min());
    return m;
  }

 private:
  void materialize() {
    std::vector<HermitianMatrix> norm, scaled;
    norm.reserve(log_spectrum_.size());
    scaled.reserve(log_spectrum_.size());
    for (const auto& s : log_spectrum_) {
      HermitianMatrix n = reconstruct(s.vectors, s.values.array().exp().matrix());
      scaled.push_back(bound_ * n);
      norm.push_back(std::move(n));
    }
    normalized_ = BlockHermitian(std::move(norm));
    x_ = BlockHermitian(std::move(scaled));
  }

  std::vector<Spectrum> log_spectrum_;
  double log_slack_ = 0.0;
  double bound_ = 1.0;
  BlockHermitian normalized_;
  BlockHermitian x_;
};

namespace detail {

inline void check_finite(const BlockHermitian& y, const char* who) {
  for (const auto& blk : y) {
    if (!blk.matrix().allFinite()) throw RangeError(std::string(who) + ": non-finite input");
  }
}

// log(1 + sum_i exp(v_i)) over all blocks, evaluated with a shift.
inline double log_one_plus_sum_exp(const std::vector<Spectrum>& spectra) {
  double shift = 0.0;
  for (const auto& s : spectra) shift = std::max(shift, s.max());
  double acc = std::exp(-shift);
  for (const auto& s : spectra) acc += (s.values.array() - shift).exp().sum();
  return shift + std::log(acc);
}

inline std::vector<Spectrum> block_spectra(const BlockHermitian& y) {
  std::vector<Spectrum> out;
  out.reserve(y.size());
  for (const auto& blk : y) out.push_back(eigen(blk));
  return out;
}

}  // namespace detail

/// h(X) = tr(X log X) + (1 - tr X) log(1 - tr X), on X / bound.
inline double entropy(const FeasibleAction& x) {
  double h = 0.0;
  for (const auto& s : x.log_spectrum()) {
    h += (s.values.array().exp() * s.values.array()).sum();
  }
  const double slack = std::exp(x.log_slack());
  return h + slack * x.log_slack();
}

/// h*(Y) = log(1 + tr exp(Y)).
inline double conjugate(const BlockHermitian& y) {
  detail::check_finite(y, "conjugate");
  return detail::log_one_plus_sum_exp(detail::block_spectra(y));
}

/// G(Y) = exp(Y) / (1 + tr exp(Y)), scaled by bound.
inline FeasibleAction mirror_map(const BlockHermitian& y, double bound = 1.0) {
  detail::check_finite(y, "mirror_map");
  std::vector<Spectrum> spectra = detail::block_spectra(y);
  const double log_norm = detail::log_one_plus_sum_exp(spectra);
  for (auto& s : spectra) s.values.array() -= log_norm;
  return FeasibleAction::from_log_spectrum(std::move(spectra), -log_norm, bound);
}

/// Generalized quantum Kullback-Leibler divergence
///   tr(X*(log X* - log X)) + (1 - tr X*) log((1 - tr X*) / (1 - tr X))
/// between the normalized points.
inline double quantum_kl(const FeasibleAction& xstar, const FeasibleAction& x) {
  if (xstar.blocks() != x.blocks()) throw InvalidInput("quantum_kl: block count mismatch");
  double d = 0.0;
  for (std::size_t b = 0; b < x.blocks(); ++b) {
    const Spectrum& ss = xstar.log_spectrum()[b];
    const Spectrum& sx = x.log_spectrum()[b];
    if (ss.dim() != sx.dim()) throw InvalidInput("quantum_kl: block dimension mismatch");
    d += (ss.values.array().exp() * ss.values.array()).sum();
    // tr(X* log X) = sum_i log(mu_i) (U^H X* U)_ii
    const ComplexMatrix& u = sx.vectors;
    const RealVector diag =
        (u.adjoint() * xstar.normalized()[b].matrix() * u).diagonal().real();
    d -= diag.dot(sx.values);
  }
  const double slack_star = std::exp(xstar.log_slack());
  d += slack_star * (xstar.log_slack() - x.log_slack());
  return std::max(d, 0.0);
}

/// F(X*, Y) = h(X*) + h*(Y) - tr(Y X*), equal to quantum_kl(X*, G(Y)).
inline double fenchel_coupling(const FeasibleAction& xstar, const BlockHermitian& y) {
  const double f = entropy(xstar) + conjugate(y) - trace_product(y, xstar.normalized());
  return std::max(f, 0.0);
}

/// Right side minus left side of
///   F(X*, Y + U) <= F(X*, Y) + tr((G(Y) - X*) U) + ||U||_inf^2.
inline double three_point_slack(const FeasibleAction& xstar, const BlockHermitian& y,
                                const BlockHermitian& u) {
  const double lhs = fenchel_coupling(xstar, y + u);
  const FeasibleAction g = mirror_map(y);
  const double su = spectral_norm(u);
  const double rhs = fenchel_coupling(xstar, y) +
                     trace_product(g.normalized() - xstar.normalized(), u) + su * su;
  return rhs - lhs;
}

inline bool three_point_check(const FeasibleAction& xstar, const BlockHermitian& y,
                              const BlockHermitian& u) {
  return three_point_slack(xstar, y, u) >= -1e-9;
}

}  // namespace mxl
