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

// Multicarrier multi-user MIMO energy-efficiency game.
//
// K transmitter/receiver links share S orthogonal subcarriers; every channel
// is block diagonal with one N_r x N_t block per subcarrier. Link k picks a
// block-diagonal covariance Q_k with sum_s tr Q_ks <= P_max and wants to
// maximize EE_k = r_k / (tr Q_k + P_c). Learning runs on the adjusted action
//   X_k = ((P_c + P_max) / P_max) Q_k / (P_c + tr Q_k),
// in which the utility is concave and tr X_k <= 1.
//
// Interference at receiver k is sum_{j != k} H_jk Q_j H_jk^H, with H_jk the
// channel from transmitter j to receiver k.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mxl/errors.hpp"
#include "mxl/game.hpp"
#include "mxl/geometry.hpp"
#include "mxl/hermitian.hpp"
#include "mxl/learner.hpp"
#include "mxl/rng.hpp"

namespace mxl::mimo {

enum class ChannelMode { kStatic, kIidPerIteration };

inline double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

struct NetworkConfig {
  std::size_t K = 9;
  Index Nt = 4;
  Index Nr = 8;
  std::size_t S = 3;
  double Pc = dbm_to_watts(20.0);    // circuit power [W]
  double Pmax = dbm_to_watts(30.0);  // max transmit power [W]
  double sigma2 = 1.0;               // gradient noise variance
  ChannelMode channel_mode = ChannelMode::kStatic;

  void validate() const {
    if (K < 1 || Nt < 1 || Nr < 1 || S < 1) throw InvalidInput("NetworkConfig: sizes must be positive");
    if (!(Pc > 0.0) || !(Pmax > 0.0)) throw InvalidInput("NetworkConfig: powers must be positive");
    if (!(sigma2 >= 0.0)) throw InvalidInput("NetworkConfig: sigma2 must be nonnegative");
  }

  /// (P_c + P_max) / P_max.
  double adjust_scale() const { return (Pc + Pmax) / Pmax; }
};

/// H(k, j): block-diagonal channel from transmitter k to receiver j.
class ChannelSet {
 public:
  ChannelSet() = default;
  ChannelSet(std::size_t links, std::vector<BlockMatrix> h) : links_(links), h_(std::move(h)) {
    if (h_.size() != links * links) throw InvalidInput("ChannelSet: need K*K channels");
  }

  std::size_t links() const { return links_; }
  const BlockMatrix& operator()(std::size_t from, std::size_t to) const { return h_[from * links_ + to]; }
  BlockMatrix& operator()(std::size_t from, std::size_t to) { return h_[from * links_ + to]; }

 private:
  std::size_t links_ = 0;
  std::vector<BlockMatrix> h_;
};

/// Per-link block-diagonal transmit covariances.
using CovarianceProfile = std::vector<BlockHermitian>;
/// Per-link adjusted actions X_k.
using ActionProfile = std::vector<BlockHermitian>;

/// Entries i.i.d. circularly-symmetric complex Gaussian with unit variance.
inline ChannelSet draw_channels(const NetworkConfig& cfg, Rng& rng) {
  cfg.validate();
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  std::vector<BlockMatrix> h;
  h.reserve(cfg.K * cfg.K);
  for (std::size_t i = 0; i < cfg.K * cfg.K; ++i) {
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(cfg.S);
    for (std::size_t s = 0; s < cfg.S; ++s) {
      ComplexMatrix b(cfg.Nr, cfg.Nt);
      for (Index c = 0; c < cfg.Nt; ++c) {
        for (Index r = 0; r < cfg.Nr; ++r) {
          const double re = normal(rng);
          const double im = normal(rng);
          b(r, c) = Complex(re, im);
        }
      }
      blocks.push_back(std::move(b));
    }
    h.emplace_back(std::move(blocks));
  }
  return ChannelSet(cfg.K, std::move(h));
}

/// Q -> X = ((P_c + P_max) / P_max) Q / (P_c + tr Q). Maps tr Q <= P_max to tr X <= 1.
inline BlockHermitian to_adjusted(const BlockHermitian& q, const NetworkConfig& cfg) {
  const double factor = cfg.adjust_scale() / (cfg.Pc + trace(q));
  return factor * q;
}

/// Inverse of to_adjusted: tr Q = P_c tr X / (c - tr X), Q = (P_c + tr Q) X / c,
/// c = (P_c + P_max) / P_max. Defined for tr X < c.
inline BlockHermitian from_adjusted(const BlockHermitian& x, const NetworkConfig& cfg) {
  const double c = cfg.adjust_scale();
  const double tx = trace(x);
  if (!(tx < c)) throw DomainError("from_adjusted: trace outside the invertible region");
  const double tq = cfg.Pc * tx / (c - tx);
  return ((cfg.Pc + tq) / c) * x;
}

inline CovarianceProfile from_adjusted(const ActionProfile& x, const NetworkConfig& cfg) {
  CovarianceProfile q;
  q.reserve(x.size());
  for (const auto& xk : x) q.push_back(from_adjusted(xk, cfg));
  return q;
}

namespace detail {

inline void check_profile(const std::vector<BlockHermitian>& q, const ChannelSet& h, std::size_t k) {
  if (q.size() != h.links()) throw InvalidInput("profile size differs from link count");
  if (k >= h.links()) throw InvalidInput("link index out of range");
}

// I + sum_{j != k} H_jks Q_js H_jks^H on subcarrier s.
inline ComplexMatrix interference_plus_noise(std::size_t k, std::size_t s,
                                             const CovarianceProfile& q, const ChannelSet& h) {
  const Index nr = h(k, k)[s].rows();
  ComplexMatrix r = ComplexMatrix::Identity(nr, nr);
  for (std::size_t j = 0; j < h.links(); ++j) {
    if (j == k) continue;
    const ComplexMatrix& hj = h(j, k)[s];
    r.noalias() += hj * q[j][s].matrix() * hj.adjoint();
  }
  return r;
}

inline double log_det_pd(const ComplexMatrix& a) {
  Eigen::LLT<ComplexMatrix> llt(a);
  if (llt.info() != Eigen::Success) throw DomainError("log_det: matrix not positive definite");
  return 2.0 * llt.matrixLLT().diagonal().real().array().log().sum();
}

}  // namespace detail

/// (I + interference)^(-1/2) H_kk, per subcarrier.
inline BlockMatrix effective_channel(std::size_t k, const CovarianceProfile& q, const ChannelSet& h) {
  detail::check_profile(q, h, k);
  std::vector<ComplexMatrix> out;
  const BlockMatrix& direct = h(k, k);
  out.reserve(direct.size());
  for (std::size_t s = 0; s < direct.size(); ++s) {
    const ComplexMatrix r = detail::interference_plus_noise(k, s, q, h);
    const Spectrum sp = eigen(HermitianMatrix::from_exact(mxl::detail::symmetrized(r)));
    const HermitianMatrix w = apply_spectral(sp, [](double x) { return 1.0 / std::sqrt(x); });
    out.push_back(w.matrix() * direct[s]);
  }
  return BlockMatrix(std::move(out));
}

/// r_k = log det(I + sum_j H_jk Q_j H_jk^H) - log det(I + sum_{j != k} H_jk Q_j H_jk^H),
/// summed over subcarriers (nats).
inline double achievable_rate(std::size_t k, const CovarianceProfile& q, const ChannelSet& h) {
  detail::check_profile(q, h, k);
  double r = 0.0;
  for (std::size_t s = 0; s < h(k, k).size(); ++s) {
    const ComplexMatrix interf = detail::interference_plus_noise(k, s, q, h);
    const ComplexMatrix& hk = h(k, k)[s];
    const ComplexMatrix total = interf + hk * q[k][s].matrix() * hk.adjoint();
    r += detail::log_det_pd(mxl::detail::symmetrized(total)) - detail::log_det_pd(mxl::detail::symmetrized(interf));
  }
  return r;
}

/// EE_k = r_k / (tr Q_k + P_c).
inline double energy_efficiency(std::size_t k, const CovarianceProfile& q, const ChannelSet& h,
                                const NetworkConfig& cfg) {
  return achievable_rate(k, q, h) / (trace(q[k]) + cfg.Pc);
}

/// Transformed utility
///   phi_k log det(I + P_c P_max H~ X_k H~^H / (P_c + P_max (1 - tr X_k))),
///   phi_k = (P_c + P_max (1 - tr X_k)) / (P_c (P_c + P_max)),
/// with H~ the effective channel under Q_j = from_adjusted(X_j).
inline double utility(std::size_t k, const ActionProfile& x, const ChannelSet& h,
                      const NetworkConfig& cfg) {
  detail::check_profile(x, h, k);
  const CovarianceProfile q = from_adjusted(x, cfg);
  const BlockMatrix heff = effective_channel(k, q, h);
  const double t = trace(x[k]);
  const double denom = cfg.Pc + cfg.Pmax * (1.0 - t);
  const double phi = denom / (cfg.Pc * (cfg.Pc + cfg.Pmax));
  const double c = cfg.Pc * cfg.Pmax / denom;
  double logdet = 0.0;
  for (std::size_t s = 0; s < heff.size(); ++s) {
    const Index nr = heff[s].rows();
    const ComplexMatrix m = ComplexMatrix::Identity(nr, nr) + c * heff[s] * x[k][s].matrix() * heff[s].adjoint();
    logdet += detail::log_det_pd(mxl::detail::symmetrized(m));
  }
  return phi * logdet;
}

/// Utility and its gradient for every link.
///
/// With T = R + c H X H^H (R the interference-plus-noise covariance,
/// c = P_c P_max / D, D = P_c + P_max (1 - tr X)) and L = sum_s log det T_s / R_s:
///   grad = phi c H^H T^-1 H
///        + [phi (c P_max / D) sum_s tr(T_s^-1 H X H^H) - L P_max / (P_c (P_c + P_max))] I.
inline std::vector<LinkEvaluation> evaluate_all(const ActionProfile& x, const ChannelSet& h,
                                                const NetworkConfig& cfg) {
  if (x.size() != h.links()) throw InvalidInput("evaluate_all: profile size differs from link count");
  const CovarianceProfile q = from_adjusted(x, cfg);
  const double kappa = cfg.Pc * (cfg.Pc + cfg.Pmax);
  std::vector<LinkEvaluation> out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double t = trace(x[k]);
    const double denom = cfg.Pc + cfg.Pmax * (1.0 - t);
    const double phi = denom / kappa;
    const double c = cfg.Pc * cfg.Pmax / denom;
    double logdet = 0.0;
    double tr_sum = 0.0;
    std::vector<ComplexMatrix> direct_terms;
    direct_terms.reserve(x[k].size());
    for (std::size_t s = 0; s < x[k].size(); ++s) {
      const ComplexMatrix r = detail::interference_plus_noise(k, s, q, h);
      const ComplexMatrix& hk = h(k, k)[s];
      const ComplexMatrix hx = hk * x[k][s].matrix();
      const ComplexMatrix signal = hx * hk.adjoint();
      const ComplexMatrix tmat = mxl::detail::symmetrized(r + c * signal);
      Eigen::LLT<ComplexMatrix> llt_t(tmat);
      Eigen::LLT<ComplexMatrix> llt_r(mxl::detail::symmetrized(r));
      if (llt_t.info() != Eigen::Success || llt_r.info() != Eigen::Success) {
        throw DomainError("evaluate_all: covariance not positive definite");
      }
      logdet += 2.0 * (llt_t.matrixLLT().diagonal().real().array().log().sum() -
                       llt_r.matrixLLT().diagonal().real().array().log().sum());
      const ComplexMatrix tinv_h = llt_t.solve(hk);          // T^-1 H
      tr_sum += (tinv_h * x[k][s].matrix() * hk.adjoint()).trace().real();  // tr(T^-1 H X H^H)
      direct_terms.push_back(hk.adjoint() * tinv_h);         // H^H T^-1 H
    }
    const double diag_shift = phi * (c * cfg.Pmax / denom) * tr_sum - logdet * cfg.Pmax / kappa;
    std::vector<HermitianMatrix> grad;
    grad.reserve(direct_terms.size());
    for (auto& term : direct_terms) {
      ComplexMatrix g = (phi * c) * term;
      g.diagonal().array() += diag_shift;
      grad.push_back(HermitianMatrix::from_exact(mxl::detail::symmetrized(g)));
    }
    out[k].utility = phi * logdet;
    out[k].gradient = BlockHermitian(std::move(grad));
  }
  return out;
}

/// d utility_k / d X_k, holding the other links fixed. Hermitian per block;
/// dU = Re tr(grad dX) for Hermitian perturbations dX.
inline BlockHermitian gradient(std::size_t k, const ActionProfile& x, const ChannelSet& h,
                               const NetworkConfig& cfg) {
  detail::check_profile(x, h, k);
  return evaluate_all(x, h, cfg)[k].gradient;
}

/// V + hermitize(Z), Z with i.i.d. CN(0, sigma2) entries on the block support.
inline BlockHermitian noisy_gradient(const BlockHermitian& v, double sigma2, Rng& rng) {
  if (!(sigma2 >= 0.0)) throw InvalidInput("noisy_gradient: sigma2 must be nonnegative");
  if (sigma2 == 0.0) return v;
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5 * sigma2));
  std::vector<HermitianMatrix> out;
  out.reserve(v.size());
  for (const auto& blk : v) {
    const Index m = blk.dim();
    ComplexMatrix z(m, m);
    for (Index j = 0; j < m; ++j) {
      for (Index i = 0; i < m; ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        z(i, j) = Complex(re, im);
      }
    }
    out.push_back(HermitianMatrix::from_exact(blk.matrix() + mxl::detail::symmetrized(z)));
  }
  return BlockHermitian(std::move(out));
}

/// Per-link signalling cost under `strategy` for one round; a full gradient
/// costs S * N_t^2 entries.
inline std::int64_t feedback_cost(const FeedbackStrategy& strategy, const NetworkConfig& cfg,
                                  const MaskedGradient* masked, bool delivered,
                                  CostConvention convention = CostConvention::kEntries) {
  const BlockHermitian shape = zero_blocks(cfg.S, cfg.Nt);
  return mxl::feedback_cost(strategy, shape, masked, delivered, convention);
}

/// Q_ks = (P_max / (2 S N_t)) I: half the power budget spread evenly.
inline BlockHermitian half_power_covariance(const NetworkConfig& cfg) {
  const double level = cfg.Pmax / (2.0 * static_cast<double>(cfg.S) * static_cast<double>(cfg.Nt));
  std::vector<HermitianMatrix> blocks(cfg.S, level * HermitianMatrix::identity(cfg.Nt));
  return BlockHermitian(std::move(blocks));
}

/// Energy-efficiency game as seen by the experiment harness. In static mode
/// the channels passed at construction are used every round; otherwise a
/// fresh set is drawn per round.
class MimoGame {
 public:
  using Environment = ChannelSet;

  MimoGame(NetworkConfig cfg, ChannelSet channels) : cfg_(cfg), channels_(std::move(channels)) {
    cfg_.validate();
    if (channels_.links() != cfg_.K) throw InvalidInput("MimoGame: channel set size differs from K");
  }

  const NetworkConfig& config() const { return cfg_; }
  std::size_t links() const { return cfg_.K; }
  double bound() const { return 1.0; }
  double sigma2() const { return cfg_.sigma2; }
  bool stochastic() const { return cfg_.channel_mode == ChannelMode::kIidPerIteration; }

  /// Dual point whose mirror image is the half-power start
  /// Y(0) = log(X(0) / (1 - tr X(0))), X(0) = to_adjusted(half_power_covariance).
  std::vector<BlockHermitian> initial_dual() const {
    const BlockHermitian x0 = to_adjusted(half_power_covariance(cfg_), cfg_);
    const double slack = 1.0 - trace(x0);
    std::vector<HermitianMatrix> blocks;
    for (const auto& blk : x0) blocks.push_back(logm(PsdMatrix((1.0 / slack) * blk)));
    return std::vector<BlockHermitian>(cfg_.K, BlockHermitian(std::move(blocks)));
  }

  const ChannelSet& fixed_environment() const { return channels_; }
  ChannelSet draw_environment(Rng& rng) const { return draw_channels(cfg_, rng); }

  std::vector<LinkEvaluation> evaluate(const ActionProfile& x, const ChannelSet& h) const {
    return evaluate_all(x, h, cfg_);
  }

 private:
  NetworkConfig cfg_;
  ChannelSet channels_;
};

}  // namespace mxl::mimo
