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

// Power-law step sizes gamma_n = alpha * n^(-nu) and the closed-form
// quantities built on them: the drift constant epsilon and its analytic upper
// bound, the moments of the step actually applied under sporadic feedback,
// and the deterministic recursions behind the mean-divergence rate bounds.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "mxl/errors.hpp"

namespace mxl {

/// gamma_n = alpha * n^(-nu) with nu in (0.5, 1].
class StepSchedule {
 public:
  StepSchedule(double alpha, double nu) : alpha_(alpha), nu_(nu) {
    if (!(alpha > 0.0)) throw InvalidInput("StepSchedule: alpha must be positive");
    if (!(nu > 0.5 && nu <= 1.0)) throw InvalidInput("StepSchedule: nu must lie in (0.5, 1]");
  }

  double alpha() const { return alpha_; }
  double nu() const { return nu_; }

  double operator()(std::int64_t n) const {
    if (n < 1) throw InvalidInput("StepSchedule: index starts at 1");
    return alpha_ * std::pow(static_cast<double>(n), -nu_);
  }

 private:
  double alpha_;
  double nu_;
};

inline double gamma(const StepSchedule& s, std::int64_t n) { return s(n); }

/// Strong-stability constant B, gradient second-moment bound C and the
/// feedback probability p entering the rate bounds.
struct RateBoundParams {
  double B;
  double C;
  double p = 1.0;

  void validate() const {
    if (!(B > 0.0)) throw InvalidInput("RateBoundParams: B must be positive");
    if (!(C >= 0.0)) throw InvalidInput("RateBoundParams: C must be nonnegative");
    if (!(p > 0.0 && p <= 1.0)) throw InvalidInput("RateBoundParams: p must lie in (0, 1]");
  }
};

/// sup_n (gamma_n - gamma_{n+1}) / gamma_n^2.
///
/// For nu < 1 the ratio vanishes as n grows, so the max over n <= n_max is
/// returned. For nu = 1 the ratio n / (alpha (n + 1)) increases to 1/alpha,
/// which is returned as the supremum.
inline double epsilon_sup(const StepSchedule& s, std::int64_t n_max = 100000) {
  if (n_max < 1) throw InvalidInput("epsilon_sup: n_max must be >= 1");
  if (s.nu() == 1.0) return 1.0 / s.alpha();
  double best = -std::numeric_limits<double>::infinity();
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const double g = s(n);
    best = std::max(best, (g - s(n + 1)) / (g * g));
  }
  return best;
}

/// Upper bound of g(x) = x^(-nu) (1 - (1 + x)^(-nu)) over x in (0, 1].
inline double epsilon_bar(double nu) {
  if (!(nu > 0.5 && nu <= 1.0)) throw InvalidInput("epsilon_bar: nu must lie in (0.5, 1]");
  if (nu > std::log2(1.5)) return nu * std::pow((1.0 - nu) / (2.0 * nu), 1.0 - nu);
  return 1.0 - std::pow(2.0, -nu);
}

namespace detail {

inline void check_probability(double p, const char* who) {
  if (!(p > 0.0 && p <= 1.0)) throw InvalidInput(std::string(who) + ": p must lie in (0, 1]");
}

// Sum over l = 1..n of a_l * P[Binomial(n - 1, p) = l - 1] * p, with the
// binomial weights evaluated through log-gamma.
template <class Term>
double binomial_average(double p, std::int64_t n, Term&& term) {
  if (p == 1.0) return term(n);
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  const double lg_n = std::lgamma(static_cast<double>(n));
  double acc = 0.0;
  for (std::int64_t l = 1; l <= n; ++l) {
    const double lw = lg_n - std::lgamma(static_cast<double>(l)) -
                      std::lgamma(static_cast<double>(n - l + 1)) +
                      static_cast<double>(l) * lp + static_cast<double>(n - l) * lq;
    if (lw < -745.0) continue;
    acc += std::exp(lw) * term(l);
  }
  return acc;
}

}  // namespace detail

/// E[gamma_{n_k} eta_k(n)], the mean step applied at round n under
/// sporadic feedback with delivery probability p.
inline double sporadic_mean(const StepSchedule& s, double p, std::int64_t n) {
  detail::check_probability(p, "sporadic_mean");
  if (n < 1) throw InvalidInput("sporadic_mean: n must be >= 1");
  return detail::binomial_average(p, n, [&](std::int64_t l) { return s(l); });
}

/// E[(gamma_{n_k} eta_k(n))^2].
inline double sporadic_second_moment(const StepSchedule& s, double p, std::int64_t n) {
  detail::check_probability(p, "sporadic_second_moment");
  if (n < 1) throw InvalidInput("sporadic_second_moment: n must be >= 1");
  return detail::binomial_average(p, n, [&](std::int64_t l) {
    const double g = s(l);
    return g * g;
  });
}

/// Both moments for n = 1..count; element n-1 holds round n.
struct SporadicMoments {
  std::vector<double> mean;
  std::vector<double> second;
};

inline SporadicMoments sporadic_moments(const StepSchedule& s, double p, std::int64_t count) {
  detail::check_probability(p, "sporadic_moments");
  SporadicMoments m;
  m.mean.resize(static_cast<std::size_t>(count));
  m.second.resize(static_cast<std::size_t>(count));
  std::vector<double> g(static_cast<std::size_t>(count) + 1), log_fact(static_cast<std::size_t>(count) + 1);
  for (std::int64_t l = 1; l <= count; ++l) g[l] = s(l);
  for (std::int64_t i = 0; i <= count; ++i) log_fact[i] = std::lgamma(static_cast<double>(i) + 1.0);
  if (p == 1.0) {
    for (std::int64_t n = 1; n <= count; ++n) {
      m.mean[n - 1] = g[n];
      m.second[n - 1] = g[n] * g[n];
    }
    return m;
  }
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  for (std::int64_t n = 1; n <= count; ++n) {
    double mean = 0.0, second = 0.0;
    for (std::int64_t l = 1; l <= n; ++l) {
      const double lw = log_fact[n - 1] - log_fact[l - 1] - log_fact[n - l] +
                        static_cast<double>(l) * lp + static_cast<double>(n - l) * lq;
      if (lw < -745.0) continue;
      const double w = std::exp(lw);
      mean += w * g[l];
      second += w * g[l] * g[l];
    }
    m.mean[n - 1] = mean;
    m.second[n - 1] = second;
  }
  return m;
}

/// Truncated check of sum_n mean_n = sum_n gamma_n and
/// sum_n second_n = sum_n gamma_n^2, plus mean_n^2 <= second_n.
///
/// The identities hold for infinite sums. Truncated at N the gap equals
/// sum_{l<=N} a_l P[Binomial(N, p) < l], which is bounded by
///   sum_{m<l<=N} a_l + exp(-xi^2 p N / 2) sum_{l<=m} a_l,
/// m = floor((1 - xi) p N), xi = sqrt(2 ln N / (p N)) (Chernoff).
struct SumIdentityReport {
  std::int64_t truncation = 0;
  double mean_gap = 0.0;         // sum gamma - sum mean
  double second_gap = 0.0;       // sum gamma^2 - sum second
  double mean_tolerance = 0.0;
  double second_tolerance = 0.0;
  bool jensen_holds = true;      // mean_n^2 <= second_n for all n <= N
  std::int64_t first_jensen_violation = 0;

  bool passed() const {
    return mean_gap >= -1e-12 && mean_gap <= mean_tolerance + 1e-12 && second_gap >= -1e-12 &&
           second_gap <= second_tolerance + 1e-12 && jensen_holds;
  }
};

inline SumIdentityReport check_sum_identities(const StepSchedule& s, double p,
                                              std::int64_t truncation) {
  if (truncation < 100) throw InvalidInput("check_sum_identities: truncation must be >= 100");
  detail::check_probability(p, "check_sum_identities");
  const SporadicMoments m = sporadic_moments(s, p, truncation);
  SumIdentityReport r;
  r.truncation = truncation;
  const double big_n = static_cast<double>(truncation);
  double xi = std::sqrt(2.0 * std::log(big_n) / (p * big_n));
  xi = std::min(xi, 1.0);
  const auto cut = static_cast<std::int64_t>(std::floor((1.0 - xi) * p * big_n));
  const double chernoff = std::exp(-0.5 * xi * xi * p * big_n);
  double head1 = 0.0, tail1 = 0.0, head2 = 0.0, tail2 = 0.0;
  double sum_mean = 0.0, sum_second = 0.0;
  for (std::int64_t n = 1; n <= truncation; ++n) {
    const double g = s(n);
    (n <= cut ? head1 : tail1) += g;
    (n <= cut ? head2 : tail2) += g * g;
    sum_mean += m.mean[n - 1];
    sum_second += m.second[n - 1];
    const double mn = m.mean[n - 1];
    if (r.jensen_holds && mn * mn > m.second[n - 1] * (1.0 + 1e-12)) {
      r.jensen_holds = false;
      r.first_jensen_violation = n;
    }
  }
  r.mean_gap = (head1 + tail1) - sum_mean;
  r.second_gap = (head2 + tail2) - sum_second;
  if (p == 1.0) {
    r.mean_tolerance = 0.0;
    r.second_tolerance = 0.0;
  } else {
    r.mean_tolerance = tail1 + chernoff * head1;
    r.second_tolerance = tail2 + chernoff * head2;
  }
  return r;
}

/// Chernoff-based upper bound on second_{n+1} / mean_{n+1}:
///   (exp(-xi^2 p n / 2) gamma_1^2 + gamma_{floor((1-xi) p n)+2}^2) / gamma_{floor(p n)+2}.
/// Valid for schedules convex in n.
inline double rate_ratio_bound(const StepSchedule& s, double p, std::int64_t n, double xi = 0.5) {
  detail::check_probability(p, "rate_ratio_bound");
  if (!(xi > 0.0 && xi < 1.0)) throw InvalidInput("rate_ratio_bound: xi must lie in (0, 1)");
  const double pn = p * static_cast<double>(n);
  const double g1 = s(1);
  const auto lo = static_cast<std::int64_t>(std::floor((1.0 - xi) * pn)) + 2;
  const auto mid = static_cast<std::int64_t>(std::floor(pn)) + 2;
  const double glo = s(lo);
  return (std::exp(-0.5 * xi * xi * pn) * g1 * g1 + glo * glo) / s(mid);
}

/// second_n / mean_n, the effective step of the sporadic rate bound.
inline double sporadic_ratio(const StepSchedule& s, double p, std::int64_t n) {
  return sporadic_second_moment(s, p, n) / sporadic_mean(s, p, n);
}

// ---------------------------------------------------------------------------
// Deterministic bound recursions

enum class BoundStatus { kHolds, kExceeded, kConditionViolated };

inline const char* to_string(BoundStatus s) {
  switch (s) {
    case BoundStatus::kHolds: return "holds";
    case BoundStatus::kExceeded: return "exceeded";
    case BoundStatus::kConditionViolated: return "condition-violated";
  }
  return "?";
}

/// Iterated worst-case divergence sequence against its claimed bound curve.
/// With the step condition violated, no bound is claimed: `bound` stays empty.
struct BoundRecursionReport {
  BoundStatus status = BoundStatus::kConditionViolated;
  std::string condition;          // human-readable condition with numbers
  double epsilon = 0.0;           // drift constant of the condition
  double constant = 0.0;          // lambda (incomplete) or mu (sporadic)
  std::vector<double> divergence; // D_n, n = 1..N
  std::vector<double> bound;      // claimed curve at n = 1..N
  std::int64_t exceedances = 0;
  double worst_ratio = 0.0;       // max D_n / bound_n

  bool condition_holds() const { return status != BoundStatus::kConditionViolated; }
  bool holds() const { return status == BoundStatus::kHolds; }
};

namespace detail {

inline void finish_report(BoundRecursionReport& r) {
  r.exceedances = 0;
  r.worst_ratio = 0.0;
  for (std::size_t i = 0; i < r.divergence.size(); ++i) {
    const double ratio = r.divergence[i] / r.bound[i];
    r.worst_ratio = std::max(r.worst_ratio, ratio);
    if (r.divergence[i] > r.bound[i] * (1.0 + 1e-12)) ++r.exceedances;
  }
  r.status = r.exceedances == 0 ? BoundStatus::kHolds : BoundStatus::kExceeded;
}

}  // namespace detail

/// D_{n+1} = (1 - p B gamma_n) D_n + p C gamma_n^2 against lambda * gamma_n,
/// lambda = max{D_1 / gamma_1, p C / (p B - eps)}, under eps < p B < 1 / gamma_1.
inline BoundRecursionReport bound_recursion_mxli(const RateBoundParams& params,
                                                 const StepSchedule& s, double d1,
                                                 std::int64_t count) {
  params.validate();
  if (count < 1) throw InvalidInput("bound_recursion_mxli: N must be >= 1");
  BoundRecursionReport r;
  const double p = params.p;
  r.epsilon = epsilon_sup(s, std::max<std::int64_t>(count, 100000));
  const double pb = p * params.B;
  const double cap = 1.0 / s(1);
  r.condition = "eps=" + std::to_string(r.epsilon) + " < pB=" + std::to_string(pb) +
                " < 1/gamma_1=" + std::to_string(cap);
  r.divergence.reserve(static_cast<std::size_t>(count));
  double d = d1;
  for (std::int64_t n = 1; n <= count; ++n) {
    r.divergence.push_back(d);
    const double g = s(n);
    d = (1.0 - pb * g) * d + p * params.C * g * g;
  }
  if (!(r.epsilon < pb && pb < cap)) {
    r.status = BoundStatus::kConditionViolated;
    return r;
  }
  r.constant = std::max(d1 / s(1), p * params.C / (pb - r.epsilon));
  r.bound.reserve(static_cast<std::size_t>(count));
  for (std::int64_t n = 1; n <= count; ++n) r.bound.push_back(r.constant * s(n));
  detail::finish_report(r);
  return r;
}

/// D_{n+1} = (1 - B mean_n) D_n + C second_n against mu * second_n / mean_n,
/// mu = max{D_1 / gamma_1, C / (B - eps)},
/// eps = max_n (second_n/mean_n - second_{n+1}/mean_{n+1}) / second_n,
/// under eps < B < 1 / gamma_1.
inline BoundRecursionReport bound_recursion_mxls(const RateBoundParams& params,
                                                 const StepSchedule& s, double d1,
                                                 std::int64_t count) {
  params.validate();
  if (count < 1) throw InvalidInput("bound_recursion_mxls: N must be >= 1");
  BoundRecursionReport r;
  const SporadicMoments m = sporadic_moments(s, params.p, count + 1);
  std::vector<double> ratio(static_cast<std::size_t>(count) + 1);
  for (std::size_t i = 0; i < ratio.size(); ++i) ratio[i] = m.second[i] / m.mean[i];
  r.epsilon = -std::numeric_limits<double>::infinity();
  for (std::int64_t i = 0; i < count; ++i) {
    r.epsilon = std::max(r.epsilon, (ratio[i] - ratio[i + 1]) / m.second[i]);
  }
  const double cap = 1.0 / s(1);
  r.condition = "eps=" + std::to_string(r.epsilon) + " < B=" + std::to_string(params.B) +
                " < 1/gamma_1=" + std::to_string(cap);
  r.divergence.reserve(static_cast<std::size_t>(count));
  double d = d1;
  for (std::int64_t i = 0; i < count; ++i) {
    r.divergence.push_back(d);
    d = (1.0 - params.B * m.mean[i]) * d + params.C * m.second[i];
  }
  if (!(r.epsilon < params.B && params.B < cap)) {
    r.status = BoundStatus::kConditionViolated;
    return r;
  }
  r.constant = std::max(d1 / s(1), params.C / (params.B - r.epsilon));
  r.bound.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) r.bound.push_back(r.constant * ratio[i]);
  detail::finish_report(r);
  return r;
}

}  // namespace mxl
