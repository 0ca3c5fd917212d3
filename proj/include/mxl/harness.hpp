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

// Monte Carlo experiments over a learning game: equilibrium estimation,
// trajectory runs, strategy comparison and empirical rate-bound checks.
#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "mxl/config.hpp"
#include "mxl/errors.hpp"
#include "mxl/game.hpp"
#include "mxl/geometry.hpp"
#include "mxl/learner.hpp"
#include "mxl/mimo.hpp"
#include "mxl/rng.hpp"
#include "mxl/schedule.hpp"

namespace mxl {

/// Run id of the calibration run used by check_bounds; shares no stream
/// with any experiment run.
inline constexpr std::uint64_t kCalibrationRun = kAnyRun - 1;

/// Builds the energy-efficiency game of `cfg`. Static channels are drawn once
/// from the master seed, so every run and every strategy sees the same
/// network.
inline mimo::MimoGame make_mimo_game(const ExperimentConfig& cfg) {
  cfg.network.validate();
  Rng rng = substream(cfg.seed, kAnyRun, kAnyLink, StreamPurpose::kChannel);
  return mimo::MimoGame(cfg.network, mimo::draw_channels(cfg.network, rng));
}

// ---------------------------------------------------------------------------
// Equilibrium reference

struct NeOptions {
  std::int64_t iterations = 50000;
  double tail_fraction = 0.1;
  int draws_per_iteration = 64;  // stochastic games only
  double tolerance = 1e-6;
  std::uint64_t seed = 1;
  // gamma_n = step_alpha * n^(-step_nu); nu = 0 gives a constant step.
  double step_alpha = 0.2;
  double step_nu = 0.0;
};

/// Defaults by game type. With fresh draws every iteration the iterates keep
/// fluctuating around the equilibrium, so the estimate averages the last half
/// of a shorter run.
inline NeOptions default_ne_options(bool stochastic, std::uint64_t seed = 1) {
  NeOptions o;
  o.seed = seed;
  if (stochastic) {
    o.iterations = 3000;
    o.tail_fraction = 0.5;
  }
  return o;
}

struct NeEstimate {
  std::vector<FeasibleAction> actions;
  std::int64_t iterations = 0;
  std::int64_t tail = 0;
  int draws_per_iteration = 1;
  double tail_change = 0.0;  // max over links of the trace norm of X(end) - X(tail start)
  double tolerance = 0.0;
  bool converged = false;
  // max over links of A max(0, lambda_max(V_k)) - tr(X_k V_k) at the estimate:
  // the best unilateral first-order gain, zero exactly at an equilibrium.
  // Stochastic games average V_k over 16 * draws_per_iteration draws.
  double equilibrium_gap = 0.0;
};

/// First-order equilibrium gap of link actions `x` with partial gradients `v`
/// over the spectrahedron {X >= 0, tr X <= bound}.
inline double equilibrium_gap(const BlockHermitian& x, const BlockHermitian& v, double bound) {
  double top = 0.0;
  for (const auto& blk : v) top = std::max(top, eigenvalues(blk).maxCoeff());
  return bound * top - trace_product(x, v);
}

/// Noiseless full-feedback MXL; returns the average of the tail iterates.
/// With a stochastic environment each gradient is a sample average over
/// `draws_per_iteration` fresh environments.
template <Game G>
NeEstimate estimate_ne(const G& game, const NeOptions& opts = {}) {
  if (opts.iterations < 1) throw InvalidInput("estimate_ne: iterations must be >= 1");
  if (!(opts.tail_fraction > 0.0 && opts.tail_fraction <= 1.0)) {
    throw InvalidInput("estimate_ne: tail fraction must lie in (0, 1]");
  }
  if (opts.draws_per_iteration < 1) throw InvalidInput("estimate_ne: need at least one draw");
  if (!(opts.step_alpha > 0.0) || !(opts.step_nu >= 0.0 && opts.step_nu <= 1.0)) {
    throw InvalidInput("estimate_ne: step needs alpha > 0 and nu in [0, 1]");
  }
  const std::size_t links = game.links();
  const std::int64_t n_total = opts.iterations;
  const std::int64_t tail = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::floor(opts.tail_fraction * static_cast<double>(n_total))));
  const int draws = game.stochastic() ? opts.draws_per_iteration : 1;

  std::vector<LearnerState> states;
  {
    auto y0 = game.initial_dual();
    for (std::size_t k = 0; k < links; ++k) states.push_back(LearnerState::from_dual(k, y0[k], game.bound()));
  }
  Rng rng = substream(opts.seed, kAnyRun, kAnyLink, StreamPurpose::kCalibration);
  std::vector<BlockHermitian> sum(links), tail_start(links);
  std::vector<BlockHermitian> profile(links);

  auto snapshot = [&] {
    for (std::size_t k = 0; k < links; ++k) profile[k] = states[k].x.matrix();
  };
  snapshot();
  if (tail == n_total) tail_start = profile;

  for (std::int64_t n = 1; n <= n_total; ++n) {
    std::vector<BlockHermitian> grad(links);
    if (draws == 1 && !game.stochastic()) {
      auto ev = game.evaluate(profile, game.fixed_environment());
      for (std::size_t k = 0; k < links; ++k) grad[k] = std::move(ev[k].gradient);
    } else {
      for (int d = 0; d < draws; ++d) {
        auto ev = game.evaluate(profile, game.draw_environment(rng));
        for (std::size_t k = 0; k < links; ++k) {
          grad[k] = d == 0 ? std::move(ev[k].gradient) : grad[k] + ev[k].gradient;
        }
      }
      for (auto& g : grad) g = (1.0 / draws) * g;
    }
    const double step = opts.step_alpha * std::pow(static_cast<double>(n), -opts.step_nu);
    for (std::size_t k = 0; k < links; ++k) states[k] = mxl_step(states[k], grad[k], step);
    snapshot();
    if (n == n_total - tail) tail_start = profile;
    if (n > n_total - tail) {
      for (std::size_t k = 0; k < links; ++k) {
        sum[k] = n == n_total - tail + 1 ? profile[k] : sum[k] + profile[k];
      }
    }
  }

  NeEstimate out;
  out.iterations = n_total;
  out.tail = tail;
  out.draws_per_iteration = draws;
  out.tolerance = opts.tolerance;
  for (std::size_t k = 0; k < links; ++k) {
    out.tail_change = std::max(out.tail_change, trace_norm(profile[k] - tail_start[k]));
    out.actions.push_back(
        FeasibleAction::from_matrix((1.0 / static_cast<double>(tail)) * sum[k], game.bound(), kLogFloor));
  }
  out.converged = out.tail_change < opts.tolerance;

  std::vector<BlockHermitian> xbar(links);
  for (std::size_t k = 0; k < links; ++k) xbar[k] = out.actions[k].matrix();
  // Noise in a sample-average gradient inflates lambda_max, so the gap is
  // measured on a larger sample than the iterations used.
  const int gap_draws = game.stochastic() ? 16 * draws : 1;
  std::vector<BlockHermitian> grad(links);
  for (int d = 0; d < gap_draws; ++d) {
    auto ev = game.stochastic() ? game.evaluate(xbar, game.draw_environment(rng))
                                : game.evaluate(xbar, game.fixed_environment());
    for (std::size_t k = 0; k < links; ++k) grad[k] = d == 0 ? std::move(ev[k].gradient) : grad[k] + ev[k].gradient;
  }
  for (std::size_t k = 0; k < links; ++k) {
    const BlockHermitian v = (1.0 / gap_draws) * grad[k];
    out.equilibrium_gap = std::max(out.equilibrium_gap, equilibrium_gap(xbar[k], v, game.bound()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Trajectories

/// Per-iteration record of one run; flat arrays are indexed [(n - 1) * K + k].
struct RunTrace {
  std::int64_t run = 0;
  std::int64_t iters = 0;
  std::size_t links = 0;
  std::vector<double> ee;
  std::vector<double> divergence;  // d_KL(X_k*, X_k(n))
  std::vector<std::int64_t> cost;
  std::vector<double> gradient_energy;  // sum over links and entries of |V_hat|^2
  std::vector<double> stability;        // sum_k tr((X_k - X_k*) V_k), noiseless V

  double total_divergence(std::int64_t n) const {
    double d = 0.0;
    for (std::size_t k = 0; k < links; ++k) d += divergence[static_cast<std::size_t>(n - 1) * links + k];
    return d;
  }
};

struct Summary {
  std::int64_t runs = 0;
  std::int64_t iters = 0;
  std::size_t links = 0;
  std::vector<double> mean_div;  // of d_n = sum_k d_KL, per n
  std::vector<double> se_div;
  std::vector<double> mean_ee;  // [(n - 1) * K + k]
  std::vector<double> se_ee;
  double auc_se = 0.0;  // standard error of the per-run area under d_n

  double auc() const {
    double a = 0.0;
    for (double d : mean_div) a += d;
    return a;
  }
};

struct ExperimentResult {
  Summary summary;
  std::vector<RunTrace> traces;  // empty unless requested
};

namespace detail {

inline void mean_and_se(const std::vector<double>& x, double& mean, double& se) {
  const double r = static_cast<double>(x.size());
  double s = 0.0;
  for (double v : x) s += v;
  mean = s / r;
  if (x.size() < 2) {
    se = 0.0;
    return;
  }
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  se = std::sqrt(ss / (r - 1.0)) / std::sqrt(r);
}

inline bool is_finite(const BlockHermitian& v) {
  for (const auto& blk : v) {
    if (!blk.matrix().allFinite()) return false;
  }
  return true;
}

}  // namespace detail

/// One independent run. Channel, noise, mask and delivery randomness come
/// from substreams of (seed, run_id, link), so strategies sharing a seed
/// share channels and noise.
template <Game G>
RunTrace simulate_run(const G& game, const std::vector<FeasibleAction>& xstar, const ExperimentConfig& cfg,
                      std::uint64_t run_id, const FeedbackStrategy& strategy) {
  const std::size_t links = game.links();
  if (xstar.size() != links) throw InvalidInput("simulate_run: one reference action per link required");
  const auto n_total = cfg.iters;

  RunTrace t;
  t.run = static_cast<std::int64_t>(run_id);
  t.iters = n_total;
  t.links = links;
  const auto cells = static_cast<std::size_t>(n_total) * links;
  t.ee.resize(cells);
  t.divergence.resize(cells);
  t.cost.resize(cells);
  t.gradient_energy.resize(static_cast<std::size_t>(n_total));
  t.stability.resize(static_cast<std::size_t>(n_total));

  std::vector<LearnerState> states;
  std::vector<LinkStreams> streams;
  std::vector<Rng> noise;
  {
    auto y0 = game.initial_dual();
    for (std::size_t k = 0; k < links; ++k) {
      states.push_back(LearnerState::from_dual(k, std::move(y0[k]), game.bound()));
      streams.push_back(LinkStreams::make(cfg.seed, run_id, k));
      noise.push_back(substream(cfg.seed, run_id, k, StreamPurpose::kNoise));
    }
  }
  Rng channel_rng = substream(cfg.seed, run_id, kAnyLink, StreamPurpose::kChannel);
  typename G::Environment env = game.fixed_environment();
  const double sigma2 = game.sigma2();

  std::vector<BlockHermitian> profile(links), noisy(links);
  for (std::int64_t n = 1; n <= n_total; ++n) {
    if (game.stochastic()) env = game.draw_environment(channel_rng);
    for (std::size_t k = 0; k < links; ++k) profile[k] = states[k].x.matrix();
    auto ev = game.evaluate(profile, env);
    double energy = 0.0;
    double stab = 0.0;
    for (std::size_t k = 0; k < links; ++k) {
      const auto cell = static_cast<std::size_t>(n - 1) * links + k;
      const double d = quantum_kl(xstar[k], states[k].x);
      if (!std::isfinite(ev[k].utility) || !std::isfinite(d) || !detail::is_finite(ev[k].gradient)) {
        throw DomainError("non-finite value in run " + std::to_string(run_id) + ", iteration " +
                          std::to_string(n) + ", link " + std::to_string(k + 1) +
                          " (utility=" + std::to_string(ev[k].utility) + ", divergence=" + std::to_string(d) + ")");
      }
      t.ee[cell] = ev[k].utility;
      t.divergence[cell] = d;
      stab += trace_product(profile[k] - xstar[k].matrix(), ev[k].gradient);
      noisy[k] = mimo::noisy_gradient(ev[k].gradient, sigma2, noise[k]);
      energy += squared_frobenius(noisy[k]);
    }
    t.gradient_energy[static_cast<std::size_t>(n - 1)] = energy;
    t.stability[static_cast<std::size_t>(n - 1)] = stab;
    RoundOutcome out = run_round(states, noisy, strategy, n, cfg.schedule, streams, cfg.cost_convention);
    for (std::size_t k = 0; k < links; ++k) t.cost[static_cast<std::size_t>(n - 1) * links + k] = out.cost[k];
    states = std::move(out.states);
  }
  return t;
}

/// Mean and standard error across runs, reduced in run order.
inline Summary summarize(const std::vector<RunTrace>& traces) {
  if (traces.empty()) throw InvalidInput("summarize: no runs");
  Summary s;
  s.runs = static_cast<std::int64_t>(traces.size());
  s.iters = traces.front().iters;
  s.links = traces.front().links;
  const auto n_total = static_cast<std::size_t>(s.iters);
  s.mean_div.resize(n_total);
  s.se_div.resize(n_total);
  s.mean_ee.resize(n_total * s.links);
  s.se_ee.resize(n_total * s.links);
  std::vector<double> column(traces.size());
  std::vector<double> areas(traces.size(), 0.0);
  for (std::size_t i = 0; i < n_total; ++i) {
    for (std::size_t r = 0; r < traces.size(); ++r) {
      column[r] = traces[r].total_divergence(static_cast<std::int64_t>(i) + 1);
      areas[r] += column[r];
    }
    detail::mean_and_se(column, s.mean_div[i], s.se_div[i]);
    for (std::size_t k = 0; k < s.links; ++k) {
      for (std::size_t r = 0; r < traces.size(); ++r) column[r] = traces[r].ee[i * s.links + k];
      detail::mean_and_se(column, s.mean_ee[i * s.links + k], s.se_ee[i * s.links + k]);
    }
  }
  double area_mean = 0.0;
  detail::mean_and_se(areas, area_mean, s.auc_se);
  return s;
}

/// Runs cfg.runs independent trajectories on cfg.threads workers. Results do
/// not depend on the number of workers.
template <Game G>
ExperimentResult run_experiment(const G& game, const std::vector<FeasibleAction>& xstar,
                                const ExperimentConfig& cfg, bool keep_traces = true) {
  cfg.validate();
  const auto runs = static_cast<std::size_t>(cfg.runs);
  std::vector<RunTrace> traces(runs);
  unsigned workers = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, runs));

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  std::size_t error_run = runs;
  auto work = [&] {
    for (std::size_t r = next++; r < runs; r = next++) {
      try {
        traces[r] = simulate_run(game, xstar, cfg, r, cfg.strategy);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (r < error_run) {
          error_run = r;
          error = std::current_exception();
        }
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);

  ExperimentResult result;
  result.summary = summarize(traces);
  if (keep_traces) result.traces = std::move(traces);
  return result;
}

// ---------------------------------------------------------------------------
// Strategy comparison

struct StrategyCurve {
  std::string label;
  FeedbackStrategy strategy;
  Summary summary;
  double auc = 0.0;
};

struct ComparisonReport {
  std::vector<StrategyCurve> curves;  // full, I(0.2), I(0.5), S(0.2), S(0.5)
  double incomplete_gap = 0.0;        // mean_n |D_n(I 0.5) - D_n(I 0.2)|
  double sporadic_gap = 0.0;

  const StrategyCurve& at(const std::string& label) const {
    for (const auto& c : curves) {
      if (c.label == label) return c;
    }
    throw InvalidInput("no curve labelled " + label);
  }
};

inline double sensitivity_gap(const Summary& a, const Summary& b) {
  if (a.mean_div.size() != b.mean_div.size()) throw InvalidInput("sensitivity_gap: horizon mismatch");
  double g = 0.0;
  for (std::size_t i = 0; i < a.mean_div.size(); ++i) g += std::abs(a.mean_div[i] - b.mean_div[i]);
  return g / static_cast<double>(a.mean_div.size());
}

inline std::vector<std::pair<std::string, FeedbackStrategy>> comparison_strategies() {
  return {{"full", FullFeedback{}},
          {"I(0.2)", IncompleteFeedback{0.2}},
          {"I(0.5)", IncompleteFeedback{0.5}},
          {"S(0.2)", SporadicFeedback{0.2}},
          {"S(0.5)", SporadicFeedback{0.5}}};
}

/// The five reference configurations under common random numbers (same seed,
/// so channel and noise substreams coincide across strategies).
template <Game G>
ComparisonReport compare_strategies(const G& game, const std::vector<FeasibleAction>& xstar,
                                    const ExperimentConfig& base) {
  ComparisonReport rep;
  for (auto& [label, strategy] : comparison_strategies()) {
    ExperimentConfig cfg = base;
    cfg.strategy = strategy;
    ExperimentResult res = run_experiment(game, xstar, cfg, false);
    const double auc = res.summary.auc();
    rep.curves.push_back({label, strategy, std::move(res.summary), auc});
  }
  rep.incomplete_gap = sensitivity_gap(rep.at("I(0.5)").summary, rep.at("I(0.2)").summary);
  rep.sporadic_gap = sensitivity_gap(rep.at("S(0.5)").summary, rep.at("S(0.2)").summary);
  return rep;
}

// ---------------------------------------------------------------------------
// Empirical rate bounds

struct BoundCheckReport {
  double B = 0.0;
  bool B_fitted = false;  // B taken from the trajectory fit rather than the user
  double B_fit = 0.0;     // min over sampled points of -tr((X - X*) V) / d_KL(X*, X)
  double C = 0.0;
  bool C_estimated = false;
  double p = 1.0;
  bool sporadic = false;
  BoundStatus status = BoundStatus::kConditionViolated;
  BoundRecursionReport recursion;  // deterministic recursion from D_1 = empirical mean
  Summary empirical;
  std::int64_t violations = 0;
  double violation_fraction = 0.0;  // meaningless when the condition fails
};

/// Largest B with tr((X - X*) V(X)) <= -B d_KL(X*, X) on every sampled
/// point whose divergence exceeds `floor`.
inline double fit_stability_constant(const std::vector<RunTrace>& traces, double floor = 1e-9) {
  double b = std::numeric_limits<double>::infinity();
  for (const auto& t : traces) {
    for (std::int64_t n = 1; n <= t.iters; ++n) {
      const double d = t.total_divergence(n);
      if (d > floor) b = std::min(b, -t.stability[static_cast<std::size_t>(n - 1)] / d);
    }
  }
  return b;
}

/// Overlays the empirical mean divergence against the rate bound of the
/// configured strategy. B and C are fitted when not supplied; C is the largest
/// gradient energy seen along a full-feedback calibration run.
template <Game G>
BoundCheckReport check_bounds(const G& game, const std::vector<FeasibleAction>& xstar,
                              const ExperimentConfig& cfg, std::optional<double> B = std::nullopt,
                              std::optional<double> C = std::nullopt) {
  BoundCheckReport rep;
  rep.sporadic = std::holds_alternative<SporadicFeedback>(cfg.strategy);
  rep.p = feedback_probability(cfg.strategy);

  ExperimentResult res = run_experiment(game, xstar, cfg, true);
  rep.B_fit = fit_stability_constant(res.traces);
  rep.B_fitted = !B.has_value();
  rep.B = B.value_or(rep.B_fit);
  if (C) {
    rep.C = *C;
  } else {
    rep.C_estimated = true;
    const RunTrace cal = simulate_run(game, xstar, cfg, kCalibrationRun, FullFeedback{});
    rep.C = *std::max_element(cal.gradient_energy.begin(), cal.gradient_energy.end());
  }
  rep.empirical = std::move(res.summary);
  res.traces.clear();

  if (!(std::isfinite(rep.B) && rep.B > 0.0) || !(rep.C >= 0.0)) {
    rep.status = BoundStatus::kConditionViolated;
    rep.recursion.condition = "B=" + std::to_string(rep.B) + " must be positive and finite";
    return rep;
  }
  const RateBoundParams params{rep.B, rep.C, rep.p};
  const double d1 = rep.empirical.mean_div.front();
  if (rep.sporadic) {
    rep.recursion = bound_recursion_mxls(params, cfg.schedule, d1, cfg.iters);
  } else {
    rep.recursion = bound_recursion_mxli(params, cfg.schedule, d1, cfg.iters);
  }
  if (!rep.recursion.condition_holds()) {
    rep.status = BoundStatus::kConditionViolated;
    return rep;
  }
  for (std::size_t i = 0; i < rep.empirical.mean_div.size(); ++i) {
    if (rep.empirical.mean_div[i] + 2.0 * rep.empirical.se_div[i] > rep.recursion.bound[i]) ++rep.violations;
  }
  rep.violation_fraction =
      static_cast<double>(rep.violations) / static_cast<double>(rep.empirical.mean_div.size());
  rep.status = rep.violations == 0 ? BoundStatus::kHolds : BoundStatus::kExceeded;
  return rep;
}

// ---------------------------------------------------------------------------
// Step-size schedule checks

struct ScheduleCheckReport {
  double epsilon = 0.0;        // sup_n (gamma_n - gamma_{n+1}) / gamma_n^2
  double epsilon_limit = 0.0;  // epsilon_bar(nu) / alpha
  struct PerProbability {
    double p = 0.0;
    SumIdentityReport sums;
    std::int64_t ratio_horizon = 0;
    std::int64_t ratio_bound_failures = 0;  // n with exact ratio > Chernoff bound
    double slope = 0.0;                     // log-log slope of the exact ratio
    double slope_lo = 0.0;
    double slope_hi = 0.0;

    bool passed() const {
      return sums.passed() && ratio_bound_failures == 0 && slope >= slope_lo && slope <= slope_hi;
    }
  };
  std::vector<PerProbability> sporadic;

  bool passed() const {
    if (!(epsilon <= epsilon_limit * (1.0 + 1e-12))) return false;
    return std::all_of(sporadic.begin(), sporadic.end(), [](const auto& q) { return q.passed(); });
  }
};

/// Numeric checks of the schedule lemmas: the drift constant against its
/// closed-form bound, the sporadic moment sums, the Chernoff ratio bound for
/// n <= ratio_horizon and the -nu decay of second_n / mean_n between
/// slope_from and 10 * slope_from.
inline ScheduleCheckReport check_schedule(const StepSchedule& s, const std::vector<double>& probabilities,
                                          std::int64_t truncation = 2000, std::int64_t ratio_horizon = 500,
                                          std::int64_t slope_from = 1000) {
  ScheduleCheckReport r;
  r.epsilon = epsilon_sup(s);
  r.epsilon_limit = epsilon_bar(s.nu()) / s.alpha();
  for (double p : probabilities) {
    ScheduleCheckReport::PerProbability q;
    q.p = p;
    q.sums = check_sum_identities(s, p, truncation);
    q.ratio_horizon = ratio_horizon;
    const SporadicMoments m = sporadic_moments(s, p, ratio_horizon + 1);
    for (std::int64_t n = 1; n <= ratio_horizon; ++n) {
      const double exact = m.second[static_cast<std::size_t>(n)] / m.mean[static_cast<std::size_t>(n)];
      if (exact > rate_ratio_bound(s, p, n) * (1.0 + 1e-12)) ++q.ratio_bound_failures;
    }
    const std::int64_t slope_to = 10 * slope_from;
    q.slope = (std::log(sporadic_ratio(s, p, slope_to)) - std::log(sporadic_ratio(s, p, slope_from))) /
              std::log(static_cast<double>(slope_to) / static_cast<double>(slope_from));
    q.slope_lo = -1.05 * s.nu();
    q.slope_hi = -0.95 * s.nu();
    r.sporadic.push_back(q);
  }
  return r;
}

}  // namespace mxl
