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

// mxl-sim: command line front end of the experiment harness.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mxl/io.hpp"
#include "mxl/mxl.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = "out";
  std::optional<std::int64_t> runs;
  std::optional<std::int64_t> iters;
  std::optional<std::string> strategy;
  std::optional<double> p;
  std::optional<std::string> channel_mode;
  unsigned threads = 0;
  std::string ne_ref;
  std::optional<std::int64_t> ne_iters;
};

void add_common(CLI::App* app, CommonFlags& f) {
  app->add_option("--config", f.config, "key = value configuration file")->check(CLI::ExistingFile);
  app->add_option("--seed", f.seed, "master seed");
  app->add_option("--out", f.out, "output directory")->capture_default_str();
  app->add_option("--runs", f.runs, "independent runs R");
  app->add_option("--iters", f.iters, "iterations per run N");
  app->add_option("--strategy", f.strategy, "feedback strategy")
      ->check(CLI::IsMember({"full", "incomplete", "sporadic"}));
  app->add_option("--p", f.p, "feedback probability of the incomplete/sporadic strategy");
  app->add_option("--channel-mode", f.channel_mode, "static or iid")->check(CLI::IsMember({"static", "iid"}));
  app->add_option("--threads", f.threads, "worker threads (0: all cores)");
  app->add_option("--ne-ref", f.ne_ref, "stored equilibrium reference (JSON from estimate-ne)");
  app->add_option("--ne-iters", f.ne_iters, "iterations of the equilibrium estimation");
}

mxl::ExperimentConfig resolve(const CommonFlags& f) {
  mxl::ExperimentConfig cfg;
  if (!f.config.empty()) cfg = mxl::load_config(f.config);
  if (f.seed) cfg.seed = *f.seed;
  if (f.runs) cfg.runs = *f.runs;
  if (f.iters) cfg.iters = *f.iters;
  if (f.channel_mode) cfg.network.channel_mode = mxl::parse_channel_mode(*f.channel_mode);
  if (f.strategy || f.p) {
    std::string name = f.strategy.value_or(mxl::to_string(cfg.strategy));
    name = name.substr(0, name.find('('));
    cfg.strategy = mxl::make_strategy(name, f.p.value_or(mxl::feedback_probability(cfg.strategy)));
  }
  cfg.threads = f.threads;
  cfg.ne_ref = f.ne_ref;
  cfg.validate();
  return cfg;
}

mxl::NeOptions ne_options(const mxl::ExperimentConfig& cfg, const CommonFlags& f) {
  const bool iid = cfg.network.channel_mode == mxl::mimo::ChannelMode::kIidPerIteration;
  mxl::NeOptions opts = mxl::default_ne_options(iid, cfg.seed);
  if (f.ne_iters) opts.iterations = *f.ne_iters;
  return opts;
}

struct Reference {
  mxl::NeEstimate ne;
  std::string source;
};

Reference reference(const mxl::mimo::MimoGame& game, const mxl::ExperimentConfig& cfg, const CommonFlags& f) {
  if (!cfg.ne_ref.empty()) {
    auto ne = mxl::load_ne_reference(cfg.ne_ref);
    if (ne.actions.size() != cfg.network.K) throw mxl::InvalidInput("equilibrium reference has the wrong number of links");
    return {std::move(ne), cfg.ne_ref};
  }
  std::cerr << "estimating equilibrium reference...\n";
  auto ne = mxl::estimate_ne(game, ne_options(cfg, f));
  if (!ne.converged) {
    std::cerr << "warning: equilibrium estimate not stationary (tail change " << ne.tail_change << ")\n";
  }
  return {std::move(ne), "estimated"};
}

nlohmann::ordered_json base_meta(const mxl::ExperimentConfig& cfg, const char* command) {
  nlohmann::ordered_json meta;
  meta["software"] = std::string("mxl ") + mxl::version();
  meta["command"] = command;
  meta["config"] = mxl::config_json(cfg);
  meta["seed"] = cfg.seed;
  return meta;
}

std::vector<mxl::FeasibleAction> actions(const Reference& ref) { return ref.ne.actions; }

int cmd_run(const CommonFlags& f) {
  const auto cfg = resolve(f);
  const auto game = mxl::make_mimo_game(cfg);
  const auto ref = reference(game, cfg, f);
  const auto res = mxl::run_experiment(game, actions(ref), cfg, true);
  fs::create_directories(f.out);
  mxl::write_text(fs::path(f.out) / "trajectories.csv", [&](std::ostream& o) { mxl::write_trajectories(o, res.traces); });
  mxl::write_text(fs::path(f.out) / "summary.csv", [&](std::ostream& o) { mxl::write_summary(o, res.summary); });
  auto meta = base_meta(cfg, "run");
  meta["ne_reference"] = mxl::ne_diagnostics_json(ref.ne, ref.source);
  mxl::write_json(fs::path(f.out) / "meta.json", meta);
  const auto& s = res.summary;
  std::printf("runs=%lld iters=%lld strategy=%s\n", static_cast<long long>(s.runs),
              static_cast<long long>(s.iters), mxl::to_string(cfg.strategy).c_str());
  std::printf("mean divergence: n=1 %.6g, n=%lld %.6g\n", s.mean_div.front(), static_cast<long long>(s.iters),
              s.mean_div.back());
  return 0;
}

int cmd_compare(const CommonFlags& f) {
  const auto cfg = resolve(f);
  const auto game = mxl::make_mimo_game(cfg);
  const auto ref = reference(game, cfg, f);
  const auto rep = mxl::compare_strategies(game, actions(ref), cfg);
  fs::create_directories(f.out);
  mxl::write_text(fs::path(f.out) / "comparison.csv", [&](std::ostream& o) {
    o << "iter";
    for (const auto& c : rep.curves) o << ",mean_div_" << c.label << ",se_div_" << c.label;
    o << '\n';
    for (std::int64_t i = 0; i < cfg.iters; ++i) {
      o << i + 1;
      for (const auto& c : rep.curves) {
        o << ',' << mxl::format_double(c.summary.mean_div[static_cast<std::size_t>(i)]) << ','
          << mxl::format_double(c.summary.se_div[static_cast<std::size_t>(i)]);
      }
      o << '\n';
    }
  });
  auto meta = base_meta(cfg, "compare");
  meta["ne_reference"] = mxl::ne_diagnostics_json(ref.ne, ref.source);
  for (const auto& c : rep.curves) meta["auc"][c.label] = c.auc;
  meta["sensitivity_gap"]["incomplete"] = rep.incomplete_gap;
  meta["sensitivity_gap"]["sporadic"] = rep.sporadic_gap;
  mxl::write_json(fs::path(f.out) / "meta.json", meta);
  for (const auto& c : rep.curves) {
    std::printf("%-7s AUC %.6g  D_1 %.6g  D_N %.6g\n", c.label.c_str(), c.auc, c.summary.mean_div.front(),
                c.summary.mean_div.back());
  }
  std::printf("sensitivity gap: incomplete %.6g, sporadic %.6g\n", rep.incomplete_gap, rep.sporadic_gap);
  return 0;
}

int cmd_estimate_ne(const CommonFlags& f) {
  const auto cfg = resolve(f);
  const auto game = mxl::make_mimo_game(cfg);
  const auto ne = mxl::estimate_ne(game, ne_options(cfg, f));
  fs::create_directories(f.out);
  mxl::write_json(fs::path(f.out) / "ne_reference.json", mxl::ne_reference_json(ne));
  auto meta = base_meta(cfg, "estimate-ne");
  meta["ne_reference"] = mxl::ne_diagnostics_json(ne, "estimated");
  mxl::write_json(fs::path(f.out) / "meta.json", meta);
  std::printf("iterations=%lld tail=%lld tail_change=%.3e converged=%s equilibrium_gap=%.3e\n",
              static_cast<long long>(ne.iterations), static_cast<long long>(ne.tail), ne.tail_change,
              ne.converged ? "yes" : "no", ne.equilibrium_gap);
  return 0;
}

int cmd_check_bounds(const CommonFlags& f, std::optional<double> B, std::optional<double> C) {
  const auto cfg = resolve(f);
  const auto game = mxl::make_mimo_game(cfg);
  const auto ref = reference(game, cfg, f);
  const auto rep = mxl::check_bounds(game, actions(ref), cfg, B, C);
  fs::create_directories(f.out);
  mxl::write_text(fs::path(f.out) / "bounds.csv", [&](std::ostream& o) {
    o << "iter,mean_div,se_div,bound,recursion\n";
    for (std::size_t i = 0; i < rep.empirical.mean_div.size(); ++i) {
      o << i + 1 << ',' << mxl::format_double(rep.empirical.mean_div[i]) << ','
        << mxl::format_double(rep.empirical.se_div[i]) << ','
        << (rep.recursion.bound.empty() ? std::string() : mxl::format_double(rep.recursion.bound[i])) << ','
        << mxl::format_double(rep.recursion.divergence[i]) << '\n';
    }
  });
  auto meta = base_meta(cfg, "check-bounds");
  meta["ne_reference"] = mxl::ne_diagnostics_json(ref.ne, ref.source);
  meta["B"] = rep.B;
  meta["B_source"] = rep.B_fitted ? "fitted" : "user";
  meta["B_fit"] = rep.B_fit;
  meta["C"] = rep.C;
  meta["C_source"] = rep.C_estimated ? "calibration" : "user";
  meta["condition"] = rep.recursion.condition;
  meta["status"] = mxl::to_string(rep.status);
  if (rep.status != mxl::BoundStatus::kConditionViolated) {
    meta["violation_fraction"] = rep.violation_fraction;
    meta["recursion_status"] = mxl::to_string(rep.recursion.status);
  }
  mxl::write_json(fs::path(f.out) / "meta.json", meta);
  std::printf("B=%.6g (%s, fit %.6g) C=%.6g (%s)\n", rep.B, rep.B_fitted ? "fitted" : "user", rep.B_fit, rep.C,
              rep.C_estimated ? "calibration" : "user");
  std::printf("condition: %s\n", rep.recursion.condition.c_str());
  if (rep.status == mxl::BoundStatus::kConditionViolated) {
    std::printf("status: condition-violated, no bound claimed\n");
  } else {
    std::printf("status: %s, violation fraction %.4g, recursion %s\n", mxl::to_string(rep.status),
                rep.violation_fraction, mxl::to_string(rep.recursion.status));
  }
  return 0;
}

int cmd_check_schedule(const CommonFlags& f) {
  const auto cfg = resolve(f);
  const auto rep = mxl::check_schedule(cfg.schedule, {0.2, 0.5, 0.8});
  std::printf("alpha=%g nu=%g\n", cfg.schedule.alpha(), cfg.schedule.nu());
  std::printf("epsilon_sup=%.10g  epsilon_bar/alpha=%.10g  %s\n", rep.epsilon, rep.epsilon_limit,
              rep.epsilon <= rep.epsilon_limit * (1 + 1e-12) ? "ok" : "FAIL");
  for (const auto& q : rep.sporadic) {
    std::printf("p=%.2f  sum gaps %.3e/%.3e (tol %.3e/%.3e) jensen %s  ratio bound failures %lld/%lld  "
                "slope %.4f in [%.4f, %.4f]  %s\n",
                q.p, q.sums.mean_gap, q.sums.second_gap, q.sums.mean_tolerance, q.sums.second_tolerance,
                q.sums.jensen_holds ? "ok" : "FAIL", static_cast<long long>(q.ratio_bound_failures),
                static_cast<long long>(q.ratio_horizon), q.slope, q.slope_lo, q.slope_hi, q.passed() ? "ok" : "FAIL");
  }
  return rep.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matrix exponential learning on the MIMO energy-efficiency game"};
  app.set_version_flag("--version", std::string("mxl ") + mxl::version());
  app.require_subcommand(1);

  CommonFlags run_f, cmp_f, ne_f, bnd_f, sch_f;
  auto* run = app.add_subcommand("run", "Monte Carlo trajectories of one strategy");
  add_common(run, run_f);
  auto* cmp = app.add_subcommand("compare", "full, I(0.2), I(0.5), S(0.2), S(0.5) under common random numbers");
  add_common(cmp, cmp_f);
  auto* ne = app.add_subcommand("estimate-ne", "estimate and store the equilibrium reference");
  add_common(ne, ne_f);
  auto* bnd = app.add_subcommand("check-bounds", "empirical divergence against the rate bound");
  add_common(bnd, bnd_f);
  std::optional<double> B, C;
  bnd->add_option("--B", B, "strong-stability constant (fitted when omitted)");
  bnd->add_option("--C", C, "gradient second-moment bound (calibrated when omitted)");
  auto* sch = app.add_subcommand("check-schedule", "numeric checks of the step-size schedule");
  add_common(sch, sch_f);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return cmd_run(run_f);
    if (*cmp) return cmd_compare(cmp_f);
    if (*ne) return cmd_estimate_ne(ne_f);
    if (*bnd) return cmd_check_bounds(bnd_f, B, C);
    if (*sch) return cmd_check_schedule(sch_f);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
