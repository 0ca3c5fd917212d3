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


#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "mxl/io.hpp"
#include "mxl/mxl.hpp"
#include "support.hpp"

namespace mxl {
namespace {

using testing::Gen;

ExperimentConfig small_mimo_config() {
  ExperimentConfig cfg;
  cfg.network.K = 3;
  cfg.network.Nt = 2;
  cfg.network.Nr = 3;
  cfg.network.S = 2;
  cfg.runs = 6;
  cfg.iters = 30;
  cfg.seed = 5;
  return cfg;
}

ExperimentConfig toy_config(FeedbackStrategy s, std::int64_t runs, std::int64_t iters) {
  ExperimentConfig cfg;
  cfg.strategy = s;
  cfg.runs = runs;
  cfg.iters = iters;
  cfg.threads = 1;
  return cfg;
}

double grid_maximizer(const ScalarToyGame& game) {
  double best = 0.5, value = -std::numeric_limits<double>::infinity();
  for (int i = 1; i < 1000000; ++i) {
    const double x = i * 1e-6;
    const double u = game.utility(x);
    if (u > value) {
      value = u;
      best = x;
    }
  }
  return best;
}

std::string csv(const std::vector<RunTrace>& traces) {
  std::ostringstream out;
  write_trajectories(out, traces);
  return out.str();
}

TEST(Config, ParsesEveryKey) {
  const ExperimentConfig cfg = parse_config(
      "# network\n"
      "K = 4\nNt = 2\nNr = 3\nS = 1\n"
      "Pc_dBm = 20\nPmax_dBm = 30\nsigma2 = 0.5\n"
      "\n"
      "alpha = 0.1\nnu = 0.6\np = 0.25\nstrategy = sporadic\n"
      "runs = 7\niters = 11\nchannel_mode = iid\nseed = 42\n");
  EXPECT_EQ(cfg.network.K, 4u);
  EXPECT_EQ(cfg.network.Nt, 2);
  EXPECT_EQ(cfg.network.Nr, 3);
  EXPECT_EQ(cfg.network.S, 1u);
  EXPECT_NEAR(cfg.network.Pc, 0.1, 1e-15);
  EXPECT_NEAR(cfg.network.Pmax, 1.0, 1e-15);
  EXPECT_EQ(cfg.network.sigma2, 0.5);
  EXPECT_EQ(cfg.schedule.alpha(), 0.1);
  EXPECT_EQ(cfg.schedule.nu(), 0.6);
  ASSERT_TRUE(std::holds_alternative<SporadicFeedback>(cfg.strategy));
  EXPECT_EQ(feedback_probability(cfg.strategy), 0.25);
  EXPECT_EQ(cfg.runs, 7);
  EXPECT_EQ(cfg.iters, 11);
  EXPECT_EQ(cfg.network.channel_mode, mimo::ChannelMode::kIidPerIteration);
  EXPECT_EQ(cfg.seed, 42u);
}

TEST(Config, Errors) {
  EXPECT_THROW(parse_config("K = 3\nbogus = 1\n"), InvalidInput);
  EXPECT_THROW(parse_config("K = 3\nK = 4\n"), InvalidInput);
  EXPECT_THROW(parse_config("K = three\n"), InvalidInput);
  EXPECT_THROW(parse_config("K 3\n"), InvalidInput);
  EXPECT_THROW(parse_config("K =\n"), InvalidInput);
  EXPECT_THROW(parse_config("K = 0\n"), InvalidInput);
  EXPECT_THROW(parse_config("nu = 0.4\n"), InvalidInput);
  EXPECT_THROW(parse_config("strategy = incomplete\np = 0\n"), InvalidInput);
  EXPECT_THROW(parse_config("channel_mode = fading\n"), InvalidInput);
  EXPECT_THROW(load_config("/nonexistent/mxl.cfg"), InvalidInput);
}

TEST(EstimateNe, ToyMatchesGridOracle) {
  for (double target : {0.2, 0.55, 0.9}) {
    const ScalarToyGame game(target, 1.0);
    const NeEstimate ne = estimate_ne(game);
    EXPECT_TRUE(ne.converged);
    EXPECT_NEAR(ne.actions[0].matrix()[0](0, 0).real(), grid_maximizer(game), 1e-4);
    EXPECT_LT(ne.equilibrium_gap, 1e-8);
  }
}

TEST(EstimateNe, SeedStability) {
  const ScalarToyGame toy(0.3, 2.0, 0.0, 2);
  NeOptions a = default_ne_options(false, 1), b = default_ne_options(false, 2);
  const NeEstimate ea = estimate_ne(toy, a), eb = estimate_ne(toy, b);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_LT(trace_norm(ea.actions[k].matrix() - eb.actions[k].matrix()), 1e-4);
  }
}

TEST(EstimateNe, VariationalInequality) {
  ExperimentConfig cfg = small_mimo_config();
  cfg.network.K = 2;
  cfg.network.Nr = 2;
  const auto game = make_mimo_game(cfg);
  const NeEstimate ne = estimate_ne(game);
  std::vector<BlockHermitian> xstar;
  for (const auto& a : ne.actions) xstar.push_back(a.matrix());
  const auto ev = game.evaluate(xstar, game.fixed_environment());
  Gen g(70);
  for (int i = 0; i < 100; ++i) {
    for (std::size_t k = 0; k < 2; ++k) {
      const BlockHermitian x = testing::random_feasible(cfg.network.S, cfg.network.Nt, g).matrix();
      ASSERT_LE(trace_product(x - xstar[k], ev[k].gradient), 1e-4);
    }
  }
}

TEST(EstimateNe, InvalidOptions) {
  const ScalarToyGame toy(0.3, 1.0);
  NeOptions o;
  o.iterations = 0;
  EXPECT_THROW(estimate_ne(toy, o), InvalidInput);
  o = {};
  o.tail_fraction = 0.0;
  EXPECT_THROW(estimate_ne(toy, o), InvalidInput);
}

TEST(Experiment, DeterministicAcrossThreadCounts) {
  ExperimentConfig cfg = small_mimo_config();
  const auto game = make_mimo_game(cfg);
  const auto xstar = estimate_ne(game).actions;
  for (const FeedbackStrategy& s :
       {FeedbackStrategy{IncompleteFeedback{0.3}}, FeedbackStrategy{SporadicFeedback{0.3}}}) {
    cfg.strategy = s;
    cfg.threads = 1;
    const ExperimentResult one = run_experiment(game, xstar, cfg);
    cfg.threads = 4;
    const ExperimentResult four = run_experiment(game, xstar, cfg);
    const ExperimentResult again = run_experiment(game, xstar, cfg);
    EXPECT_EQ(csv(one.traces), csv(four.traces));
    EXPECT_EQ(csv(four.traces), csv(again.traces));
    std::ostringstream a, b;
    write_summary(a, one.summary);
    write_summary(b, four.summary);
    EXPECT_EQ(a.str(), b.str());
  }
}

TEST(Experiment, IidModeIsDeterministicToo) {
  ExperimentConfig cfg = small_mimo_config();
  cfg.network.channel_mode = mimo::ChannelMode::kIidPerIteration;
  const auto game = make_mimo_game(cfg);
  NeOptions o = default_ne_options(true);
  o.iterations = 20;
  o.draws_per_iteration = 4;
  const auto xstar = estimate_ne(game, o).actions;
  cfg.threads = 1;
  const std::string a = csv(run_experiment(game, xstar, cfg).traces);
  cfg.threads = 3;
  EXPECT_EQ(a, csv(run_experiment(game, xstar, cfg).traces));
}

TEST(Experiment, ReductionsGiveIdenticalCurves) {
  ExperimentConfig cfg = small_mimo_config();
  const auto game = make_mimo_game(cfg);
  const auto xstar = estimate_ne(game).actions;
  cfg.strategy = FullFeedback{};
  const std::string full = csv(run_experiment(game, xstar, cfg).traces);
  cfg.strategy = IncompleteFeedback{1.0};
  const std::string inc = csv(run_experiment(game, xstar, cfg).traces);
  cfg.strategy = SporadicFeedback{1.0};
  const std::string spo = csv(run_experiment(game, xstar, cfg).traces);
  // Divergence and EE columns agree; cost differs only by convention for I(1).
  auto strip_cost = [](const std::string& s) {
    std::istringstream in(s);
    std::string line, out;
    while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + '\n';
    return out;
  };
  EXPECT_EQ(full, spo);
  EXPECT_EQ(strip_cost(full), strip_cost(inc));
}

TEST(Experiment, ToyDivergenceIsMonotoneWithoutNoise) {
  const ScalarToyGame toy(0.3, 1.0, 0.0, 1, 3.0);
  const auto xstar = estimate_ne(toy).actions;
  const ExperimentResult res = run_experiment(toy, xstar, toy_config(FullFeedback{}, 1, 500));
  const auto& d = res.summary.mean_div;
  EXPECT_GT(d.front(), 0.1);
  for (std::size_t i = 10; i < d.size(); ++i) ASSERT_LE(d[i], d[i - 1]) << i;
  for (double x : d) ASSERT_GE(x, 0.0);
}

TEST(Experiment, ReferenceConfigFullFeedbackDecay) {
  const ExperimentConfig cfg;  // K=9, Nt=4, Nr=8, S=3, 100 runs of 1000 iterations
  const auto game = make_mimo_game(cfg);
  const auto xstar = estimate_ne(game).actions;
  const Summary s = run_experiment(game, xstar, cfg, false).summary;
  EXPECT_LT(s.mean_div.back(), 0.01 * s.mean_div.front())
      << "D_1 = " << s.mean_div.front() << ", D_1000 = " << s.mean_div.back();
}

TEST(Experiment, StandardErrorIsSampleSdOverRootR) {
  std::vector<RunTrace> traces(3);
  const double values[3] = {1.0, 2.0, 4.0};
  for (int r = 0; r < 3; ++r) {
    traces[r].iters = 1;
    traces[r].links = 1;
    traces[r].divergence = {values[r]};
    traces[r].ee = {values[r] * 2};
  }
  const Summary s = summarize(traces);
  EXPECT_DOUBLE_EQ(s.mean_div[0], 7.0 / 3.0);
  const double sd = std::sqrt(((1 - 7.0 / 3) * (1 - 7.0 / 3) + (2 - 7.0 / 3) * (2 - 7.0 / 3) +
                               (4 - 7.0 / 3) * (4 - 7.0 / 3)) / 2.0);
  EXPECT_NEAR(s.se_div[0], sd / std::sqrt(3.0), 1e-15);
  EXPECT_DOUBLE_EQ(s.mean_ee[0], 14.0 / 3.0);
}

struct NanGame {
  using Environment = ScalarToyGame::Environment;
  ScalarToyGame inner{0.5, 1.0};
  std::size_t links() const { return 1; }
  double bound() const { return 1.0; }
  double sigma2() const { return 0.0; }
  bool stochastic() const { return false; }
  std::vector<BlockHermitian> initial_dual() const { return inner.initial_dual(); }
  const Environment& fixed_environment() const { return inner.fixed_environment(); }
  Environment draw_environment(Rng& r) const { return inner.draw_environment(r); }
  std::vector<LinkEvaluation> evaluate(const std::vector<BlockHermitian>& x, const Environment& e) const {
    auto out = inner.evaluate(x, e);
    out[0].utility = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
};
static_assert(Game<NanGame>);

TEST(Experiment, NonFiniteValuesAbortWithDiagnostics) {
  const NanGame game;
  const auto xstar = estimate_ne(ScalarToyGame(0.5, 1.0)).actions;
  try {
    run_experiment(game, xstar, toy_config(FullFeedback{}, 2, 5));
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("run 0, iteration 1, link 1"), std::string::npos) << e.what();
  }
}

TEST(CheckBounds, ToyWithKnownStabilityConstant) {
  // tr((x - x*) V) = -beta (x - x*)(logit x - logit x*) <= -beta d_KL(x*, x).
  // Step conditions: eps_I = 2.007 < p beta < 5 and eps_S(0.5) = 2.28 < beta < 5.
  const std::pair<FeedbackStrategy, double> cases[] = {{IncompleteFeedback{0.5}, 8.0}, {SporadicFeedback{0.5}, 4.0}};
  for (const auto& [s, beta] : cases) {
    const ScalarToyGame toy(0.3, beta, 1.0, 1, 2.0);
    const auto xstar = estimate_ne(toy).actions;
    const BoundCheckReport rep = check_bounds(toy, xstar, toy_config(s, 200, 1000), beta);
    EXPECT_EQ(rep.status, BoundStatus::kHolds) << to_string(s) << ' ' << rep.recursion.condition;
    EXPECT_EQ(rep.violation_fraction, 0.0);
    EXPECT_TRUE(rep.C_estimated);
    EXPECT_GE(rep.B_fit, beta * (1 - 1e-9));
  }
}

TEST(CheckBounds, SmallStabilityConstantIsReported) {
  const ScalarToyGame toy(0.3, 4.0, 1.0, 1, 2.0);
  const auto xstar = estimate_ne(toy).actions;
  const auto cfg = toy_config(IncompleteFeedback{0.5}, 10, 200);
  EXPECT_EQ(check_bounds(toy, xstar, cfg, 1e-3).status, BoundStatus::kConditionViolated);
  EXPECT_EQ(check_bounds(toy, xstar, cfg, 0.0).status, BoundStatus::kConditionViolated);
  EXPECT_EQ(check_bounds(toy, xstar, cfg, -1.0).status, BoundStatus::kConditionViolated);
}

TEST(CheckSchedule, DefaultScheduleSucceeds) {
  const ScheduleCheckReport rep = check_schedule(StepSchedule(0.2, 0.7), {0.2, 0.5, 0.8});
  EXPECT_TRUE(rep.passed());
}

TEST(Output, CsvHeadersAndFormatting) {
  std::vector<RunTrace> traces(1);
  traces[0].iters = 2;
  traces[0].links = 2;
  traces[0].ee = {0.1, 0.2, 0.3, 1.0 / 3.0};
  traces[0].divergence = {1.0, 2.0, 3.0, 4.0};
  traces[0].cost = {48, 48, 0, 30};
  std::istringstream lines(csv(traces));
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "run,iter,link,ee,divergence,cost");
  std::getline(lines, line);
  EXPECT_EQ(line, "1,1,1,0.10000000000000001,1,48");
  std::getline(lines, line);
  std::getline(lines, line);
  std::getline(lines, line);
  EXPECT_EQ(line, "1,2,2,0.33333333333333331,4,30");

  std::ostringstream sum;
  write_summary(sum, summarize(traces));
  EXPECT_EQ(sum.str().substr(0, sum.str().find('\n')), "iter,mean_div,se_div,mean_ee_1,mean_ee_2");
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
}

TEST(Output, EquilibriumReferenceRoundTrip) {
  ExperimentConfig cfg = small_mimo_config();
  const NeEstimate ne = estimate_ne(make_mimo_game(cfg));
  const auto path = std::filesystem::temp_directory_path() / "mxl_ne_roundtrip.json";
  write_json(path, ne_reference_json(ne));
  const NeEstimate back = load_ne_reference(path.string());
  std::filesystem::remove(path);
  ASSERT_EQ(back.actions.size(), ne.actions.size());
  EXPECT_EQ(back.converged, ne.converged);
  for (std::size_t k = 0; k < ne.actions.size(); ++k) {
    EXPECT_LT(trace_norm(back.actions[k].matrix() - ne.actions[k].matrix()), 1e-15);
  }
  EXPECT_THROW(load_ne_reference("/nonexistent/ne.json"), InvalidInput);
}

TEST(Output, MetadataRecordsConfig) {
  const auto j = config_json(small_mimo_config());
  EXPECT_EQ(j.at("K").get<int>(), 3);
  EXPECT_EQ(j.at("seed").get<int>(), 5);
  EXPECT_EQ(j.at("strategy").get<std::string>(), "full");
  EXPECT_EQ(j.at("channel_mode").get<std::string>(), "static");
}

}  // namespace
}  // namespace mxl
