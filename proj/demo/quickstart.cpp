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

// A small energy-efficiency network: estimate the equilibrium, then compare
// full, incomplete and sporadic feedback on a few runs.

#include <cstdio>

#include "mxl/mxl.hpp"

int main() {
  mxl::ExperimentConfig cfg;
  cfg.network.K = 3;
  cfg.network.Nt = 2;
  cfg.network.Nr = 4;
  cfg.network.S = 2;
  cfg.runs = 10;
  cfg.iters = 300;
  cfg.seed = 7;

  const auto game = mxl::make_mimo_game(cfg);
  mxl::NeOptions ne_opts;
  ne_opts.iterations = 20000;
  const auto ne = mxl::estimate_ne(game, ne_opts);
  std::printf("equilibrium: tail change %.2e (%s)\n", ne.tail_change, ne.converged ? "stationary" : "not stationary");

  for (const auto& q : ne.actions) {
    const auto cov = mxl::mimo::from_adjusted(q.matrix(), cfg.network);
    std::printf("  link power %.4f W\n", mxl::trace(cov));
  }

  const auto rep = mxl::compare_strategies(game, ne.actions, cfg);
  for (const auto& c : rep.curves) {
    std::printf("%-7s D_1 = %.4f  D_%lld = %.2e  AUC = %.3f\n", c.label.c_str(), c.summary.mean_div.front(),
                static_cast<long long>(cfg.iters), c.summary.mean_div.back(), c.auc);
  }
  return 0;
}
