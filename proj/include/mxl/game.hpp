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

// What the experiment harness needs from a game: per-link block shapes, an
// initial dual point, and utilities with their partial gradients under an
// environment state (e.g. channel realization) that may be redrawn per round.
#pragma once

#include <concepts>
#include <cstddef>
#include <vector>

#include "mxl/hermitian.hpp"
#include "mxl/rng.hpp"

namespace mxl {

struct LinkEvaluation {
  double utility = 0.0;
  BlockHermitian gradient;  // d utility_k / d X_k with X_{-k} fixed
};

template <class G>
concept Game = requires(const G& g, const std::vector<BlockHermitian>& x,
                        const typename G::Environment& env, Rng& rng) {
  typename G::Environment;
  { g.links() } -> std::convertible_to<std::size_t>;
  { g.bound() } -> std::convertible_to<double>;
  { g.sigma2() } -> std::convertible_to<double>;
  { g.stochastic() } -> std::convertible_to<bool>;
  { g.initial_dual() } -> std::same_as<std::vector<BlockHermitian>>;
  { g.fixed_environment() } -> std::convertible_to<const typename G::Environment&>;
  { g.draw_environment(rng) } -> std::same_as<typename G::Environment>;
  { g.evaluate(x, env) } -> std::same_as<std::vector<LinkEvaluation>>;
};

}  // namespace mxl
