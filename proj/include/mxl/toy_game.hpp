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

// Scalar test game with a closed-form equilibrium and a known
// strong-stability constant.
//
// Each link controls x in (0, 1) (one 1x1 block, bound 1) and receives
//   V(x) = -beta (logit(x) - logit(x*)),
// the gradient of the concave u(x) = -beta (h(x) - x logit(x*)), where
// h(x) = x log x + (1 - x) log(1 - x). Since logit = grad h,
//   (x - x*) V(x) = -beta (d(x*, x) + d(x, x*)) <= -beta d(x*, x),
// so x* is beta-strongly stable. Under the mirror map logit(x) = y, so the
// update is linear in the dual variable.
#pragma once

#include <cmath>
#include <vector>

#include "mxl/errors.hpp"
#include "mxl/game.hpp"
#include "mxl/hermitian.hpp"

namespace mxl {

class ScalarToyGame {
 public:
  struct Environment {};

  ScalarToyGame(double target, double beta, double sigma2 = 0.0, std::size_t links = 1,
                double initial_dual = 0.0)
      : target_(target), beta_(beta), sigma2_(sigma2), links_(links), y0_(initial_dual) {
    if (!(target > 0.0 && target < 1.0)) throw InvalidInput("ScalarToyGame: target must lie in (0, 1)");
    if (!(beta > 0.0)) throw InvalidInput("ScalarToyGame: beta must be positive");
  }

  double target() const { return target_; }
  double beta() const { return beta_; }
  std::size_t links() const { return links_; }
  double bound() const { return 1.0; }
  double sigma2() const { return sigma2_; }
  bool stochastic() const { return false; }

  std::vector<BlockHermitian> initial_dual() const {
    RealVector v(1);
    v(0) = y0_;
    return std::vector<BlockHermitian>(links_, BlockHermitian(HermitianMatrix::diagonal(v)));
  }

  const Environment& fixed_environment() const { return env_; }
  Environment draw_environment(Rng&) const { return {}; }

  double utility(double x) const {
    const double h = x * std::log(x) + (1.0 - x) * std::log1p(-x);
    return -beta_ * (h - x * logit(target_));
  }

  double derivative(double x) const { return -beta_ * (logit(x) - logit(target_)); }

  std::vector<LinkEvaluation> evaluate(const std::vector<BlockHermitian>& x, const Environment&) const {
    std::vector<LinkEvaluation> out(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double xk = x[k][0](0, 0).real();
      RealVector g(1);
      g(0) = derivative(xk);
      out[k].utility = utility(xk);
      out[k].gradient = BlockHermitian(HermitianMatrix::diagonal(g));
    }
    return out;
  }

  static double logit(double x) { return std::log(x) - std::log1p(-x); }

 private:
  double target_;
  double beta_;
  double sigma2_;
  std::size_t links_;
  double y0_;
  Environment env_;
};

}  // namespace mxl
