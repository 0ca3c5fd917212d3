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

// Matrix exponential learning updates.
//
//   X(n) = A exp(Y(n-1)) / (1 + tr exp(Y(n-1)))
//   Y(n) = Y(n-1) + step(n) * received gradient
//
// The three engines differ only in what the transmitter receives: the full
// gradient, a Hermitian-symmetric Bernoulli subset of its entries, or the
// whole gradient on sporadic rounds with a per-link step counter.
#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "mxl/errors.hpp"
#include "mxl/geometry.hpp"
#include "mxl/hermitian.hpp"
#include "mxl/rng.hpp"
#include "mxl/schedule.hpp"

namespace mxl {

struct FullFeedback {};
/// Each lower-triangle entry (diagonal included) delivered with probability p.
struct IncompleteFeedback {
  double p;
};
/// The whole gradient delivered with probability p.
struct SporadicFeedback {
  double p;
};

using FeedbackStrategy = std::variant<FullFeedback, IncompleteFeedback, SporadicFeedback>;

inline double feedback_probability(const FeedbackStrategy& s) {
  return std::visit(
      [](const auto& v) -> double {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, FullFeedback>) return 1.0;
        else return v.p;
      },
      s);
}

inline std::string to_string(const FeedbackStrategy& s) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FullFeedback>) return "full";
        else if constexpr (std::is_same_v<T, IncompleteFeedback>) return "incomplete(" + std::to_string(v.p) + ")";
        else return "sporadic(" + std::to_string(v.p) + ")";
      },
      s);
}

/// Parses "full", "incomplete" or "sporadic"; p must lie in (0, 1] for the
/// reduced-feedback variants.
inline FeedbackStrategy make_strategy(const std::string& name, double p) {
  if (name == "full") return FullFeedback{};
  if (!(p > 0.0 && p <= 1.0)) throw InvalidInput("strategy probability must lie in (0, 1]");
  if (name == "incomplete") return IncompleteFeedback{p};
  if (name == "sporadic") return SporadicFeedback{p};
  throw InvalidInput("unknown strategy '" + name + "'");
}

/// Per-link learner: dual Y, primal X = bound * G(Y), and the count of
/// delivered feedbacks (the step index of the sporadic variant).
struct LearnerState {
  BlockHermitian y;
  FeasibleAction x;
  std::int64_t feedback_count = 0;
  std::size_t link_id = 0;
  double bound = 1.0;

  static LearnerState from_dual(std::size_t link, BlockHermitian y, double bound = 1.0) {
    LearnerState s;
    s.x = mirror_map(y, bound);
    s.y = std::move(y);
    s.link_id = link;
    s.bound = bound;
    return s;
  }

  /// Y(0) = 0, i.e. X = bound * I / (M + 1).
  static LearnerState initial(std::size_t link, std::size_t blocks, Index block_dim,
                              double bound = 1.0) {
    return from_dual(link, zero_blocks(blocks, block_dim), bound);
  }
};

/// Gradient as received by the transmitter.
struct MaskedGradient {
  BlockHermitian matrix;
  bool delivered = true;
  std::vector<RealMatrix> mask;           // symmetric 0/1, one per block
  std::int64_t delivered_entries = 0;     // lower triangle incl. diagonal
  std::int64_t delivered_real_scalars = 0;  // diagonal counts 1, off-diagonal 2
};

namespace detail {

inline HermitianMatrix apply_mask(const RealMatrix& mask, const HermitianMatrix& v) {
  ComplexMatrix out = v.matrix();
  for (Index j = 0; j < out.cols(); ++j) {
    for (Index i = 0; i < out.rows(); ++i) {
      if (mask(i, j) == 0.0) out(i, j) = Complex(0.0, 0.0);
    }
  }
  return HermitianMatrix::from_exact(std::move(out));
}

inline void require_hermitian(const BlockHermitian& v, const char* who) {
  for (const auto& blk : v) {
    if (blk.repaired()) {
      throw InvalidInput(std::string(who) + ": gradient was not Hermitian; hermitize upstream");
    }
  }
}

inline LearnerState dual_step(const LearnerState& state, const BlockHermitian& v, double step) {
  std::vector<HermitianMatrix> y;
  y.reserve(state.y.size());
  for (std::size_t s = 0; s < state.y.size(); ++s) {
    if (state.y[s].dim() != v[s].dim()) throw InvalidInput("step: gradient shape mismatch");
    y.push_back(HermitianMatrix::from_exact(state.y[s].matrix() + step * v[s].matrix()));
  }
  LearnerState next = LearnerState::from_dual(state.link_id, BlockHermitian(std::move(y)), state.bound);
  next.feedback_count = state.feedback_count;
  return next;
}

}  // namespace detail

/// Draws a symmetric Bernoulli(p) mask on every block (i >= j drawn, mirrored)
/// and returns mask o V. Entries outside the blocks are structural zeros and
/// are never sent.
inline MaskedGradient mask_gradient(const BlockHermitian& v, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("mask_gradient: p must lie in [0, 1]");
  std::bernoulli_distribution coin(p);
  MaskedGradient out;
  std::vector<HermitianMatrix> blocks;
  blocks.reserve(v.size());
  for (const auto& blk : v) {
    const Index m = blk.dim();
    RealMatrix mask = RealMatrix::Zero(m, m);
    for (Index j = 0; j < m; ++j) {
      for (Index i = j; i < m; ++i) {
        if (coin(rng)) {
          mask(i, j) = mask(j, i) = 1.0;
          ++out.delivered_entries;
          out.delivered_real_scalars += (i == j) ? 1 : 2;
        }
      }
    }
    blocks.push_back(detail::apply_mask(mask, blk));
    out.mask.push_back(std::move(mask));
  }
  out.matrix = BlockHermitian(std::move(blocks));
  return out;
}

/// Y <- Y + step * V; X <- bound * G(Y).
inline LearnerState mxl_step(const LearnerState& state, const BlockHermitian& v, double step) {
  detail::require_hermitian(v, "mxl_step");
  return detail::dual_step(state, v, step);
}

/// Y <- Y + step * (mask o V); X <- bound * G(Y).
inline LearnerState mxl_i_step(const LearnerState& state, const MaskedGradient& masked,
                               double step) {
  for (const auto& m : masked.mask) {
    if (m != m.transpose()) {
      throw InvalidInput("mxl_i_step: mask is not symmetric");
    }
  }
  detail::require_hermitian(masked.matrix, "mxl_i_step");
  return detail::dual_step(state, masked.matrix, step);
}

/// On delivery: count <- count + 1, Y <- Y + gamma_count * V. Otherwise the
/// state is left untouched.
inline LearnerState mxl_s_step(const LearnerState& state, const BlockHermitian& v, bool delivered,
                               const StepSchedule& schedule) {
  if (!delivered) return state;
  detail::require_hermitian(v, "mxl_s_step");
  LearnerState next = detail::dual_step(state, v, schedule(state.feedback_count + 1));
  next.feedback_count = state.feedback_count + 1;
  return next;
}

// ---------------------------------------------------------------------------
// Signalling cost

/// kEntries counts one unit per fed-back matrix entry: a full gradient costs
/// sum of block dim^2, an incomplete one the delivered lower-triangle entries.
/// kRealScalars counts real numbers: one per diagonal entry, two per
/// off-diagonal complex entry of the lower triangle.
enum class CostConvention { kEntries, kRealScalars };

inline std::int64_t full_gradient_cost(const BlockHermitian& shape) {
  std::int64_t c = 0;
  for (const auto& blk : shape) c += blk.dim() * blk.dim();
  return c;
}

/// Per-link cost of one round. `delivered` is only read for the sporadic
/// strategy, `masked` only for the incomplete one.
inline std::int64_t feedback_cost(const FeedbackStrategy& strategy, const BlockHermitian& shape,
                                  const MaskedGradient* masked, bool delivered,
                                  CostConvention convention = CostConvention::kEntries) {
  if (std::holds_alternative<FullFeedback>(strategy)) return full_gradient_cost(shape);
  if (std::holds_alternative<SporadicFeedback>(strategy)) return delivered ? full_gradient_cost(shape) : 0;
  if (masked == nullptr) throw InvalidInput("feedback_cost: incomplete feedback needs the mask");
  return convention == CostConvention::kEntries ? masked->delivered_entries
                                                : masked->delivered_real_scalars;
}

/// Mask and delivery substreams of one link.
struct LinkStreams {
  Rng mask;
  Rng delivery;

  static LinkStreams make(std::uint64_t master, std::uint64_t run, std::uint64_t link) {
    return {substream(master, run, link, StreamPurpose::kMask),
            substream(master, run, link, StreamPurpose::kDelivery)};
  }
};

struct RoundOutcome {
  std::vector<LearnerState> states;
  std::vector<std::int64_t> cost;  // per link
};

/// One iteration over all links: gradients[k] is the (already noisy,
/// Hermitian) estimate received for link k at round n.
inline RoundOutcome run_round(std::span<const LearnerState> states,
                              std::span<const BlockHermitian> gradients,
                              const FeedbackStrategy& strategy, std::int64_t n,
                              const StepSchedule& schedule, std::span<LinkStreams> streams,
                              CostConvention convention = CostConvention::kEntries) {
  if (states.size() != gradients.size() || states.size() != streams.size()) {
    throw InvalidInput("run_round: one gradient and one stream set per link required");
  }
  RoundOutcome out;
  out.states.reserve(states.size());
  out.cost.reserve(states.size());
  const double step = schedule(n);
  for (std::size_t k = 0; k < states.size(); ++k) {
    const LearnerState& st = states[k];
    const BlockHermitian& v = gradients[k];
    if (std::holds_alternative<FullFeedback>(strategy)) {
      out.states.push_back(mxl_step(st, v, step));
      out.cost.push_back(feedback_cost(strategy, v, nullptr, true, convention));
    } else if (const auto* inc = std::get_if<IncompleteFeedback>(&strategy)) {
      const MaskedGradient masked = mask_gradient(v, inc->p, streams[k].mask);
      out.states.push_back(mxl_i_step(st, masked, step));
      out.cost.push_back(feedback_cost(strategy, v, &masked, true, convention));
    } else {
      const double p = std::get<SporadicFeedback>(strategy).p;
      const bool delivered = std::bernoulli_distribution(p)(streams[k].delivery);
      out.states.push_back(mxl_s_step(st, v, delivered, schedule));
      out.cost.push_back(feedback_cost(strategy, v, nullptr, delivered, convention));
    }
  }
  return out;
}

}  // namespace mxl
