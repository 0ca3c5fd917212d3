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

// Experiment configuration and its flat `key = value` file format.
#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>

#include "mxl/errors.hpp"
#include "mxl/learner.hpp"
#include "mxl/mimo.hpp"
#include "mxl/schedule.hpp"

namespace mxl {

struct ExperimentConfig {
  mimo::NetworkConfig network;
  StepSchedule schedule{0.2, 0.7};
  FeedbackStrategy strategy = FullFeedback{};
  std::int64_t runs = 100;
  std::int64_t iters = 1000;
  std::uint64_t seed = 1;
  std::string ne_ref;  // path to a stored equilibrium; empty means estimate
  CostConvention cost_convention = CostConvention::kEntries;
  unsigned threads = 0;  // 0: one per hardware thread

  void validate() const {
    network.validate();
    if (runs < 1) throw InvalidInput("config: runs must be >= 1");
    if (iters < 1) throw InvalidInput("config: iters must be >= 1");
    const double p = feedback_probability(strategy);
    if (!(p > 0.0 && p <= 1.0)) throw InvalidInput("config: p must lie in (0, 1]");
  }
};

inline std::string to_string(mimo::ChannelMode m) {
  return m == mimo::ChannelMode::kStatic ? "static" : "iid";
}

inline mimo::ChannelMode parse_channel_mode(std::string_view s) {
  if (s == "static") return mimo::ChannelMode::kStatic;
  if (s == "iid" || s == "iid_per_iteration") return mimo::ChannelMode::kIidPerIteration;
  throw InvalidInput("unknown channel_mode '" + std::string(s) + "' (static|iid)");
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw InvalidInput("config: bad value '" + std::string(text) + "' for key " + std::string(key));
  }
  return value;
}

}  // namespace detail

/// Applies one assignment to `cfg`. Strategy and p are held back in
/// `strategy`/`p` so that their order in the file does not matter.
inline void apply_config_key(ExperimentConfig& cfg, std::string& strategy, double& p,
                             double& alpha, double& nu, std::string_view key,
                             std::string_view value) {
  using detail::parse_number;
  auto& net = cfg.network;
  if (key == "K") net.K = parse_number<std::size_t>(key, value);
  else if (key == "Nt") net.Nt = parse_number<Index>(key, value);
  else if (key == "Nr") net.Nr = parse_number<Index>(key, value);
  else if (key == "S") net.S = parse_number<std::size_t>(key, value);
  else if (key == "Pc_dBm") net.Pc = mimo::dbm_to_watts(parse_number<double>(key, value));
  else if (key == "Pmax_dBm") net.Pmax = mimo::dbm_to_watts(parse_number<double>(key, value));
  else if (key == "sigma2") net.sigma2 = parse_number<double>(key, value);
  else if (key == "alpha") alpha = parse_number<double>(key, value);
  else if (key == "nu") nu = parse_number<double>(key, value);
  else if (key == "strategy") strategy = std::string(value);
  else if (key == "p") p = parse_number<double>(key, value);
  else if (key == "runs") cfg.runs = parse_number<std::int64_t>(key, value);
  else if (key == "iters") cfg.iters = parse_number<std::int64_t>(key, value);
  else if (key == "channel_mode") net.channel_mode = parse_channel_mode(value);
  else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, value);
  else throw InvalidInput("config: unknown key '" + std::string(key) + "'");
}

/// Reads `key = value` lines on top of `base`. Blank lines and lines starting
/// with '#' are skipped; unknown or repeated keys are errors.
inline ExperimentConfig parse_config(std::istream& in, ExperimentConfig base = {}) {
  ExperimentConfig cfg = base;
  std::string strategy = to_string(cfg.strategy);
  strategy = strategy.substr(0, strategy.find('('));
  double p = feedback_probability(cfg.strategy);
  double alpha = cfg.schedule.alpha();
  double nu = cfg.schedule.nu();
  std::map<std::string, int, std::less<>> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidInput("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string_view key = detail::trim(body.substr(0, eq));
    const std::string_view value = detail::trim(body.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw InvalidInput("config line " + std::to_string(lineno) + ": empty key or value");
    }
    if (!seen.emplace(std::string(key), lineno).second) {
      throw InvalidInput("config line " + std::to_string(lineno) + ": repeated key " + std::string(key));
    }
    apply_config_key(cfg, strategy, p, alpha, nu, key, value);
  }
  cfg.schedule = StepSchedule(alpha, nu);
  cfg.strategy = make_strategy(strategy, p);
  cfg.validate();
  return cfg;
}

inline ExperimentConfig parse_config(std::string_view text, ExperimentConfig base = {}) {
  std::istringstream in{std::string(text)};
  return parse_config(in, std::move(base));
}

inline ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {}) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config file " + path);
  return parse_config(in, std::move(base));
}

}  // namespace mxl
