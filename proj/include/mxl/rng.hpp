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

// Deterministic random substreams. Every consumer draws from its own
// mt19937_64 keyed by (master seed, run, link, purpose), so strategies can be
// compared under common random numbers and runs are reproducible regardless
// of execution order.
#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace mxl {

using Rng = std::mt19937_64;

enum class StreamPurpose : std::uint64_t {
  kChannel = 1,
  kNoise = 2,
  kMask = 3,
  kDelivery = 4,
  kCalibration = 5,
};

inline constexpr std::uint64_t kAnyRun = std::numeric_limits<std::uint64_t>::max();
inline constexpr std::uint64_t kAnyLink = std::numeric_limits<std::uint64_t>::max();

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t run, std::uint64_t link,
                                 StreamPurpose purpose) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ run);
  h = splitmix64(h ^ link);
  h = splitmix64(h ^ static_cast<std::uint64_t>(purpose));
  return h;
}

inline Rng substream(std::uint64_t master, std::uint64_t run, std::uint64_t link,
                     StreamPurpose purpose) {
  return Rng(derive_seed(master, run, link, purpose));
}

}  // namespace mxl
