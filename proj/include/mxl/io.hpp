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

// CSV and JSON output of experiments, and stored equilibrium references.
#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mxl/config.hpp"
#include "mxl/errors.hpp"
#include "mxl/geometry.hpp"
#include "mxl/harness.hpp"

namespace mxl {

#ifndef MXL_VERSION
#define MXL_VERSION "0.0.0"
#endif

inline const char* version() { return MXL_VERSION; }

/// Fixed 17-significant-digit rendering, round-trip exact for doubles.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// run and link are written 1-based.
inline void write_trajectories(std::ostream& out, const std::vector<RunTrace>& traces) {
  out << "run,iter,link,ee,divergence,cost\n";
  for (const auto& t : traces) {
    for (std::int64_t n = 1; n <= t.iters; ++n) {
      for (std::size_t k = 0; k < t.links; ++k) {
        const auto cell = static_cast<std::size_t>(n - 1) * t.links + k;
        out << t.run + 1 << ',' << n << ',' << k + 1 << ',' << format_double(t.ee[cell]) << ','
            << format_double(t.divergence[cell]) << ',' << t.cost[cell] << '\n';
      }
    }
  }
}

inline void write_summary(std::ostream& out, const Summary& s) {
  out << "iter,mean_div,se_div";
  for (std::size_t k = 0; k < s.links; ++k) out << ",mean_ee_" << k + 1;
  out << '\n';
  for (std::size_t i = 0; i < s.mean_div.size(); ++i) {
    out << i + 1 << ',' << format_double(s.mean_div[i]) << ',' << format_double(s.se_div[i]);
    for (std::size_t k = 0; k < s.links; ++k) out << ',' << format_double(s.mean_ee[i * s.links + k]);
    out << '\n';
  }
}

inline nlohmann::ordered_json config_json(const ExperimentConfig& cfg) {
  const auto& net = cfg.network;
  nlohmann::ordered_json j;
  j["K"] = net.K;
  j["Nt"] = net.Nt;
  j["Nr"] = net.Nr;
  j["S"] = net.S;
  j["Pc_W"] = net.Pc;
  j["Pmax_W"] = net.Pmax;
  j["sigma2"] = net.sigma2;
  j["alpha"] = cfg.schedule.alpha();
  j["nu"] = cfg.schedule.nu();
  j["strategy"] = to_string(cfg.strategy);
  j["p"] = feedback_probability(cfg.strategy);
  j["runs"] = cfg.runs;
  j["iters"] = cfg.iters;
  j["channel_mode"] = to_string(net.channel_mode);
  j["seed"] = cfg.seed;
  j["cost_convention"] = cfg.cost_convention == CostConvention::kEntries ? "entries" : "real_scalars";
  return j;
}

inline nlohmann::ordered_json ne_diagnostics_json(const NeEstimate& ne, const std::string& source) {
  nlohmann::ordered_json j;
  j["source"] = source;
  j["iterations"] = ne.iterations;
  j["tail"] = ne.tail;
  j["draws_per_iteration"] = ne.draws_per_iteration;
  j["tail_change"] = ne.tail_change;
  j["tolerance"] = ne.tolerance;
  j["converged"] = ne.converged;
  j["equilibrium_gap"] = ne.equilibrium_gap;
  return j;
}

inline void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

/// Equilibrium reference as JSON: per link, per block, row-major real and
/// imaginary parts, plus the estimation diagnostics.
inline nlohmann::ordered_json ne_reference_json(const NeEstimate& ne) {
  nlohmann::ordered_json j;
  j["diagnostics"] = ne_diagnostics_json(ne, "estimated");
  auto& links = j["links"] = nlohmann::ordered_json::array();
  for (const auto& a : ne.actions) {
    nlohmann::ordered_json link;
    link["bound"] = a.bound();
    auto& blocks = link["blocks"] = nlohmann::ordered_json::array();
    for (const auto& blk : a.matrix()) {
      nlohmann::ordered_json b;
      b["dim"] = blk.dim();
      std::vector<double> re, im;
      for (Index i = 0; i < blk.dim(); ++i) {
        for (Index c = 0; c < blk.dim(); ++c) {
          re.push_back(blk(i, c).real());
          im.push_back(blk(i, c).imag());
        }
      }
      b["re"] = re;
      b["im"] = im;
      blocks.push_back(std::move(b));
    }
    links.push_back(std::move(link));
  }
  return j;
}

inline NeEstimate load_ne_reference(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open equilibrium reference " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
    NeEstimate ne;
    const auto& d = j.at("diagnostics");
    ne.iterations = d.at("iterations").get<std::int64_t>();
    ne.tail = d.at("tail").get<std::int64_t>();
    ne.draws_per_iteration = d.at("draws_per_iteration").get<int>();
    ne.tail_change = d.at("tail_change").get<double>();
    ne.tolerance = d.at("tolerance").get<double>();
    ne.converged = d.at("converged").get<bool>();
    ne.equilibrium_gap = d.value("equilibrium_gap", 0.0);
    for (const auto& link : j.at("links")) {
      std::vector<HermitianMatrix> blocks;
      for (const auto& b : link.at("blocks")) {
        const auto dim = b.at("dim").get<Index>();
        const auto re = b.at("re").get<std::vector<double>>();
        const auto im = b.at("im").get<std::vector<double>>();
        if (re.size() != static_cast<std::size_t>(dim * dim) || im.size() != re.size()) {
          throw InvalidInput("equilibrium reference: block size mismatch");
        }
        ComplexMatrix m(dim, dim);
        for (Index i = 0; i < dim; ++i) {
          for (Index c = 0; c < dim; ++c) {
            const auto at = static_cast<std::size_t>(i * dim + c);
            m(i, c) = Complex(re[at], im[at]);
          }
        }
        blocks.push_back(HermitianMatrix::strict(m));
      }
      ne.actions.push_back(FeasibleAction::from_matrix(BlockHermitian(std::move(blocks)),
                                                       link.at("bound").get<double>()));
    }
    return ne;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("malformed equilibrium reference " + path + ": " + e.what());
  }
}

inline void write_text(const std::filesystem::path& path, auto&& writer) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path.string());
  writer(out);
  if (!out) throw InvalidInput("write failed for " + path.string());
}

}  // namespace mxl
