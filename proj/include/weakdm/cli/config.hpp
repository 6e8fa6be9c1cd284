// Copyright 2026 The weakdm Authors
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

#pragma once

/**
 * @file
 * Scenario configuration: YAML text in, a fully resolved and validated
 * ScenarioConfig out. Every rejection names the offending field and, where
 * the parser can tell, its line.
 *
 * Recognised keys (all optional unless noted):
 *
 *   state:        exactly one of
 *                   preset: <name>        (see presets.hpp; `purity` for werner)
 *                   amplitudes: [x, ...]  (x is a real or [re, im])
 *                   density: [[x, ...], ...]
 *                   random: {seed: <int>, rank: <int>}
 *   dimension:    N (required for random and dimension-free presets)
 *   protocol:     wavefunction | dirac | density | product   (required)
 *   scheme:       substitution | scheme1 | scheme2
 *   sweep:        [gt, ...]   (default 0.08, 0.04, 0.02, 0.01)
 *   pointer:      {grid_points, half_width, sigma, t, triple_grid_points,
 *                  triple_half_width, kappa_scale}
 *   b0:           {basis: standard | fourier, index: <int>}
 *   product:      {e: <basis label>, f: <basis label>}   (protocol product)
 *   sampling:     {shots, seed, readout_split}
 *   threads:      worker count, 0 = available parallelism
 */

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "weakdm/error.hpp"
#include "weakdm/hilbert.hpp"
#include "weakdm/protocols.hpp"

namespace weakdm::cli {

class ConfigError : public Error {
  public:
    explicit ConfigError(const std::string &what) : Error(ErrorCategory::config, what) {}
};

class IoError : public Error {
  public:
    explicit IoError(const std::string &what) : Error(ErrorCategory::io, what) {}
};

enum class Protocol { wavefunction, dirac, density, product };

std::string_view to_string(Protocol protocol);

struct SamplingSpec {
    std::uint64_t shots = 10000;
    std::uint64_t seed = 0;
    double readout_split = 0.5;
};

struct ScenarioConfig {
    std::string source;
    /// preset name, "amplitudes", "density" or "random(seed, rank)".
    std::string state_label;
    DensityMatrix rho = DensityMatrix::maximally_mixed(1);
    /// Set whenever the state is known to be pure.
    std::optional<StateVector> psi;
    Protocol protocol = Protocol::density;
    Scheme scheme = Scheme::substitution;
    std::vector<double> sweep = {0.08, 0.04, 0.02, 0.01};
    int grid_points = 512;
    double half_width = 16.0;
    double sigma = 1.0;
    double t = 1.0;
    int triple_grid_points = 64;
    double triple_half_width = 8.0;
    double kappa_scale = 1.0;
    BasisLabel b0{BasisKind::fourier, 0};
    BasisLabel product_e{BasisKind::fourier, 0};
    BasisLabel product_f{BasisKind::standard, 0};
    std::optional<SamplingSpec> sampling;
    int threads = 0;

    [[nodiscard]] int dim() const { return rho.dim(); }
    /// Protocol parameters at one sweep point.
    [[nodiscard]] ProtocolParams params_for(double gt) const;
};

ScenarioConfig parse_config(const std::string &text, const std::string &source = "<config>");
ScenarioConfig load_config(const std::filesystem::path &path);

std::string_view to_string(BasisKind kind);

} // namespace weakdm::cli
