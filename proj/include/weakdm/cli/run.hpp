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
 * Scenario execution: farms (coupling, row) settings to a worker pool, pairs
 * every estimate with its closed-form value and writes the result files.
 * Output order depends only on the configuration, never on the pool size.
 */

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "weakdm/cli/config.hpp"
#include "weakdm/cli/io.hpp"
#include "weakdm/error.hpp"
#include "weakdm/protocols.hpp"

namespace weakdm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitOther = 1;

/// config 2, invalid_argument 3, postselection 4, wraparound 5, io 6.
int exit_code(ErrorCategory category);

/// $WEAKDM_OUT_DIR if set and non-empty, else "weakdm-out".
std::filesystem::path default_out_dir();
/// 0 means available parallelism (at least 1).
int resolve_threads(int requested);

/// Coupling products the calibration always runs over.
inline const std::vector<double> kCalibrationSweep = {0.08, 0.04, 0.02, 0.01};

struct RunOptions {
    std::filesystem::path out_dir = "weakdm-out";
    OutputFormat format = OutputFormat::csv;
    /// Overrides sampling.seed.
    std::optional<std::uint64_t> seed;
    /// Overrides the config's thread count.
    std::optional<int> threads;
    /// Skip writing files (tests).
    bool write = true;
};

struct RunFailure {
    double gt = 0.0;
    /// Setting labels, e.g. "a=1" or "a1=0,a2=3".
    std::string setting;
    /// Empty for exceptions outside the library's categories.
    std::optional<ErrorCategory> category;
    std::string message;
};

struct RunResult {
    std::vector<EstimateRow> estimates;
    std::vector<StateEntry> state;
    std::vector<MetricRow> metrics;
    std::vector<RunFailure> failures;
    std::optional<CalibrationResult> calibration;
    int threads = 1;
    std::string manifest;

    /// 0 when nothing failed, else the code of the first failure.
    [[nodiscard]] int exit_code() const;
};

/// Simulated run over the configured sweep.
RunResult run_scenario(const ScenarioConfig &config, const RunOptions &options);
/// Closed-form values only: one gt = 0 row per setting and the exact state.
RunResult oracle_scenario(const ScenarioConfig &config, const RunOptions &options);

/// Scheme 1 calibration on the given pointer settings, written as calibration.{csv,json}.
CalibrationResult run_calibration(const ProtocolParams &params, std::span<const double> sweep,
                                  const RunOptions &options);

} // namespace weakdm::cli
