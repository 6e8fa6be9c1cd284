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
 * Convergence summary of a finished run directory: per-setting convergence
 * order and zero-coupling extrapolation, plus the same for the state-level
 * metric named in the manifest.
 */

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "weakdm/cli/io.hpp"
#include "weakdm/hilbert.hpp"

namespace weakdm::cli {

struct SettingSummary {
    /// "scheme:a=0,b=1" style key.
    std::string key;
    std::string scheme;
    std::vector<double> gt;
    std::vector<double> errors;
    /// Absent when some error is exactly zero.
    std::optional<double> slope;
    bool monotone = false;
    Complex extrapolated;
    Complex oracle;
    double extrapolated_error = 0.0;
};

struct StateSummary {
    std::string metric;
    std::vector<double> gt;
    std::vector<double> values;
    std::optional<double> slope;
    /// Metric of the entrywise zero-coupling extrapolation of the reconstructed state.
    double extrapolated = 0.0;
};

struct Report {
    std::string protocol;
    std::vector<SettingSummary> settings;
    std::optional<StateSummary> state;
};

/// Throws InvalidArgument when the run has fewer than two coupling values.
Report build_report(const std::filesystem::path &dir);

/// report_settings.csv, report_curve.csv and report.json next to the run files.
void write_report(const std::filesystem::path &dir, const Report &report);

/// Human-readable summary; slopes carry three significant figures.
std::string format_report(const Report &report);

} // namespace weakdm::cli
