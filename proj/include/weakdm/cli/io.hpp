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
 * Result files. Tables go to CSV (or JSON arrays with the same fields in
 * structured mode); every floating-point value is written with 17
 * significant digits so a read-back reproduces the double exactly.
 *
 *   estimates.{csv,json}  one row per setting and coupling
 *   state.{csv,json}      matrix/vector entries as (gt, name, row, col, re, im)
 *   metrics.{csv,json}    state-level figures of merit per coupling
 *   manifest.json         resolved run parameters
 */

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "weakdm/hilbert.hpp"

namespace weakdm::cli {

enum class OutputFormat { csv, structured };

std::string_view to_string(OutputFormat format);
/// "csv" or "structured"; throws ConfigError otherwise.
OutputFormat format_from_string(std::string_view name);

struct EstimateRow {
    std::string protocol;
    std::string scheme;
    double gt = 0.0;
    std::optional<int> a;
    std::optional<int> b;
    std::optional<int> a1;
    std::optional<int> a2;
    Complex value;
    Complex oracle;
    double abs_error = 0.0;
    std::optional<double> postselect_prob;
    std::optional<double> stderr_re;
    std::optional<double> stderr_im;
    /// Semicolon-separated.
    std::string diagnostics;
};

/// gt = 0 marks exact (closed-form) entries.
struct StateEntry {
    double gt = 0.0;
    std::string name;
    int row = 0;
    int col = 0;
    Complex value;
};

struct MetricRow {
    double gt = 0.0;
    std::string name;
    double value = 0.0;
};

void write_estimates(const std::filesystem::path &dir, const std::vector<EstimateRow> &rows,
                     OutputFormat format);
void write_state(const std::filesystem::path &dir, const std::vector<StateEntry> &entries,
                 OutputFormat format);
void write_metrics(const std::filesystem::path &dir, const std::vector<MetricRow> &rows,
                   OutputFormat format);

/// Readers pick whichever of the CSV or JSON file exists (CSV first).
std::vector<EstimateRow> read_estimates(const std::filesystem::path &dir);
std::vector<StateEntry> read_state(const std::filesystem::path &dir);
std::vector<MetricRow> read_metrics(const std::filesystem::path &dir);

/// Entries named `name` at coupling gt as a dense matrix (size from the largest indices).
Matrix state_matrix(const std::vector<StateEntry> &entries, const std::string &name, double gt);
std::vector<StateEntry> matrix_entries(const Matrix &m, const std::string &name, double gt);

/// 17 significant digits.
std::string format_double(double value);

void write_text(const std::filesystem::path &path, const std::string &text);
std::string read_text(const std::filesystem::path &path);

} // namespace weakdm::cli
