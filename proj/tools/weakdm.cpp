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

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "weakdm/cli/config.hpp"
#include "weakdm/cli/io.hpp"
#include "weakdm/cli/report.hpp"
#include "weakdm/cli/run.hpp"
#include "weakdm/version.hpp"

namespace {

using namespace weakdm;
using namespace weakdm::cli;

struct Common {
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    std::optional<int> threads;
    std::string format = "csv";

    [[nodiscard]] RunOptions options() const {
        RunOptions opts;
        opts.out_dir = out_dir.empty() ? default_out_dir() : std::filesystem::path(out_dir);
        opts.format = format_from_string(format);
        opts.seed = seed;
        opts.threads = threads;
        return opts;
    }
};

int report_failures(const RunResult &result) {
    for (const auto &f : result.failures) {
        std::cerr << fmt::format("failed gt={} {}: [{}] {}\n", f.gt, f.setting,
                                 f.category ? to_string(*f.category) : "other", f.message);
    }
    return result.exit_code();
}

void summarize(const RunResult &result, const RunOptions &opts) {
    double worst = 0.0;
    for (const auto &r : result.estimates) {
        worst = std::max(worst, r.abs_error);
    }
    std::cout << fmt::format("{} estimates, max |error| {:.3e}", result.estimates.size(), worst);
    for (const auto &m : result.metrics) {
        if (m.name == "trace_distance" || m.name == "distance") {
            std::cout << fmt::format("; {} at gt={}: {:.3e}", m.name, m.gt, m.value);
        }
    }
    std::cout << fmt::format("\nwritten to {}\n", opts.out_dir.string());
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Direct quantum-state measurement by simulated weak measurement"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    Common common;
    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--seed", common.seed, "Sampling seed (overrides the config)");
        sub->add_option("--out-dir", common.out_dir,
                        "Output directory (default $WEAKDM_OUT_DIR or weakdm-out)");
        sub->add_option("--threads", common.threads, "Worker threads, 0 = all cores")
            ->check(CLI::NonNegativeNumber);
        sub->add_option("--format", common.format, "Table format")
            ->check(CLI::IsMember({"csv", "structured"}));
    };

    std::string config_path;
    auto *run = app.add_subcommand("run", "Simulate a scenario over its coupling sweep");
    run->add_option("config", config_path, "Scenario YAML")->required();
    add_common(run);

    std::string results_dir;
    auto *report = app.add_subcommand("report", "Convergence summary of a run directory");
    report->add_option("results-dir", results_dir, "Directory written by run")->required();

    std::string calib_config;
    auto *calibrate = app.add_subcommand("calibrate", "Scheme 1 constant calibration");
    calibrate->add_option("config", calib_config, "Scenario YAML supplying pointer settings");
    add_common(calibrate);

    std::string oracle_config;
    auto *oracle = app.add_subcommand("oracle", "Closed-form values for a scenario, no simulation");
    oracle->add_option("config", oracle_config, "Scenario YAML")->required();
    add_common(oracle);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_code(ErrorCategory::invalid_argument);
    }

    try {
        if (*run) {
            const ScenarioConfig cfg = load_config(config_path);
            const RunOptions opts = common.options();
            const RunResult result = run_scenario(cfg, opts);
            summarize(result, opts);
            return report_failures(result);
        }
        if (*oracle) {
            const ScenarioConfig cfg = load_config(oracle_config);
            const RunOptions opts = common.options();
            const RunResult result = oracle_scenario(cfg, opts);
            summarize(result, opts);
            return report_failures(result);
        }
        if (*report) {
            const Report rep = build_report(results_dir);
            write_report(results_dir, rep);
            std::cout << format_report(rep);
            return kExitOk;
        }
        if (*calibrate) {
            ProtocolParams params;
            if (!calib_config.empty()) {
                params = load_config(calib_config).params_for(kCalibrationSweep.front());
            }
            const RunOptions opts = common.options();
            const CalibrationResult cal = run_calibration(params, kCalibrationSweep, opts);
            for (const auto &p : cal.points) {
                std::cout << fmt::format("gt={:<6} ratio={:.12f}\n", p.gt, p.ratio);
            }
            std::cout << fmt::format("extrapolated ratio {:.12f} (deviation {:.3e})\n",
                                     cal.extrapolated_ratio, cal.relative_deviation());
            return cal.relative_deviation() <= 0.01 ? kExitOk : kExitOther;
        }
    } catch (const Error &e) {
        std::cerr << fmt::format("error [{}]: {}\n", to_string(e.category()), e.what());
        return exit_code(e.category());
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOther;
    }
    return kExitOther;
}
