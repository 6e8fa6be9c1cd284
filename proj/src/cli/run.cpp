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

#include "weakdm/cli/run.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

#include "weakdm/analysis.hpp"
#include "weakdm/oracle.hpp"
#include "weakdm/sampling.hpp"
#include "weakdm/version.hpp"

namespace weakdm::cli {

using nlohmann::json;

int exit_code(ErrorCategory category) {
    switch (category) {
    case ErrorCategory::config:
        return 2;
    case ErrorCategory::invalid_argument:
        return 3;
    case ErrorCategory::postselection:
        return 4;
    case ErrorCategory::wraparound:
        return 5;
    case ErrorCategory::io:
        return 6;
    }
    return kExitOther;
}

int RunResult::exit_code() const {
    if (failures.empty()) {
        return kExitOk;
    }
    const auto &first = failures.front();
    return first.category ? cli::exit_code(*first.category) : kExitOther;
}

std::filesystem::path default_out_dir() {
    if (const char *env = std::getenv("WEAKDM_OUT_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return "weakdm-out";
}

int resolve_threads(int requested) {
    if (requested > 0) {
        return requested;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::string labels(const SettingLabels &s) {
    std::vector<std::string> parts;
    if (s.a) {
        parts.push_back("a=" + std::to_string(*s.a));
    }
    if (s.b) {
        parts.push_back("b=" + std::to_string(*s.b));
    }
    if (s.a1) {
        parts.push_back("a1=" + std::to_string(*s.a1));
    }
    if (s.a2) {
        parts.push_back("a2=" + std::to_string(*s.a2));
    }
    std::string out;
    for (const auto &p : parts) {
        out += (out.empty() ? "" : ",") + p;
    }
    return out;
}

std::string join_notes(const std::vector<std::string> &notes) {
    std::string out;
    for (const auto &n : notes) {
        out += (out.empty() ? "" : "; ") + n;
    }
    return out;
}

SettingLabels with_a(int a, std::optional<int> b = std::nullopt) {
    SettingLabels s;
    s.a = a;
    s.b = b;
    return s;
}

SettingLabels with_a1a2(int a1, int a2) {
    SettingLabels s;
    s.a1 = a1;
    s.a2 = a2;
    return s;
}

struct Setting {
    ProtocolEstimate est;
    std::optional<double> stderr_re;
    std::optional<double> stderr_im;
};

struct Task {
    std::size_t gt_index = 0;
    int row = 0;
};

struct TaskOutput {
    std::vector<Setting> settings;
    std::optional<RunFailure> failure;
};

template <class Work> void run_pool(std::size_t count, int threads, Work &&work) {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            work(i);
        }
    };
    const auto extra = static_cast<std::size_t>(std::max(threads, 1) - 1);
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < std::min(extra, count); ++i) {
        pool.emplace_back(worker);
    }
    worker();
}

OperatorMatrix label_projector(int n, BasisLabel label) { return projector(basis_ket(n, label)); }

/// Strong observable with eigenvalue 1 on the labelled ket and 0 on the rest of its basis.
MeasurementBasis indicator(int n, BasisLabel label) {
    std::vector<double> values(static_cast<std::size_t>(n), 0.0);
    values[static_cast<std::size_t>(label.index)] = 1.0;
    return basis_with_eigenvalues(
        label.kind == BasisKind::standard ? standard_basis(n) : fourier_basis(n), std::move(values));
}

class Runner {
  public:
    Runner(const ScenarioConfig &cfg, const RunOptions &opts)
        : cfg_(cfg), n_(cfg.dim()), b0_(basis_ket(cfg.dim(), cfg.b0)) {
        if (cfg.sampling) {
            plan_ = ShotPlan{};
            plan_->shots = cfg.sampling->shots;
            plan_->seed = opts.seed ? *opts.seed : cfg.sampling->seed;
            plan_->readout_split = cfg.sampling->readout_split;
            plan_->threads = 1;
        }
    }

    [[nodiscard]] std::vector<Task> tasks() const {
        std::vector<Task> out;
        const bool rows = cfg_.protocol == Protocol::dirac || cfg_.protocol == Protocol::density;
        for (std::size_t g = 0; g < cfg_.sweep.size(); ++g) {
            for (int r = 0; r < (rows ? n_ : 1); ++r) {
                out.push_back({g, r});
            }
        }
        return out;
    }

    [[nodiscard]] TaskOutput execute(const Task &task) const {
        const double gt = cfg_.sweep[task.gt_index];
        TaskOutput out;
        try {
            out.settings = compute(task, cfg_.params_for(gt));
        } catch (const Error &e) {
            out.failure = RunFailure{gt, row_label(task), e.category(), e.what()};
        } catch (const std::exception &e) {
            out.failure = RunFailure{gt, row_label(task), std::nullopt, e.what()};
        }
        return out;
    }

    /// Closed-form value of one setting.
    [[nodiscard]] Complex oracle_value(const SettingLabels &s) const {
        switch (cfg_.protocol) {
        case Protocol::wavefunction:
            return oracle::weak_value_pure(projector(standard_ket(n_, *s.a)), *cfg_.psi, b0_);
        case Protocol::dirac:
            return dirac_exact_(*s.a, *s.b);
        case Protocol::density:
            return triple_exact_(*s.a1, *s.a2);
        case Protocol::product:
            return oracle::weak_average(product_operator(), cfg_.rho);
        }
        return {};
    }

    [[nodiscard]] std::vector<SettingLabels> all_settings() const {
        std::vector<SettingLabels> out;
        switch (cfg_.protocol) {
        case Protocol::wavefunction:
            for (int a = 0; a < n_; ++a) {
                out.push_back(with_a(a));
            }
            break;
        case Protocol::dirac:
            for (int a = 0; a < n_; ++a) {
                for (int b = 0; b < n_; ++b) {
                    out.push_back(with_a(a, b));
                }
            }
            break;
        case Protocol::density:
            for (int a1 = 0; a1 < n_; ++a1) {
                for (int a2 = 0; a2 < n_; ++a2) {
                    out.push_back(with_a1a2(a1, a2));
                }
            }
            break;
        case Protocol::product:
            out.push_back({});
            break;
        }
        return out;
    }

    [[nodiscard]] const ScenarioConfig &config() const { return cfg_; }
    [[nodiscard]] const StateVector &b0() const { return b0_; }
    [[nodiscard]] const std::optional<ShotPlan> &plan() const { return plan_; }
    [[nodiscard]] const Matrix &dirac_exact() const { return dirac_exact_; }
    [[nodiscard]] const Matrix &triple_exact() const { return triple_exact_; }

    void prepare_oracles() {
        if (cfg_.protocol == Protocol::dirac) {
            dirac_exact_ = oracle::dirac_exact(cfg_.rho);
        } else if (cfg_.protocol == Protocol::density) {
            triple_exact_ = oracle::density_from_triple_exact(cfg_.rho, b0_);
        }
    }

    [[nodiscard]] OperatorMatrix product_operator() const {
        return OperatorMatrix(label_projector(n_, cfg_.product_e).entries() *
                              label_projector(n_, cfg_.product_f).entries());
    }

    /// raw(a) = weak value / (<b0|a> sqrt(N)).
    [[nodiscard]] Vector wavefunction_raw(const std::vector<Setting> &settings) const {
        Vector raw(n_);
        for (const auto &s : settings) {
            const int a = *s.est.setting.a;
            raw(a) = s.est.value / (std::conj(b0_[a]) * std::sqrt(static_cast<double>(n_)));
        }
        return raw;
    }

  private:
    [[nodiscard]] std::string row_label(const Task &task) const {
        switch (cfg_.protocol) {
        case Protocol::dirac:
            return "a=" + std::to_string(task.row);
        case Protocol::density:
            return "a1=" + std::to_string(task.row);
        case Protocol::wavefunction:
        case Protocol::product:
            break;
        }
        return std::string(to_string(cfg_.protocol));
    }

    [[nodiscard]] ShotPlan plan_for(const Task &task, int index) const {
        ShotPlan plan = *plan_;
        plan.seed = splitmix(plan_->seed ^ splitmix((task.gt_index << 32) ^
                                                    (static_cast<std::uint64_t>(task.row) << 16) ^
                                                    static_cast<std::uint64_t>(index)));
        return plan;
    }

    [[nodiscard]] SampleSetting sample_setting(const ProtocolParams &p, const DensityMatrix &rho,
                                               OperatorMatrix observable) const {
        SampleSetting s{rho, std::move(observable), p.grid(), p.sigma, p.g, p.t,
                        std::nullopt, std::nullopt};
        return s;
    }

    [[nodiscard]] Setting sampled(const SampleSetting &s, const ShotPlan &plan,
                                  const ProtocolParams &p, SettingLabels labels) const {
        const SampledEstimate r = sample_protocol(s, plan);
        Setting out;
        out.est.value = r.value;
        out.est.setting = labels;
        out.est.scheme = Scheme::substitution;
        out.est.gt_products = {p.gt()};
        out.stderr_re = r.stderr_re;
        out.stderr_im = r.stderr_im;
        if (s.postselect) {
            out.est.postselect_prob =
                1.0 - static_cast<double>(r.shots_rejected) / static_cast<double>(plan.shots);
        }
        out.est.diagnostics.push_back(fmt::format("sampled: {} shots ({} position, {} momentum, {} rejected)",
                                                  plan.shots, r.shots_position, r.shots_momentum,
                                                  r.shots_rejected));
        return out;
    }

    [[nodiscard]] std::vector<Setting> wrap(std::vector<ProtocolEstimate> estimates) const {
        std::vector<Setting> out;
        out.reserve(estimates.size());
        for (auto &e : estimates) {
            out.push_back({std::move(e), std::nullopt, std::nullopt});
        }
        return out;
    }

    [[nodiscard]] std::vector<Setting> compute(const Task &task, const ProtocolParams &p) const {
        switch (cfg_.protocol) {
        case Protocol::wavefunction:
            return wavefunction(task, p);
        case Protocol::dirac:
            return dirac(task, p);
        case Protocol::density:
            return wrap(density_row(cfg_.rho, task.row, p));
        case Protocol::product:
            return product(task, p);
        }
        return {};
    }

    [[nodiscard]] std::vector<Setting> wavefunction(const Task &task, const ProtocolParams &p) const {
        if (!plan_) {
            return wrap(direct_wavefunction(*cfg_.psi, p).weak_values);
        }
        const double overlap = std::norm(b0_.amps().dot(cfg_.psi->amps()));
        if (overlap < kMinProtocolPostselect) {
            throw PostSelectionError("state is (nearly) orthogonal to b0", overlap);
        }
        std::vector<Setting> out;
        const DensityMatrix rho = DensityMatrix::pure(*cfg_.psi);
        for (int a = 0; a < n_; ++a) {
            SampleSetting s = sample_setting(p, rho, projector(standard_ket(n_, a)));
            s.postselect = b0_;
            out.push_back(sampled(s, plan_for(task, a), p, with_a(a)));
        }
        return out;
    }

    [[nodiscard]] std::vector<Setting> dirac(const Task &task, const ProtocolParams &p) const {
        if (!plan_) {
            return wrap(dirac_row(cfg_.rho, task.row, p));
        }
        std::vector<Setting> out;
        for (int b = 0; b < n_; ++b) {
            SampleSetting s = sample_setting(p, cfg_.rho, projector(standard_ket(n_, task.row)));
            s.strong = indicator(n_, {BasisKind::fourier, b});
            out.push_back(sampled(s, plan_for(task, b), p, with_a(task.row, b)));
        }
        return out;
    }

    [[nodiscard]] std::vector<Setting> product(const Task &task, const ProtocolParams &p) const {
        const OperatorMatrix e = label_projector(n_, cfg_.product_e);
        const OperatorMatrix f = label_projector(n_, cfg_.product_f);
        if (plan_) {
            SampleSetting s = sample_setting(p, cfg_.rho, f);
            s.strong = indicator(n_, cfg_.product_e);
            return {sampled(s, plan_for(task, 0), p, {})};
        }
        switch (p.scheme) {
        case Scheme::substitution:
            return wrap({weak_strong_product(cfg_.rho, f, indicator(n_, cfg_.product_e), p)});
        case Scheme::scheme1:
            return wrap({scheme1_weak_product(cfg_.rho, e, f, p)});
        case Scheme::scheme2:
            return wrap({scheme2_weak_product(cfg_.rho, e, f, p)});
        }
        return {};
    }

    const ScenarioConfig &cfg_;
    int n_;
    StateVector b0_;
    std::optional<ShotPlan> plan_;
    Matrix dirac_exact_;
    Matrix triple_exact_;
};

EstimateRow to_row(const ScenarioConfig &cfg, double gt, const Setting &s, Complex oracle_value) {
    EstimateRow r;
    r.protocol = std::string(to_string(cfg.protocol));
    r.scheme = std::string(to_string(s.est.scheme));
    r.gt = gt;
    r.a = s.est.setting.a;
    r.b = s.est.setting.b;
    r.a1 = s.est.setting.a1;
    r.a2 = s.est.setting.a2;
    r.value = s.est.value;
    r.oracle = oracle_value;
    r.abs_error = std::abs(s.est.value - oracle_value);
    r.postselect_prob = s.est.postselect_prob;
    r.stderr_re = s.stderr_re;
    r.stderr_im = s.stderr_im;
    r.diagnostics = join_notes(s.est.diagnostics);
    return r;
}

Matrix normalized_density(const Matrix &m) {
    Matrix h = hermitize(m);
    return h / h.trace().real();
}

json label_json(BasisLabel label) {
    return {{"basis", std::string(to_string(label.kind))}, {"index", label.index}};
}

json complex_array(const Vector &v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        arr.push_back({v(i).real(), v(i).imag()});
    }
    return arr;
}

/// Where the report finds the reconstructed state and its exact counterpart.
json state_layout(Protocol protocol) {
    switch (protocol) {
    case Protocol::wavefunction:
        return {{"kind", "vector"}, {"estimate", "estimate"}, {"exact", "exact"}, {"metric", "distance"}};
    case Protocol::dirac:
        return {{"kind", "density"}, {"estimate", "density"}, {"exact", "rho"}, {"metric", "trace_distance"}};
    case Protocol::density:
        return {{"kind", "density"}, {"estimate", "estimate"}, {"exact", "rho"}, {"metric", "trace_distance"}};
    case Protocol::product:
        break;
    }
    return nullptr;
}

json manifest(const ScenarioConfig &cfg, const RunOptions &opts, const RunResult &result,
              const std::string &command, const StateVector &b0) {
    json m;
    m["tool"] = "weakdm";
    m["version"] = kVersion;
    m["command"] = command;
    m["config"] = cfg.source;
    m["state"] = cfg.state_label;
    m["dimension"] = cfg.dim();
    m["pure"] = cfg.psi.has_value();
    m["protocol"] = std::string(to_string(cfg.protocol));
    m["scheme"] = std::string(to_string(cfg.scheme));
    m["sweep"] = cfg.sweep;
    m["hbar"] = kHbar;
    m["pointer"] = {{"grid_points", cfg.grid_points},
                    {"half_width", cfg.half_width},
                    {"sigma", cfg.sigma},
                    {"t", cfg.t},
                    {"triple_grid_points", cfg.triple_grid_points},
                    {"triple_half_width", cfg.triple_half_width},
                    {"initial_state", "gaussian exp(-q^2/(4 sigma^2))"}};
    m["b0"] = label_json(cfg.b0);
    m["b0"]["amplitudes"] = complex_array(b0.amps());
    if (cfg.protocol == Protocol::product) {
        m["product"] = {{"e", label_json(cfg.product_e)}, {"f", label_json(cfg.product_f)}};
    }
    json kappa;
    kappa["analytic"] = "(2 sigma / g t)^pointers";
    kappa["scale"] = cfg.kappa_scale;
    json values = json::array();
    for (double gt : cfg.sweep) {
        const ProtocolParams p = cfg.params_for(gt);
        values.push_back({{"gt", gt}, {"pair", p.kappa(2)}, {"triple", p.kappa(3)}});
    }
    kappa["values"] = values;
    if (result.calibration) {
        json points = json::array();
        for (const auto &pt : result.calibration->points) {
            points.push_back({{"gt", pt.gt}, {"moment", {pt.moment.real(), pt.moment.imag()}},
                              {"ratio", pt.ratio}});
        }
        kappa["calibration"] = {{"sweep", kCalibrationSweep},
                                {"points", points},
                                {"extrapolated_ratio", result.calibration->extrapolated_ratio},
                                {"relative_deviation", result.calibration->relative_deviation()}};
    } else {
        kappa["calibration"] = nullptr;
    }
    m["kappa"] = kappa;
    m["limits"] = {{"min_postselect_probability", kMinProtocolPostselect},
                   {"weak_regime_limit", kWeakRegimeLimit}};
    if (cfg.sampling) {
        m["sampling"] = {{"shots", cfg.sampling->shots},
                         {"seed", opts.seed ? *opts.seed : cfg.sampling->seed},
                         {"readout_split", cfg.sampling->readout_split}};
    } else {
        m["sampling"] = nullptr;
    }
    m["seed"] = opts.seed ? json(*opts.seed) : (cfg.sampling ? json(cfg.sampling->seed) : json(nullptr));
    m["threads"] = result.threads;
    m["format"] = std::string(to_string(opts.format));
    m["state_layout"] = state_layout(cfg.protocol);
    json failures = json::array();
    for (const auto &f : result.failures) {
        failures.push_back({{"gt", f.gt},
                            {"setting", f.setting},
                            {"category", f.category ? std::string(to_string(*f.category)) : "other"},
                            {"message", f.message}});
    }
    m["failures"] = failures;
    return m;
}

void write_all(const ScenarioConfig &cfg, const RunOptions &opts, RunResult &result,
               const std::string &command, const StateVector &b0) {
    result.manifest = manifest(cfg, opts, result, command, b0).dump(2) + "\n";
    if (!opts.write) {
        return;
    }
    std::error_code ec;
    std::filesystem::create_directories(opts.out_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory " + opts.out_dir.string() + ": " + ec.message());
    }
    write_estimates(opts.out_dir, result.estimates, opts.format);
    write_state(opts.out_dir, result.state, opts.format);
    write_metrics(opts.out_dir, result.metrics, opts.format);
    write_text(opts.out_dir / "manifest.json", result.manifest);
}

void append(std::vector<StateEntry> &dst, std::vector<StateEntry> src) {
    dst.insert(dst.end(), std::make_move_iterator(src.begin()), std::make_move_iterator(src.end()));
}

void exact_entries(const ScenarioConfig &cfg, const Runner &runner, std::vector<StateEntry> &out) {
    append(out, matrix_entries(cfg.rho.entries(), "rho", 0.0));
    switch (cfg.protocol) {
    case Protocol::wavefunction:
        append(out, matrix_entries(fix_global_phase(cfg.psi->amps()), "exact", 0.0));
        break;
    case Protocol::dirac:
        append(out, matrix_entries(runner.dirac_exact(), "exact", 0.0));
        break;
    case Protocol::density:
    case Protocol::product:
        break;
    }
}

} // namespace

RunResult run_scenario(const ScenarioConfig &config, const RunOptions &options) {
    Runner runner(config, options);
    runner.prepare_oracles();
    RunResult result;
    result.threads = resolve_threads(options.threads ? *options.threads : config.threads);

    const std::vector<Task> tasks = runner.tasks();
    std::vector<TaskOutput> outputs(tasks.size());
    run_pool(tasks.size(), result.threads,
             [&](std::size_t i) { outputs[i] = runner.execute(tasks[i]); });

    const int n = config.dim();
    std::size_t next = 0;
    for (std::size_t g = 0; g < config.sweep.size(); ++g) {
        const double gt = config.sweep[g];
        std::vector<Setting> settings;
        bool complete = true;
        for (; next < tasks.size() && tasks[next].gt_index == g; ++next) {
            auto &out = outputs[next];
            if (out.failure) {
                result.failures.push_back(*out.failure);
                complete = false;
                continue;
            }
            for (auto &s : out.settings) {
                settings.push_back(std::move(s));
            }
        }
        for (const auto &s : settings) {
            result.estimates.push_back(to_row(config, gt, s, runner.oracle_value(s.est.setting)));
        }
        if (!complete) {
            continue;
        }

        switch (config.protocol) {
        case Protocol::wavefunction: {
            const Vector raw = runner.wavefunction_raw(settings);
            const Vector normalized = fix_global_phase(raw);
            append(result.state, matrix_entries(normalized, "estimate", gt));
            append(result.state, matrix_entries(raw, "raw", gt));
            result.metrics.push_back(
                {gt, "distance", (normalized - fix_global_phase(config.psi->amps())).norm()});
            break;
        }
        case Protocol::dirac: {
            Matrix s(n, n);
            for (const auto &st : settings) {
                s(*st.est.setting.a, *st.est.setting.b) = st.est.value;
            }
            const Matrix density = normalized_density(dirac_to_density(s));
            append(result.state, matrix_entries(s, "estimate", gt));
            append(result.state, matrix_entries(density, "density", gt));
            result.metrics.push_back({gt, "trace_distance", trace_distance(density, config.rho.entries())});
            result.metrics.push_back({gt, "dirac_max_error", (s - runner.dirac_exact()).cwiseAbs().maxCoeff()});
            result.metrics.push_back({gt, "min_eigenvalue", min_eigenvalue(density)});
            break;
        }
        case Protocol::density: {
            std::vector<ProtocolEstimate> estimates;
            for (const auto &st : settings) {
                estimates.push_back(st.est);
            }
            const DensityEstimate d = assemble_density(runner.b0(), std::move(estimates));
            append(result.state, matrix_entries(d.normalized, "estimate", gt));
            append(result.state, matrix_entries(d.raw, "raw", gt));
            result.metrics.push_back(
                {gt, "trace_distance", trace_distance(d.normalized, config.rho.entries())});
            result.metrics.push_back({gt, "min_eigenvalue", d.min_eigenvalue});
            break;
        }
        case Protocol::product:
            break;
        }
    }
    exact_entries(config, runner, result.state);

    try {
        result.calibration = calibrate_scheme1(config.params_for(kCalibrationSweep.front()),
                                               kCalibrationSweep);
    } catch (const Error &e) {
        result.failures.push_back({0.0, "calibration", e.category(), e.what()});
    }

    write_all(config, options, result, "run", runner.b0());
    return result;
}

RunResult oracle_scenario(const ScenarioConfig &config, const RunOptions &options) {
    Runner runner(config, options);
    runner.prepare_oracles();
    RunResult result;
    result.threads = 1;
    for (const auto &labels_ : runner.all_settings()) {
        Setting s;
        s.est.setting = labels_;
        s.est.scheme = config.scheme;
        try {
            s.est.value = runner.oracle_value(labels_);
        } catch (const Error &e) {
            result.failures.push_back({0.0, labels(labels_), e.category(), e.what()});
            continue;
        }
        result.estimates.push_back(to_row(config, 0.0, s, s.est.value));
    }
    exact_entries(config, runner, result.state);
    write_all(config, options, result, "oracle", runner.b0());
    return result;
}

CalibrationResult run_calibration(const ProtocolParams &params, std::span<const double> sweep,
                                  const RunOptions &options) {
    const CalibrationResult cal = calibrate_scheme1(params, sweep);
    if (!options.write) {
        return cal;
    }
    std::error_code ec;
    std::filesystem::create_directories(options.out_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory " + options.out_dir.string());
    }
    if (options.format == OutputFormat::csv) {
        std::string text = "gt,moment_re,moment_im,ratio\n";
        for (const auto &p : cal.points) {
            text += fmt::format("{},{},{},{}\n", format_double(p.gt), format_double(p.moment.real()),
                                format_double(p.moment.imag()), format_double(p.ratio));
        }
        text += fmt::format("0,,,{}\n", format_double(cal.extrapolated_ratio));
        write_text(options.out_dir / "calibration.csv", text);
    } else {
        json points = json::array();
        for (const auto &p : cal.points) {
            points.push_back({{"gt", p.gt},
                              {"moment_re", p.moment.real()},
                              {"moment_im", p.moment.imag()},
                              {"ratio", p.ratio}});
        }
        write_text(options.out_dir / "calibration.json",
                   json{{"points", points},
                        {"extrapolated_ratio", cal.extrapolated_ratio},
                        {"relative_deviation", cal.relative_deviation()}}
                           .dump(2) +
                       "\n");
    }
    return cal;
}

} // namespace weakdm::cli
