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

#include "weakdm/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "weakdm/analysis.hpp"
#include "weakdm/cli/config.hpp"
#include "weakdm/error.hpp"
#include "weakdm/protocols.hpp"

namespace weakdm::cli {

using nlohmann::json;

namespace {

std::string setting_key(const EstimateRow &r) {
    std::string key = r.scheme + ":";
    auto add = [&](const char *name, const std::optional<int> &v) {
        if (v) {
            key += (key.back() == ':' ? "" : ",") + std::string(name) + "=" + std::to_string(*v);
        }
    };
    add("a", r.a);
    add("b", r.b);
    add("a1", r.a1);
    add("a2", r.a2);
    return key;
}

std::optional<double> slope_of(const std::vector<double> &gt, const std::vector<double> &errors) {
    if (std::any_of(errors.begin(), errors.end(), [](double e) { return !(e > 0.0); })) {
        return std::nullopt;
    }
    return fit_convergence_slope(gt, errors);
}

double state_metric(const std::string &kind, const Matrix &estimate, const Matrix &exact) {
    if (kind == "vector") {
        return (fix_global_phase(estimate.col(0)) - fix_global_phase(exact.col(0))).norm();
    }
    Matrix h = hermitize(estimate);
    return trace_distance(h / h.trace().real(), exact);
}

std::string fmt_slope(const std::optional<double> &s) {
    return s ? fmt::format("{:#.3g}", *s) : std::string("n/a");
}

} // namespace

Report build_report(const std::filesystem::path &dir) {
    json manifest;
    try {
        manifest = json::parse(read_text(dir / "manifest.json"));
    } catch (const json::exception &e) {
        throw IoError((dir / "manifest.json").string() + ": " + e.what());
    }
    const std::vector<EstimateRow> rows = read_estimates(dir);

    std::set<double> couplings;
    for (const auto &r : rows) {
        if (r.gt > 0.0) {
            couplings.insert(r.gt);
        }
    }
    if (couplings.size() < 2) {
        throw InvalidArgument("report needs at least two coupling values, found " +
                              std::to_string(couplings.size()));
    }

    Report report;
    report.protocol = manifest.value("protocol", "");

    std::map<std::string, std::vector<const EstimateRow *>> groups;
    std::vector<std::string> order;
    for (const auto &r : rows) {
        const std::string key = setting_key(r);
        if (!groups.count(key)) {
            order.push_back(key);
        }
        groups[key].push_back(&r);
    }
    for (const auto &key : order) {
        auto group = groups[key];
        std::sort(group.begin(), group.end(),
                  [](const EstimateRow *x, const EstimateRow *y) { return x->gt > y->gt; });
        SettingSummary s;
        s.key = key;
        s.scheme = group.front()->scheme;
        s.oracle = group.front()->oracle;
        std::vector<Complex> values;
        for (const auto *r : group) {
            s.gt.push_back(r->gt);
            s.errors.push_back(r->abs_error);
            values.push_back(r->value);
        }
        if (s.gt.size() >= 2) {
            s.slope = slope_of(s.gt, s.errors);
            s.monotone = strictly_decreasing(s.errors);
            s.extrapolated = extrapolate_to_zero(s.gt, values);
        } else {
            s.extrapolated = values.front();
        }
        s.extrapolated_error = std::abs(s.extrapolated - s.oracle);
        report.settings.push_back(std::move(s));
    }

    const json layout = manifest.value("state_layout", json(nullptr));
    if (layout.is_object()) {
        const std::vector<StateEntry> entries = read_state(dir);
        const std::string kind = layout.at("kind").get<std::string>();
        const Matrix exact = state_matrix(entries, layout.at("exact").get<std::string>(), 0.0);
        const std::string name = layout.at("estimate").get<std::string>();

        StateSummary st;
        st.metric = layout.at("metric").get<std::string>();
        std::vector<Matrix> estimates;
        for (auto it = couplings.rbegin(); it != couplings.rend(); ++it) {
            Matrix m = state_matrix(entries, name, *it);
            if (m.size() == 0) {
                continue;
            }
            st.gt.push_back(*it);
            st.values.push_back(state_metric(kind, m, exact));
            estimates.push_back(std::move(m));
        }
        if (st.gt.size() >= 2) {
            st.slope = slope_of(st.gt, st.values);
            Matrix extrapolated(estimates.front().rows(), estimates.front().cols());
            std::vector<Complex> series(estimates.size());
            for (Eigen::Index i = 0; i < extrapolated.size(); ++i) {
                for (std::size_t k = 0; k < estimates.size(); ++k) {
                    series[k] = estimates[k](i);
                }
                extrapolated(i) = extrapolate_to_zero(st.gt, series);
            }
            st.extrapolated = state_metric(kind, extrapolated, exact);
            report.state = std::move(st);
        }
    }
    return report;
}

void write_report(const std::filesystem::path &dir, const Report &report) {
    std::string settings =
        "key,scheme,points,slope,monotone,extrapolated_re,extrapolated_im,oracle_re,oracle_im,"
        "extrapolated_error,smallest_gt_error\n";
    std::string curve = "kind,key,gt,log_gt,value,log_value\n";
    auto curve_row = [&](const char *kind, const std::string &key, double gt, double v) {
        curve += fmt::format("{},{},{},{},{},{}\n", kind, key, format_double(gt),
                             format_double(std::log(gt)), format_double(v),
                             v > 0.0 ? format_double(std::log(v)) : std::string());
    };
    json js_settings = json::array();
    for (const auto &s : report.settings) {
        settings += fmt::format("\"{}\",{},{},{},{},{},{},{},{},{},{}\n", s.key, s.scheme, s.gt.size(),
                                s.slope ? format_double(*s.slope) : std::string(),
                                s.monotone ? "true" : "false", format_double(s.extrapolated.real()),
                                format_double(s.extrapolated.imag()), format_double(s.oracle.real()),
                                format_double(s.oracle.imag()), format_double(s.extrapolated_error),
                                format_double(s.errors.back()));
        for (std::size_t i = 0; i < s.gt.size(); ++i) {
            curve_row("setting", "\"" + s.key + "\"", s.gt[i], s.errors[i]);
        }
        js_settings.push_back({{"key", s.key},
                               {"slope", s.slope ? json(*s.slope) : json(nullptr)},
                               {"monotone", s.monotone},
                               {"extrapolated", {s.extrapolated.real(), s.extrapolated.imag()}},
                               {"extrapolated_error", s.extrapolated_error}});
    }
    json js = {{"protocol", report.protocol}, {"settings", js_settings}};
    if (report.state) {
        const auto &st = *report.state;
        for (std::size_t i = 0; i < st.gt.size(); ++i) {
            curve_row("state", st.metric, st.gt[i], st.values[i]);
        }
        js["state"] = {{"metric", st.metric},
                       {"gt", st.gt},
                       {"values", st.values},
                       {"slope", st.slope ? json(*st.slope) : json(nullptr)},
                       {"extrapolated", st.extrapolated}};
    } else {
        js["state"] = nullptr;
    }
    write_text(dir / "report_settings.csv", settings);
    write_text(dir / "report_curve.csv", curve);
    write_text(dir / "report.json", js.dump(2) + "\n");
}

std::string format_report(const Report &report) {
    std::string out = fmt::format("protocol {}: {} settings\n", report.protocol, report.settings.size());
    std::vector<double> slopes;
    int monotone = 0;
    double worst = 0.0;
    for (const auto &s : report.settings) {
        if (s.slope) {
            slopes.push_back(*s.slope);
        }
        monotone += s.monotone ? 1 : 0;
        worst = std::max(worst, s.extrapolated_error);
    }
    if (!slopes.empty()) {
        std::sort(slopes.begin(), slopes.end());
        out += fmt::format("  convergence slope: min {} median {} max {}\n", fmt_slope(slopes.front()),
                           fmt_slope(slopes[slopes.size() / 2]), fmt_slope(slopes.back()));
    }
    out += fmt::format("  monotone error: {}/{}\n", monotone, report.settings.size());
    out += fmt::format("  max extrapolated error: {:.3e}\n", worst);
    if (report.state) {
        out += fmt::format("  {}: slope {}, extrapolated {:.3e}\n", report.state->metric,
                           fmt_slope(report.state->slope), report.state->extrapolated);
    }
    return out;
}

} // namespace weakdm::cli
