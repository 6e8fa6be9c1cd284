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

#include "weakdm/cli/io.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "weakdm/cli/config.hpp"

namespace weakdm::cli {

using nlohmann::json;

namespace {

const std::vector<std::string> kEstimateColumns = {
    "protocol", "scheme", "gt", "a", "b", "a1", "a2", "re", "im", "oracle_re", "oracle_im",
    "abs_error", "postselect_prob", "stderr_re", "stderr_im", "diagnostics"};
const std::vector<std::string> kStateColumns = {"gt", "name", "row", "col", "re", "im"};
const std::vector<std::string> kMetricColumns = {"gt", "name", "value"};

std::string quote(const std::string &field) {
    if (field.find_first_of(",\"\n") == std::string::npos) {
        return field;
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

std::string join(const std::vector<std::string> &fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) {
            line += ',';
        }
        line += quote(fields[i]);
    }
    return line + "\n";
}

std::vector<std::vector<std::string>> parse_csv(const std::string &text,
                                                const std::filesystem::path &path) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    bool any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        if (c == '"') {
            quoted = true;
            any = true;
        } else if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
            any = true;
        } else if (c == '\n') {
            row.push_back(std::move(field));
            field.clear();
            rows.push_back(std::move(row));
            row.clear();
            any = false;
        } else if (c != '\r') {
            field += c;
            any = true;
        }
    }
    if (quoted) {
        throw IoError(path.string() + ": unterminated quoted field");
    }
    if (any) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

double parse_double(const std::string &s, const std::filesystem::path &path) {
    errno = 0;
    char *end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
        throw IoError(path.string() + ": not a number: '" + s + "'");
    }
    return v;
}

int parse_int(const std::string &s, const std::filesystem::path &path) {
    const double v = parse_double(s, path);
    if (v != static_cast<int>(v)) {
        throw IoError(path.string() + ": not an integer: '" + s + "'");
    }
    return static_cast<int>(v);
}

std::string opt_str(const std::optional<int> &v) { return v ? std::to_string(*v) : ""; }
std::string opt_str(const std::optional<double> &v) { return v ? format_double(*v) : ""; }

std::optional<int> opt_int(const std::string &s, const std::filesystem::path &path) {
    if (s.empty()) {
        return std::nullopt;
    }
    return parse_int(s, path);
}

std::optional<double> opt_double(const std::string &s, const std::filesystem::path &path) {
    if (s.empty()) {
        return std::nullopt;
    }
    return parse_double(s, path);
}

json opt_json(const std::optional<int> &v) { return v ? json(*v) : json(nullptr); }
json opt_json(const std::optional<double> &v) { return v ? json(*v) : json(nullptr); }

template <class T> std::optional<T> json_opt(const json &j, const char *key) {
    if (!j.contains(key) || j.at(key).is_null()) {
        return std::nullopt;
    }
    return j.at(key).get<T>();
}

/// Rows of a CSV table keyed by column name, after checking the header.
std::vector<std::vector<std::string>> read_table(const std::filesystem::path &path,
                                                 const std::vector<std::string> &columns) {
    auto rows = parse_csv(read_text(path), path);
    if (rows.empty() || rows.front() != columns) {
        throw IoError(path.string() + ": unexpected header");
    }
    rows.erase(rows.begin());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != columns.size()) {
            throw IoError(path.string() + ": row " + std::to_string(i + 2) + " has " +
                          std::to_string(rows[i].size()) + " fields, expected " +
                          std::to_string(columns.size()));
        }
    }
    return rows;
}

json read_json(const std::filesystem::path &path) {
    try {
        return json::parse(read_text(path));
    } catch (const json::exception &e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

std::filesystem::path pick(const std::filesystem::path &dir, const std::string &stem) {
    const auto csv = dir / (stem + ".csv");
    if (std::filesystem::exists(csv)) {
        return csv;
    }
    const auto js = dir / (stem + ".json");
    if (std::filesystem::exists(js)) {
        return js;
    }
    throw IoError("no " + stem + ".csv or " + stem + ".json in " + dir.string());
}

} // namespace

std::string_view to_string(OutputFormat format) {
    return format == OutputFormat::csv ? "csv" : "structured";
}

OutputFormat format_from_string(std::string_view name) {
    if (name == "csv") {
        return OutputFormat::csv;
    }
    if (name == "structured") {
        return OutputFormat::structured;
    }
    throw ConfigError("format must be csv or structured, got '" + std::string(name) + "'");
}

std::string format_double(double value) { return fmt::format("{:.17g}", value); }

void write_text(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << text;
    if (!out.flush()) {
        throw IoError("write failed for " + path.string());
    }
}

std::string read_text(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

void write_estimates(const std::filesystem::path &dir, const std::vector<EstimateRow> &rows,
                     OutputFormat format) {
    if (format == OutputFormat::csv) {
        std::string text = join(kEstimateColumns);
        for (const auto &r : rows) {
            text += join({r.protocol, r.scheme, format_double(r.gt), opt_str(r.a), opt_str(r.b),
                          opt_str(r.a1), opt_str(r.a2), format_double(r.value.real()),
                          format_double(r.value.imag()), format_double(r.oracle.real()),
                          format_double(r.oracle.imag()), format_double(r.abs_error),
                          opt_str(r.postselect_prob), opt_str(r.stderr_re), opt_str(r.stderr_im),
                          r.diagnostics});
        }
        write_text(dir / "estimates.csv", text);
        return;
    }
    json arr = json::array();
    for (const auto &r : rows) {
        arr.push_back({{"protocol", r.protocol},
                       {"scheme", r.scheme},
                       {"gt", r.gt},
                       {"a", opt_json(r.a)},
                       {"b", opt_json(r.b)},
                       {"a1", opt_json(r.a1)},
                       {"a2", opt_json(r.a2)},
                       {"re", r.value.real()},
                       {"im", r.value.imag()},
                       {"oracle_re", r.oracle.real()},
                       {"oracle_im", r.oracle.imag()},
                       {"abs_error", r.abs_error},
                       {"postselect_prob", opt_json(r.postselect_prob)},
                       {"stderr_re", opt_json(r.stderr_re)},
                       {"stderr_im", opt_json(r.stderr_im)},
                       {"diagnostics", r.diagnostics}});
    }
    write_text(dir / "estimates.json", arr.dump(2) + "\n");
}

void write_state(const std::filesystem::path &dir, const std::vector<StateEntry> &entries,
                 OutputFormat format) {
    if (format == OutputFormat::csv) {
        std::string text = join(kStateColumns);
        for (const auto &e : entries) {
            text += join({format_double(e.gt), e.name, std::to_string(e.row), std::to_string(e.col),
                          format_double(e.value.real()), format_double(e.value.imag())});
        }
        write_text(dir / "state.csv", text);
        return;
    }
    json arr = json::array();
    for (const auto &e : entries) {
        arr.push_back({{"gt", e.gt},
                       {"name", e.name},
                       {"row", e.row},
                       {"col", e.col},
                       {"re", e.value.real()},
                       {"im", e.value.imag()}});
    }
    write_text(dir / "state.json", arr.dump(2) + "\n");
}

void write_metrics(const std::filesystem::path &dir, const std::vector<MetricRow> &rows,
                   OutputFormat format) {
    if (format == OutputFormat::csv) {
        std::string text = join(kMetricColumns);
        for (const auto &m : rows) {
            text += join({format_double(m.gt), m.name, format_double(m.value)});
        }
        write_text(dir / "metrics.csv", text);
        return;
    }
    json arr = json::array();
    for (const auto &m : rows) {
        arr.push_back({{"gt", m.gt}, {"name", m.name}, {"value", m.value}});
    }
    write_text(dir / "metrics.json", arr.dump(2) + "\n");
}

std::vector<EstimateRow> read_estimates(const std::filesystem::path &dir) {
    const auto path = pick(dir, "estimates");
    std::vector<EstimateRow> out;
    if (path.extension() == ".csv") {
        for (const auto &f : read_table(path, kEstimateColumns)) {
            EstimateRow r;
            r.protocol = f[0];
            r.scheme = f[1];
            r.gt = parse_double(f[2], path);
            r.a = opt_int(f[3], path);
            r.b = opt_int(f[4], path);
            r.a1 = opt_int(f[5], path);
            r.a2 = opt_int(f[6], path);
            r.value = {parse_double(f[7], path), parse_double(f[8], path)};
            r.oracle = {parse_double(f[9], path), parse_double(f[10], path)};
            r.abs_error = parse_double(f[11], path);
            r.postselect_prob = opt_double(f[12], path);
            r.stderr_re = opt_double(f[13], path);
            r.stderr_im = opt_double(f[14], path);
            r.diagnostics = f[15];
            out.push_back(std::move(r));
        }
        return out;
    }
    try {
        for (const auto &j : read_json(path)) {
            EstimateRow r;
            r.protocol = j.at("protocol").get<std::string>();
            r.scheme = j.at("scheme").get<std::string>();
            r.gt = j.at("gt").get<double>();
            r.a = json_opt<int>(j, "a");
            r.b = json_opt<int>(j, "b");
            r.a1 = json_opt<int>(j, "a1");
            r.a2 = json_opt<int>(j, "a2");
            r.value = {j.at("re").get<double>(), j.at("im").get<double>()};
            r.oracle = {j.at("oracle_re").get<double>(), j.at("oracle_im").get<double>()};
            r.abs_error = j.at("abs_error").get<double>();
            r.postselect_prob = json_opt<double>(j, "postselect_prob");
            r.stderr_re = json_opt<double>(j, "stderr_re");
            r.stderr_im = json_opt<double>(j, "stderr_im");
            r.diagnostics = j.value("diagnostics", "");
            out.push_back(std::move(r));
        }
    } catch (const json::exception &e) {
        throw IoError(path.string() + ": " + e.what());
    }
    return out;
}

std::vector<StateEntry> read_state(const std::filesystem::path &dir) {
    const auto path = pick(dir, "state");
    std::vector<StateEntry> out;
    if (path.extension() == ".csv") {
        for (const auto &f : read_table(path, kStateColumns)) {
            out.push_back({parse_double(f[0], path), f[1], parse_int(f[2], path),
                           parse_int(f[3], path),
                           Complex(parse_double(f[4], path), parse_double(f[5], path))});
        }
        return out;
    }
    try {
        for (const auto &j : read_json(path)) {
            out.push_back({j.at("gt").get<double>(), j.at("name").get<std::string>(),
                           j.at("row").get<int>(), j.at("col").get<int>(),
                           Complex(j.at("re").get<double>(), j.at("im").get<double>())});
        }
    } catch (const json::exception &e) {
        throw IoError(path.string() + ": " + e.what());
    }
    return out;
}

std::vector<MetricRow> read_metrics(const std::filesystem::path &dir) {
    const auto path = pick(dir, "metrics");
    std::vector<MetricRow> out;
    if (path.extension() == ".csv") {
        for (const auto &f : read_table(path, kMetricColumns)) {
            out.push_back({parse_double(f[0], path), f[1], parse_double(f[2], path)});
        }
        return out;
    }
    try {
        for (const auto &j : read_json(path)) {
            out.push_back({j.at("gt").get<double>(), j.at("name").get<std::string>(),
                           j.at("value").get<double>()});
        }
    } catch (const json::exception &e) {
        throw IoError(path.string() + ": " + e.what());
    }
    return out;
}

Matrix state_matrix(const std::vector<StateEntry> &entries, const std::string &name, double gt) {
    int rows = 0;
    int cols = 0;
    for (const auto &e : entries) {
        if (e.name == name && e.gt == gt) {
            rows = std::max(rows, e.row + 1);
            cols = std::max(cols, e.col + 1);
        }
    }
    Matrix m = Matrix::Zero(rows, cols);
    for (const auto &e : entries) {
        if (e.name == name && e.gt == gt) {
            m(e.row, e.col) = e.value;
        }
    }
    return m;
}

std::vector<StateEntry> matrix_entries(const Matrix &m, const std::string &name, double gt) {
    std::vector<StateEntry> out;
    out.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            out.push_back({gt, name, static_cast<int>(r), static_cast<int>(c), m(r, c)});
        }
    }
    return out;
}

} // namespace weakdm::cli
