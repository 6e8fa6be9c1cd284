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

#include "weakdm/cli/config.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "weakdm/cli/presets.hpp"

namespace weakdm::cli {

std::string_view to_string(Protocol protocol) {
    switch (protocol) {
    case Protocol::wavefunction:
        return "wavefunction";
    case Protocol::dirac:
        return "dirac";
    case Protocol::density:
        return "density";
    case Protocol::product:
        return "product";
    }
    return "unknown";
}

std::string_view to_string(BasisKind kind) {
    return kind == BasisKind::standard ? "standard" : "fourier";
}

ProtocolParams ScenarioConfig::params_for(double gt) const {
    ProtocolParams p;
    p.grid_points = grid_points;
    p.half_width = half_width;
    p.triple_grid_points = triple_grid_points;
    p.triple_half_width = triple_half_width;
    p.sigma = sigma;
    p.t = t;
    p.g = gt / t;
    p.scheme = scheme;
    p.b0 = basis_ket(dim(), b0);
    p.kappa_scale = kappa_scale;
    return p;
}

namespace {

std::string locate(const YAML::Node &node, const std::string &field) {
    const YAML::Mark mark = node.Mark();
    if (mark.line >= 0) {
        return "line " + std::to_string(mark.line + 1) + ": field '" + field + "'";
    }
    return "field '" + field + "'";
}

[[noreturn]] void fail(const YAML::Node &node, const std::string &field, const std::string &msg) {
    throw ConfigError(locate(node, field) + ": " + msg);
}

template <class T> T scalar(const YAML::Node &node, const std::string &field, const char *expected) {
    if (!node.IsScalar()) {
        fail(node, field, std::string("expected ") + expected);
    }
    try {
        return node.as<T>();
    } catch (const YAML::Exception &) {
        fail(node, field, std::string("expected ") + expected + ", got '" + node.Scalar() + "'");
    }
}

double positive(const YAML::Node &node, const std::string &field) {
    const double v = scalar<double>(node, field, "a number");
    if (!(v > 0.0) || !std::isfinite(v)) {
        fail(node, field, "must be positive");
    }
    return v;
}

int positive_int(const YAML::Node &node, const std::string &field) {
    const int v = scalar<int>(node, field, "an integer");
    if (v < 1) {
        fail(node, field, "must be positive");
    }
    return v;
}

Complex complex_value(const YAML::Node &node, const std::string &field) {
    if (node.IsScalar()) {
        return {scalar<double>(node, field, "a number or [re, im]"), 0.0};
    }
    if (node.IsSequence() && node.size() == 2) {
        return {scalar<double>(node[0], field, "a number"), scalar<double>(node[1], field, "a number")};
    }
    fail(node, field, "expected a number or [re, im]");
}

void check_keys(const YAML::Node &map, const std::string &prefix,
                std::initializer_list<const char *> allowed) {
    if (!map.IsMap()) {
        fail(map, prefix.empty() ? "<root>" : prefix, "expected a mapping");
    }
    const std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto &kv : map) {
        const std::string key = kv.first.as<std::string>();
        if (keys.count(key) == 0) {
            fail(kv.first, prefix.empty() ? key : prefix + "." + key, "unknown key");
        }
    }
}

BasisLabel basis_label(const YAML::Node &node, const std::string &field) {
    check_keys(node, field, {"basis", "index"});
    BasisLabel label;
    if (node["basis"]) {
        const std::string kind = scalar<std::string>(node["basis"], field + ".basis", "a string");
        if (kind == "standard") {
            label.kind = BasisKind::standard;
        } else if (kind == "fourier") {
            label.kind = BasisKind::fourier;
        } else {
            fail(node["basis"], field + ".basis", "expected 'standard' or 'fourier'");
        }
    } else {
        fail(node, field + ".basis", "missing");
    }
    if (!node["index"]) {
        fail(node, field + ".index", "missing");
    }
    label.index = scalar<int>(node["index"], field + ".index", "an integer");
    return label;
}

void check_label(const YAML::Node &node, const std::string &field, const BasisLabel &label, int dim) {
    if (label.index < 0 || label.index >= dim) {
        fail(node, field + ".index",
             "index " + std::to_string(label.index) + " outside [0, " + std::to_string(dim - 1) + "]");
    }
}

void parse_state(const YAML::Node &root, ScenarioConfig &cfg) {
    const YAML::Node state = root["state"];
    if (!state) {
        fail(root, "state", "missing");
    }
    check_keys(state, "state", {"preset", "amplitudes", "density", "random", "purity"});
    const int given = (state["preset"] ? 1 : 0) + (state["amplitudes"] ? 1 : 0) +
                      (state["density"] ? 1 : 0) + (state["random"] ? 1 : 0);
    if (given != 1) {
        fail(state, "state", "give exactly one of preset, amplitudes, density, random");
    }
    std::optional<int> dim;
    if (root["dimension"]) {
        dim = positive_int(root["dimension"], "dimension");
    }
    if (state["purity"] && !state["preset"]) {
        fail(state["purity"], "state.purity", "only valid with a preset");
    }

    auto check_dim = [&](int n, const YAML::Node &node, const std::string &field) {
        if (dim && *dim != n) {
            fail(node, field,
                 "has dimension " + std::to_string(n) + " but 'dimension' is " + std::to_string(*dim));
        }
    };

    if (state["preset"]) {
        const std::string name = scalar<std::string>(state["preset"], "state.preset", "a string");
        std::optional<double> purity;
        if (state["purity"]) {
            purity = scalar<double>(state["purity"], "state.purity", "a number");
        }
        try {
            PresetState preset = make_preset(name, dim, purity);
            cfg.rho = preset.rho;
            cfg.psi = preset.psi;
            cfg.state_label = preset.name;
        } catch (const ConfigError &e) {
            fail(state["preset"], "state.preset", e.what());
        }
    } else if (state["amplitudes"]) {
        const YAML::Node amps = state["amplitudes"];
        if (!amps.IsSequence() || amps.size() == 0) {
            fail(amps, "state.amplitudes", "expected a non-empty list");
        }
        Vector v(static_cast<Eigen::Index>(amps.size()));
        for (std::size_t i = 0; i < amps.size(); ++i) {
            v(static_cast<Eigen::Index>(i)) =
                complex_value(amps[i], "state.amplitudes[" + std::to_string(i) + "]");
        }
        check_dim(static_cast<int>(v.size()), amps, "state.amplitudes");
        try {
            StateVector psi = StateVector::normalized(v);
            cfg.rho = DensityMatrix::pure(psi);
            cfg.psi = std::move(psi);
        } catch (const InvalidArgument &e) {
            fail(amps, "state.amplitudes", e.what());
        }
        cfg.state_label = "amplitudes";
    } else if (state["density"]) {
        const YAML::Node rows = state["density"];
        if (!rows.IsSequence() || rows.size() == 0) {
            fail(rows, "state.density", "expected a list of rows");
        }
        const auto n = static_cast<Eigen::Index>(rows.size());
        Matrix m(n, n);
        for (Eigen::Index r = 0; r < n; ++r) {
            const YAML::Node row = rows[static_cast<std::size_t>(r)];
            const std::string field = "state.density[" + std::to_string(r) + "]";
            if (!row.IsSequence() || static_cast<Eigen::Index>(row.size()) != n) {
                fail(row, field, "expected " + std::to_string(n) + " entries");
            }
            for (Eigen::Index c = 0; c < n; ++c) {
                m(r, c) = complex_value(row[static_cast<std::size_t>(c)],
                                        field + "[" + std::to_string(c) + "]");
            }
        }
        check_dim(static_cast<int>(n), rows, "state.density");
        try {
            cfg.rho = DensityMatrix(m);
        } catch (const InvalidArgument &e) {
            fail(rows, "state.density", e.what());
        }
        cfg.state_label = "density";
    } else {
        const YAML::Node random = state["random"];
        check_keys(random, "state.random", {"seed", "rank"});
        if (!dim) {
            fail(random, "dimension", "required for random states");
        }
        if (!random["seed"]) {
            fail(random, "state.random.seed", "missing");
        }
        const auto seed = scalar<std::uint64_t>(random["seed"], "state.random.seed", "an integer");
        const int rank = random["rank"] ? scalar<int>(random["rank"], "state.random.rank", "an integer")
                                        : *dim;
        if (rank < 1 || rank > *dim) {
            fail(random["rank"] ? random["rank"] : random, "state.random.rank",
                 "rank " + std::to_string(rank) + " must lie in [1, " + std::to_string(*dim) +
                     "] (dimension " + std::to_string(*dim) + ")");
        }
        cfg.rho = random_density(*dim, seed, rank);
        cfg.state_label = "random(seed=" + std::to_string(seed) + ", rank=" + std::to_string(rank) + ")";
    }

    if (!cfg.psi && std::abs(cfg.rho.purity() - 1.0) < 1e-12) {
        Eigen::SelfAdjointEigenSolver<Matrix> solver(cfg.rho.entries());
        cfg.psi = StateVector::normalized(solver.eigenvectors().col(cfg.rho.dim() - 1));
    }
}

} // namespace

ScenarioConfig parse_config(const std::string &text, const std::string &source) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException &e) {
        throw ConfigError(source + ": line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
    }
    if (!root || root.IsNull()) {
        throw ConfigError(source + ": empty configuration");
    }

    ScenarioConfig cfg;
    cfg.source = source;
    try {
        check_keys(root, "", {"state", "dimension", "protocol", "scheme", "sweep", "pointer", "b0",
                              "product", "sampling", "threads"});
        parse_state(root, cfg);
        const int n = cfg.dim();

        if (!root["protocol"]) {
            fail(root, "protocol", "missing");
        }
        const std::string protocol = scalar<std::string>(root["protocol"], "protocol", "a string");
        if (protocol == "wavefunction") {
            cfg.protocol = Protocol::wavefunction;
        } else if (protocol == "dirac") {
            cfg.protocol = Protocol::dirac;
        } else if (protocol == "density") {
            cfg.protocol = Protocol::density;
        } else if (protocol == "product") {
            cfg.protocol = Protocol::product;
        } else {
            fail(root["protocol"], "protocol",
                 "expected wavefunction, dirac, density or product, got '" + protocol + "'");
        }

        if (root["scheme"]) {
            const std::string name = scalar<std::string>(root["scheme"], "scheme", "a string");
            try {
                cfg.scheme = scheme_from_string(name);
            } catch (const InvalidArgument &e) {
                fail(root["scheme"], "scheme", e.what());
            }
        }

        if (const YAML::Node sweep = root["sweep"]) {
            if (!sweep.IsSequence() || sweep.size() == 0) {
                fail(sweep, "sweep", "expected a non-empty list of coupling products");
            }
            cfg.sweep.clear();
            for (std::size_t i = 0; i < sweep.size(); ++i) {
                cfg.sweep.push_back(positive(sweep[i], "sweep[" + std::to_string(i) + "]"));
            }
            for (std::size_t i = 0; i < cfg.sweep.size(); ++i) {
                for (std::size_t j = 0; j < i; ++j) {
                    if (cfg.sweep[i] == cfg.sweep[j]) {
                        fail(sweep[i], "sweep[" + std::to_string(i) + "]", "duplicate coupling value");
                    }
                }
            }
        }

        if (const YAML::Node ptr = root["pointer"]) {
            check_keys(ptr, "pointer", {"grid_points", "half_width", "sigma", "t", "triple_grid_points",
                                        "triple_half_width", "kappa_scale"});
            if (ptr["grid_points"]) {
                cfg.grid_points = positive_int(ptr["grid_points"], "pointer.grid_points");
            }
            if (ptr["triple_grid_points"]) {
                cfg.triple_grid_points =
                    positive_int(ptr["triple_grid_points"], "pointer.triple_grid_points");
            }
            if (ptr["sigma"]) {
                cfg.sigma = positive(ptr["sigma"], "pointer.sigma");
            }
            // half-widths default to 16 sigma and 8 sigma
            cfg.half_width = 16.0 * cfg.sigma;
            cfg.triple_half_width = 8.0 * cfg.sigma;
            if (ptr["half_width"]) {
                cfg.half_width = positive(ptr["half_width"], "pointer.half_width");
            }
            if (ptr["triple_half_width"]) {
                cfg.triple_half_width = positive(ptr["triple_half_width"], "pointer.triple_half_width");
            }
            if (ptr["t"]) {
                cfg.t = positive(ptr["t"], "pointer.t");
            }
            if (ptr["kappa_scale"]) {
                cfg.kappa_scale = positive(ptr["kappa_scale"], "pointer.kappa_scale");
            }
            try {
                cfg.params_for(cfg.sweep.front()).validate();
            } catch (const InvalidArgument &e) {
                fail(ptr, "pointer", e.what());
            }
        }

        if (const YAML::Node b0 = root["b0"]) {
            cfg.b0 = basis_label(b0, "b0");
            check_label(b0, "b0", cfg.b0, n);
        }

        if (const YAML::Node product = root["product"]) {
            check_keys(product, "product", {"e", "f"});
            if (cfg.protocol != Protocol::product) {
                fail(product, "product", "only valid with protocol: product");
            }
            if (product["e"]) {
                cfg.product_e = basis_label(product["e"], "product.e");
                check_label(product["e"], "product.e", cfg.product_e, n);
            }
            if (product["f"]) {
                cfg.product_f = basis_label(product["f"], "product.f");
                check_label(product["f"], "product.f", cfg.product_f, n);
            }
        }

        if (const YAML::Node sampling = root["sampling"]) {
            check_keys(sampling, "sampling", {"shots", "seed", "readout_split"});
            SamplingSpec spec;
            if (sampling["shots"]) {
                spec.shots = scalar<std::uint64_t>(sampling["shots"], "sampling.shots", "an integer");
                if (spec.shots < 2) {
                    fail(sampling["shots"], "sampling.shots", "need at least 2 shots");
                }
            }
            if (sampling["seed"]) {
                spec.seed = scalar<std::uint64_t>(sampling["seed"], "sampling.seed", "an integer");
            }
            if (sampling["readout_split"]) {
                spec.readout_split =
                    scalar<double>(sampling["readout_split"], "sampling.readout_split", "a number");
                if (!(spec.readout_split > 0.0 && spec.readout_split < 1.0)) {
                    fail(sampling["readout_split"], "sampling.readout_split",
                         "must lie strictly between 0 and 1");
                }
            }
            const bool single_pointer =
                cfg.scheme == Scheme::substitution && cfg.protocol != Protocol::density;
            if (!single_pointer) {
                fail(sampling, "sampling",
                     "shot sampling covers single-pointer settings only (wavefunction, or dirac and "
                     "product with scheme substitution)");
            }
            cfg.sampling = spec;
        }

        if (root["threads"]) {
            cfg.threads = scalar<int>(root["threads"], "threads", "an integer");
            if (cfg.threads < 0) {
                fail(root["threads"], "threads", "must be non-negative");
            }
        }

        if (cfg.protocol == Protocol::wavefunction && !cfg.psi) {
            fail(root["state"], "state", "the wavefunction protocol needs a pure state");
        }
        if (cfg.protocol == Protocol::density && cfg.scheme == Scheme::scheme2) {
            fail(root["scheme"], "scheme",
                 "scheme2 cannot feed a strong readout; use substitution or scheme1 for density");
        }
        if (cfg.protocol == Protocol::wavefunction && cfg.scheme != Scheme::substitution) {
            fail(root["scheme"], "scheme", "the wavefunction protocol uses a single pointer");
        }
        if (!is_unbiased(basis_ket(n, cfg.b0))) {
            fail(root["b0"] ? root["b0"] : root, "b0", "must be unbiased with respect to the standard basis");
        }
        cfg.params_for(cfg.sweep.front()).validate();
    } catch (const ConfigError &e) {
        throw ConfigError(source + ": " + e.what());
    } catch (const InvalidArgument &e) {
        throw ConfigError(source + ": " + e.what());
    }
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), path.string());
}

} // namespace weakdm::cli
