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

#include "weakdm/cli/presets.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "weakdm/cli/config.hpp"

namespace weakdm::cli {

namespace {

std::optional<int> suffix_index(std::string_view name, std::string_view prefix) {
    if (name.substr(0, prefix.size()) != prefix || name.size() == prefix.size()) {
        return std::nullopt;
    }
    const std::string_view digits = name.substr(prefix.size());
    int value = 0;
    const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || end != digits.data() + digits.size()) {
        return std::nullopt;
    }
    return value;
}

int require_dim(std::string_view name, std::optional<int> dim) {
    if (!dim) {
        throw ConfigError("preset '" + std::string(name) + "' needs 'dimension'");
    }
    return *dim;
}

void require_qubit(std::string_view name, std::optional<int> dim) {
    if (dim && *dim != 2) {
        throw ConfigError("preset '" + std::string(name) + "' is a qubit state but dimension is " +
                          std::to_string(*dim));
    }
}

StateVector plus_i() {
    Vector v(2);
    v << 1.0, Complex(0.0, 1.0);
    return StateVector::normalized(v);
}

PresetState pure(std::string_view name, StateVector psi) {
    return {std::string(name), DensityMatrix::pure(psi), std::move(psi)};
}

} // namespace

PresetState make_preset(std::string_view name, std::optional<int> dim, std::optional<double> purity) {
    if (purity && name != "werner") {
        throw ConfigError("'purity' only applies to the werner preset");
    }
    try {
        if (auto a = suffix_index(name, "basis-")) {
            return pure(name, standard_ket(require_dim(name, dim), *a));
        }
        if (auto b = suffix_index(name, "fourier-")) {
            return pure(name, fourier_ket(require_dim(name, dim), *b));
        }
    } catch (const InvalidArgument &e) {
        throw ConfigError("preset '" + std::string(name) + "': " + e.what());
    }
    if (name == "plus-i") {
        require_qubit(name, dim);
        return pure(name, plus_i());
    }
    if (name == "mixed") {
        const int n = require_dim(name, dim);
        if (n < 1) {
            throw ConfigError("dimension must be positive");
        }
        return {std::string(name), DensityMatrix::maximally_mixed(n), std::nullopt};
    }
    if (name == "mixed-qubit") {
        require_qubit(name, dim);
        return {std::string(name), DensityMatrix::maximally_mixed(2), std::nullopt};
    }
    if (name == "werner") {
        require_qubit(name, dim);
        const double target = purity.value_or(1.0);
        if (!(target >= 0.5 && target <= 1.0)) {
            throw ConfigError("werner purity must lie in [0.5, 1], got " + std::to_string(target));
        }
        // Tr[rho^2] = (1 + p^2) / 2
        const double p = std::sqrt(std::max(0.0, 2.0 * target - 1.0));
        const StateVector psi = plus_i();
        const Matrix m =
            p * psi.amps() * psi.amps().adjoint() + (1.0 - p) * 0.5 * Matrix::Identity(2, 2);
        PresetState out{std::string(name), DensityMatrix(m), std::nullopt};
        if (p == 1.0) {
            out.psi = psi;
        }
        return out;
    }
    throw ConfigError("unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() {
    return {"basis-<a>", "fourier-<b>", "plus-i", "mixed", "mixed-qubit", "werner"};
}

} // namespace weakdm::cli
