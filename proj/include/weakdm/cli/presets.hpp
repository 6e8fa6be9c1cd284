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
 * Named states:
 *
 *   basis-<a>      standard ket |a>              (needs dimension)
 *   fourier-<b>    Fourier ket |b>               (needs dimension)
 *   plus-i         (|0> + i|1>)/sqrt(2)          (qubit)
 *   mixed          I/N                           (needs dimension)
 *   mixed-qubit    I/2
 *   werner         p |plus-i><plus-i| + (1 - p) I/2, p chosen so Tr[rho^2] = purity
 */

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "weakdm/hilbert.hpp"

namespace weakdm::cli {

struct PresetState {
    std::string name;
    DensityMatrix rho;
    std::optional<StateVector> psi;
};

/// Throws ConfigError for unknown names, missing or mismatched dimensions, or purity outside [0.5, 1].
PresetState make_preset(std::string_view name, std::optional<int> dim,
                        std::optional<double> purity = std::nullopt);

std::vector<std::string> preset_names();

} // namespace weakdm::cli
