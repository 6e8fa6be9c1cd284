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
 * Finite-ensemble emulation of single-pointer protocols. Each shot samples
 * the strong outcome (if any) from its exact probability and then reads
 * exactly one pointer quadrature from the conditioned grid density.
 *
 * Draws come from a counter-based generator keyed on (seed, shot index,
 * stream), so results do not depend on how shots are split across threads.
 */

#include <cstdint>
#include <optional>

#include "weakdm/hilbert.hpp"
#include "weakdm/pointer.hpp"
#include "weakdm/protocols.hpp"

namespace weakdm {

struct ShotPlan {
    std::uint64_t shots = 1000;
    std::uint64_t seed = 0;
    /// Probability that a shot reads position rather than momentum.
    double readout_split = 0.5;
    int threads = 1;

    void validate() const;
};

struct SampledEstimate {
    Complex value;
    double stderr_re = 0.0;
    double stderr_im = 0.0;
    std::uint64_t shots_position = 0;
    std::uint64_t shots_momentum = 0;
    /// Shots discarded by post-selection.
    std::uint64_t shots_rejected = 0;
};

/// One weakly coupled Hermitian observable, read out in one of three ways:
///  - neither postselect nor strong: weak average Tr[A rho];
///  - postselect: weak value <c|A rho|c>/<c|rho|c>, shots with other outcomes discarded;
///  - strong: sum_c c P(c) <A^w>_c = Tr[C A rho].
struct SampleSetting {
    DensityMatrix rho;
    OperatorMatrix observable;
    PointerGrid grid{512, 16.0};
    double sigma = 1.0;
    double g = 0.02;
    double t = 1.0;
    std::optional<StateVector> postselect;
    std::optional<MeasurementBasis> strong;
};

SampledEstimate sample_protocol(const SampleSetting &setting, const ShotPlan &plan);

/// The noiseless value the sampled estimator converges to (grid moments, no shot noise).
Complex deterministic_value(const SampleSetting &setting);

/// Uniform double in [0, 1) determined by (seed, counter, stream).
double counter_uniform(std::uint64_t seed, std::uint64_t counter, std::uint64_t stream) noexcept;

} // namespace weakdm
