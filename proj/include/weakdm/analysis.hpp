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
 * Coupling-sweep post-processing: zero-coupling extrapolation and
 * convergence-order fits.
 */

#include <span>

#include "weakdm/hilbert.hpp"

namespace weakdm {

/// Polynomial (Neville) extrapolation to gt = 0 in the variable x = gt^power.
/// Needs at least two distinct, positive gt values.
Complex extrapolate_to_zero(std::span<const double> gt, std::span<const Complex> values,
                            double power = 2.0);
double extrapolate_to_zero(std::span<const double> gt, std::span<const double> values,
                           double power = 2.0);

/// Least-squares slope of log(error) against log(gt). Errors must be positive.
double fit_convergence_slope(std::span<const double> gt, std::span<const double> errors);

/// True when errors[i+1] < errors[i] for every i (sweep ordered from large to small gt).
bool strictly_decreasing(std::span<const double> errors);

} // namespace weakdm
