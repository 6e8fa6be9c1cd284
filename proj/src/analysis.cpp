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

#include "weakdm/analysis.hpp"

#include <cmath>
#include <vector>

#include "weakdm/error.hpp"

namespace weakdm {

namespace {

void check_sweep(std::span<const double> gt, std::size_t values) {
    if (gt.size() != values) {
        throw InvalidArgument("sweep and value lists differ in length");
    }
    if (gt.size() < 2) {
        throw InvalidArgument("need at least two coupling values");
    }
    for (std::size_t i = 0; i < gt.size(); ++i) {
        if (!(gt[i] > 0.0)) {
            throw InvalidArgument("coupling values must be positive");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (gt[i] == gt[j]) {
                throw InvalidArgument("coupling values must be distinct");
            }
        }
    }
}

template <class T>
T neville_at_zero(std::span<const double> gt, std::span<const T> values, double power) {
    check_sweep(gt, values.size());
    const std::size_t n = gt.size();
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = std::pow(gt[i], power);
    }
    std::vector<T> p(values.begin(), values.end());
    for (std::size_t m = 1; m < n; ++m) {
        for (std::size_t i = 0; i + m < n; ++i) {
            // P_{i..i+m}(0) from P_{i..i+m-1}(0) and P_{i+1..i+m}(0)
            p[i] = (x[i] * p[i + 1] - x[i + m] * p[i]) / (x[i] - x[i + m]);
        }
    }
    return p[0];
}

} // namespace

Complex extrapolate_to_zero(std::span<const double> gt, std::span<const Complex> values,
                            double power) {
    return neville_at_zero(gt, values, power);
}

double extrapolate_to_zero(std::span<const double> gt, std::span<const double> values,
                           double power) {
    return neville_at_zero(gt, values, power);
}

double fit_convergence_slope(std::span<const double> gt, std::span<const double> errors) {
    check_sweep(gt, errors.size());
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
    const double n = static_cast<double>(gt.size());
    for (std::size_t i = 0; i < gt.size(); ++i) {
        if (!(errors[i] > 0.0)) {
            throw InvalidArgument("convergence fit needs positive errors");
        }
        const double lx = std::log(gt[i]);
        const double ly = std::log(errors[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

bool strictly_decreasing(std::span<const double> errors) {
    for (std::size_t i = 1; i < errors.size(); ++i) {
        if (!(errors[i] < errors[i - 1])) {
            return false;
        }
    }
    return true;
}

} // namespace weakdm
