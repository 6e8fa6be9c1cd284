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

#include "weakdm/kernels.hpp"

#include <cstddef>

namespace weakdm::kernels::scalar {

void mul(std::span<Complex> x, std::span<const Complex> w) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double wr = w[i].real(), wi = w[i].imag();
        x[i] = Complex(xr * wr - xi * wi, xr * wi + xi * wr);
    }
}

void mul_real(std::span<Complex> x, std::span<const double> w) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = Complex(x[i].real() * w[i], x[i].imag() * w[i]);
    }
}

void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y) {
    const double ar = a.real(), ai = a.imag();
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = Complex(y[i].real() + ar * xr - ai * xi, y[i].imag() + ar * xi + ai * xr);
    }
}

double norm2(std::span<const Complex> x) {
    double acc = 0.0;
    for (const Complex &v : x) {
        acc += v.real() * v.real() + v.imag() * v.imag();
    }
    return acc;
}

double weighted_norm2(std::span<const Complex> x, std::span<const double> w) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += w[i] * (x[i].real() * x[i].real() + x[i].imag() * x[i].imag());
    }
    return acc;
}

Complex dot(std::span<const Complex> x, std::span<const Complex> y) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        re += xr * yr + xi * yi;
        im += xr * yi - xi * yr;
    }
    return {re, im};
}

} // namespace weakdm::kernels::scalar
