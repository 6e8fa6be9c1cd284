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

#include "weakdm/pointer.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "weakdm/error.hpp"
#include "weakdm/fft.hpp"
#include "weakdm/kernels.hpp"

namespace weakdm {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

double grid_norm(std::span<const Complex> amps, double dq) { return kernels::norm2(amps) * dq; }

} // namespace

PointerGrid::PointerGrid(int points, double half_width)
    : points_(points), half_width_(half_width) {
    if (points < 16 || !is_power_of_two(points)) {
        throw InvalidArgument("pointer grid size must be a power of two >= 16, got " +
                              std::to_string(points));
    }
    if (!(half_width > 0.0) || !std::isfinite(half_width)) {
        throw InvalidArgument("pointer grid half-width must be positive");
    }
    spacing_ = 2.0 * half_width / points;
    auto q = std::make_shared<std::vector<double>>(points);
    auto k = std::make_shared<std::vector<double>>(points);
    const double dk = 2.0 * std::numbers::pi / (points * spacing_);
    for (int j = 0; j < points; ++j) {
        (*q)[j] = -half_width + j * spacing_;
        (*k)[j] = (j < points / 2 ? j : j - points) * dk;
    }
    positions_ = std::move(q);
    wavenumbers_ = std::move(k);
}

double PointerGrid::max_wavenumber() const noexcept { return std::numbers::pi / spacing_; }

PointerState::PointerState(PointerGrid grid, std::vector<Complex> amps)
    : grid_(std::move(grid)), amps_(std::move(amps)) {
    if (static_cast<int>(amps_.size()) != grid_.size()) {
        throw InvalidArgument("pointer amplitudes do not match the grid size");
    }
    const double norm = grid_norm(amps_, grid_.spacing());
    if (!(std::abs(norm - 1.0) <= 1e-10)) {
        throw InvalidArgument("pointer state is not normalised (grid norm " +
                              std::to_string(norm) + ")");
    }
}

PointerState PointerState::normalized(PointerGrid grid, std::vector<Complex> amps) {
    const double norm = grid_norm(amps, grid.spacing());
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw InvalidArgument("cannot normalise a zero pointer state");
    }
    const double scale = 1.0 / std::sqrt(norm);
    for (auto &a : amps) {
        a *= scale;
    }
    return {std::move(grid), std::move(amps)};
}

void PointerParams::validate() const {
    if (!(sigma > 0.0)) {
        throw InvalidArgument("pointer width sigma must be positive");
    }
    if (!(g * t >= 0.0)) {
        throw InvalidArgument("coupling product g*t must be non-negative");
    }
}

PointerState gaussian_pointer(const PointerGrid &grid, double sigma) {
    if (!(sigma > 0.0)) {
        throw InvalidArgument("pointer width sigma must be positive");
    }
    if (grid.half_width() < 8.0 * sigma) {
        throw InvalidArgument("pointer grid half-width must be at least 8 sigma");
    }
    std::vector<Complex> amps(grid.size());
    const auto q = grid.positions();
    for (int j = 0; j < grid.size(); ++j) {
        amps[j] = std::exp(-q[j] * q[j] / (4.0 * sigma * sigma));
    }
    return PointerState::normalized(grid, std::move(amps));
}

double expect_q(const PointerState &state) {
    return kernels::weighted_norm2(state.amps(), state.grid().positions()) *
           state.grid().spacing();
}

double expect_k(const PointerState &state) {
    const auto amps = state.amps();
    return line::momentum_moment(amps, state.grid()) / kernels::norm2(amps);
}

Complex expect_ann(const PointerState &state, double sigma) {
    return {expect_q(state) / (2.0 * sigma), expect_k(state) * sigma};
}

double position_norm(const PointerState &state) {
    return grid_norm(state.amps(), state.grid().spacing());
}

double momentum_norm(const PointerState &state) {
    // psi~(k_m) = dq / sqrt(2 pi) * FFT(psi)_m, dk = 2 pi / (M dq)
    std::vector<Complex> buf(state.amps().begin(), state.amps().end());
    fft::forward(buf);
    const double dq = state.grid().spacing();
    const double dk = 2.0 * std::numbers::pi / (state.grid().size() * dq);
    return kernels::norm2(buf) * dq * dq / (2.0 * std::numbers::pi) * dk;
}

PointerState translate(const PointerState &state, double a) {
    if (std::abs(a) > state.grid().half_width() / 4.0) {
        throw WrapAroundError("translation by " + std::to_string(a) +
                              " exceeds a quarter of the grid half-width");
    }
    std::vector<Complex> amps(state.amps().begin(), state.amps().end());
    line::apply_momentum_phase(amps, line::translation_phase(state.grid(), a));
    return PointerState::normalized(state.grid(), std::move(amps));
}

PointerState boost(const PointerState &state, double k0) {
    std::vector<Complex> amps(state.amps().begin(), state.amps().end());
    const auto q = state.grid().positions();
    for (std::size_t j = 0; j < amps.size(); ++j) {
        amps[j] *= std::polar(1.0, k0 * q[j]);
    }
    return PointerState::normalized(state.grid(), std::move(amps));
}

namespace line {

std::vector<Complex> translation_phase(const PointerGrid &grid, double a) {
    const auto k = grid.wavenumbers();
    const double inv_m = 1.0 / grid.size();
    std::vector<Complex> phase(k.size());
    for (std::size_t m = 0; m < k.size(); ++m) {
        phase[m] = std::polar(inv_m, -k[m] * a);
    }
    return phase;
}

void apply_momentum_phase(std::span<Complex> line, std::span<const Complex> phase) {
    fft::forward(line);
    kernels::mul(line, phase);
    fft::backward(line);
}

void apply_ann(std::span<Complex> line, const PointerGrid &grid, double sigma) {
    const int m = grid.size();
    std::vector<Complex> kpart(line.begin(), line.end());
    fft::forward(kpart);
    std::vector<Complex> weights(m);
    const auto k = grid.wavenumbers();
    for (int i = 0; i < m; ++i) {
        weights[i] = Complex(0.0, sigma * k[i] / m);
    }
    kernels::mul(kpart, weights);
    fft::backward(kpart);

    std::vector<double> qscale(m);
    const auto q = grid.positions();
    for (int i = 0; i < m; ++i) {
        qscale[i] = q[i] / (2.0 * sigma);
    }
    kernels::mul_real(line, qscale);
    kernels::axpy(Complex(1.0, 0.0), kpart, line);
}

double momentum_moment(std::span<const Complex> line, const PointerGrid &grid) {
    std::vector<Complex> buf(line.begin(), line.end());
    fft::forward(buf);
    return kernels::weighted_norm2(buf, grid.wavenumbers()) / grid.size();
}

} // namespace line

} // namespace weakdm
