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
 * One-dimensional measurement pointer sampled on a periodic grid.
 *
 * Positions q_j = -L + j dq with dq = 2L/M. Wavenumbers are stored in FFT
 * order (0, dk, ..., -dk) with dk = 2 pi / (M dq); the Nyquist bin is taken as
 * -pi/dq. Amplitudes are normalised with the grid measure: sum |psi_j|^2 dq = 1.
 * hbar = 1 throughout, so momentum and wavenumber coincide.
 */

#include <complex>
#include <memory>
#include <span>
#include <vector>

namespace weakdm {

using Complex = std::complex<double>;

inline constexpr double kHbar = 1.0;

class PointerGrid {
  public:
    /// M must be a power of two >= 16 and L > 0.
    PointerGrid(int points, double half_width);

    [[nodiscard]] int size() const noexcept { return points_; }
    [[nodiscard]] double half_width() const noexcept { return half_width_; }
    [[nodiscard]] double spacing() const noexcept { return spacing_; }
    [[nodiscard]] double max_wavenumber() const noexcept;
    [[nodiscard]] std::span<const double> positions() const noexcept { return *positions_; }
    [[nodiscard]] std::span<const double> wavenumbers() const noexcept { return *wavenumbers_; }

    friend bool operator==(const PointerGrid &a, const PointerGrid &b) noexcept {
        return a.points_ == b.points_ && a.half_width_ == b.half_width_;
    }

  private:
    int points_;
    double half_width_;
    double spacing_;
    std::shared_ptr<const std::vector<double>> positions_;
    std::shared_ptr<const std::vector<double>> wavenumbers_;
};

class PointerState {
  public:
    /// Rejects amplitudes whose grid norm differs from 1 by more than 1e-10.
    PointerState(PointerGrid grid, std::vector<Complex> amps);

    static PointerState normalized(PointerGrid grid, std::vector<Complex> amps);

    [[nodiscard]] const PointerGrid &grid() const noexcept { return grid_; }
    [[nodiscard]] std::span<const Complex> amps() const noexcept { return amps_; }

  private:
    PointerGrid grid_;
    std::vector<Complex> amps_;
};

struct PointerParams {
    double sigma = 1.0;
    double g = 0.02;
    double t = 1.0;

    [[nodiscard]] double gt() const noexcept { return g * t; }
    /// Throws unless sigma > 0 and g t >= 0.
    void validate() const;
};

/// phi(q) proportional to exp(-q^2 / (4 sigma^2)); requires L >= 8 sigma.
PointerState gaussian_pointer(const PointerGrid &grid, double sigma);

double expect_q(const PointerState &state);
double expect_k(const PointerState &state);
/// <Q>/(2 sigma) + i <K> sigma, the mean of the annihilation-like operator Q/2sigma + i K sigma.
Complex expect_ann(const PointerState &state, double sigma);

/// sum |psi_j|^2 dq in position and sum |psi~_m|^2 dk in momentum.
double position_norm(const PointerState &state);
double momentum_norm(const PointerState &state);

/// exp(-i a K): spectral translation by a. Requires |a| <= L/4.
PointerState translate(const PointerState &state, double a);
/// exp(i k0 Q): momentum boost by k0.
PointerState boost(const PointerState &state, double k0);

namespace line {

/// exp(-i k_m a) / M in FFT order; feed to apply_momentum_phase to translate by a.
std::vector<Complex> translation_phase(const PointerGrid &grid, double a);
/// FFT, multiply by a phase produced above, inverse FFT (the 1/M lives in the phase).
void apply_momentum_phase(std::span<Complex> line, std::span<const Complex> phase);
/// In place: line <- (Q / 2 sigma + i sigma K) line.
void apply_ann(std::span<Complex> line, const PointerGrid &grid, double sigma);
/// sum_m k_m |FFT(line)_m|^2 / M, i.e. <K> times sum_j |line_j|^2.
double momentum_moment(std::span<const Complex> line, const PointerGrid &grid);

} // namespace line

} // namespace weakdm
