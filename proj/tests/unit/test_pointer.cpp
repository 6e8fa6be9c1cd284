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

#include <cmath>

#include "test_support.hpp"

#include "weakdm/error.hpp"
#include "weakdm/fft.hpp"
#include "weakdm/pointer.hpp"

using namespace weakdm;

namespace {

PointerState displaced(const PointerGrid &grid, double sigma, double q0) {
    std::vector<Complex> amps(grid.size());
    const auto q = grid.positions();
    for (int j = 0; j < grid.size(); ++j) {
        amps[j] = std::exp(-(q[j] - q0) * (q[j] - q0) / (4.0 * sigma * sigma));
    }
    return PointerState::normalized(grid, std::move(amps));
}

double second_moment(const PointerState &s) {
    double m = 0.0;
    const auto q = s.grid().positions();
    for (int j = 0; j < s.grid().size(); ++j) {
        m += q[j] * q[j] * std::norm(s.amps()[j]);
    }
    return m * s.grid().spacing();
}

} // namespace

TEST_CASE("grid layout") {
    const PointerGrid grid(512, 16.0);
    CHECK(grid.spacing() == 1.0 / 16.0);
    CHECK(grid.positions().front() == -16.0);
    CHECK(std::abs(grid.positions().back() - (16.0 - grid.spacing())) < 1e-15);
    CHECK(grid.wavenumbers()[0] == 0.0);
    CHECK(grid.wavenumbers()[256] == -grid.max_wavenumber());
    CHECK_THROWS_AS(PointerGrid(8, 16.0), InvalidArgument);
    CHECK_THROWS_AS(PointerGrid(100, 16.0), InvalidArgument);
    CHECK_THROWS_AS(PointerGrid(64, 0.0), InvalidArgument);
}

TEST_CASE("Gaussian pointer moments") {
    const PointerGrid grid(512, 16.0);
    const PointerState phi = gaussian_pointer(grid, 1.0);
    CHECK(std::abs(expect_q(phi)) < 1e-14);
    CHECK(std::abs(expect_k(phi)) < 1e-14);
    CHECK(std::abs(second_moment(phi) - 1.0) < 1e-6);
    CHECK(std::abs(expect_ann(phi, 1.0)) < 1e-14);
    CHECK_THROWS_AS(gaussian_pointer(PointerGrid(64, 7.0), 1.0), InvalidArgument);
    CHECK_THROWS_AS(gaussian_pointer(grid, 0.0), InvalidArgument);
}

TEST_CASE("displaced and boosted pointers") {
    const PointerGrid grid(512, 16.0);
    const PointerState shifted = displaced(grid, 1.0, 0.3);
    CHECK(std::abs(expect_q(shifted) - 0.3) < 1e-8);
    CHECK(std::abs(expect_ann(shifted, 1.0) - Complex(0.15, 0.0)) < 1e-8);
    const PointerState boosted = boost(gaussian_pointer(grid, 1.0), 0.2);
    CHECK(std::abs(expect_k(boosted) - 0.2) < 1e-8);
    CHECK(std::abs(expect_ann(boosted, 1.0) - Complex(0.0, 0.2)) < 1e-8);
}

TEST_CASE("spectral translation") {
    const PointerGrid grid(512, 16.0);
    const PointerState phi = gaussian_pointer(grid, 1.0);
    for (double a : {0.02, -0.7, 1.3, 4.0}) {
        const PointerState moved = translate(phi, a);
        CHECK(std::abs(expect_q(moved) - a) < 1e-12);
        CHECK(std::abs(position_norm(moved) - 1.0) < 1e-12);
    }
    // a non-grid shift reproduces the analytically displaced Gaussian
    const PointerState moved = translate(phi, 0.3);
    const PointerState exact = displaced(grid, 1.0, 0.3);
    for (int j = 0; j < grid.size(); ++j) {
        CHECK(std::abs(moved.amps()[j] - exact.amps()[j]) < 1e-12);
    }
    CHECK_THROWS_AS(translate(phi, 4.01), WrapAroundError);
}

TEST_CASE("Parseval") {
    const PointerGrid grid(256, 16.0);
    for (const PointerState &s : {gaussian_pointer(grid, 1.0), displaced(grid, 0.7, -1.1),
                                  boost(displaced(grid, 1.5, 2.0), -0.4)}) {
        CHECK(std::abs(position_norm(s) - momentum_norm(s)) < 1e-10);
    }
}

TEST_CASE("grid convergence under refinement") {
    const PointerState coarse = boost(displaced(PointerGrid(512, 16.0), 1.0, 0.4), 0.3);
    const PointerState fine = boost(displaced(PointerGrid(1024, 16.0), 1.0, 0.4), 0.3);
    CHECK(std::abs(expect_q(coarse) - expect_q(fine)) < 1e-9);
    CHECK(std::abs(expect_k(coarse) - expect_k(fine)) < 1e-9);
    CHECK(std::abs(second_moment(coarse) - second_moment(fine)) < 1e-9);
}

TEST_CASE("annihilation-like operator on a line") {
    const PointerGrid grid(512, 16.0);
    const PointerState phi = gaussian_pointer(grid, 1.0);
    std::vector<Complex> line(phi.amps().begin(), phi.amps().end());
    line::apply_ann(line, grid, 1.0);
    double residual = 0.0;
    for (const auto &x : line) {
        residual = std::max(residual, std::abs(x));
    }
    CHECK(residual < 1e-12);

    // a on a displaced Gaussian returns it scaled by q0 / 2 sigma
    const PointerState shifted = displaced(grid, 1.0, 0.8);
    std::vector<Complex> v(shifted.amps().begin(), shifted.amps().end());
    line::apply_ann(v, grid, 1.0);
    for (int j = 0; j < grid.size(); ++j) {
        CHECK(std::abs(v[j] - 0.4 * shifted.amps()[j]) < 1e-12);
    }
}

TEST_CASE("pointer states reject bad normalisation") {
    const PointerGrid grid(64, 8.0);
    CHECK_THROWS_AS(PointerState(grid, std::vector<Complex>(64, Complex(1.0, 0.0))),
                    InvalidArgument);
    CHECK_THROWS_AS(PointerState(grid, std::vector<Complex>(32, Complex(0.0, 0.0))),
                    InvalidArgument);
    CHECK_THROWS_AS(PointerState::normalized(grid, std::vector<Complex>(64)), InvalidArgument);
}

TEST_CASE("PointerParams validation") {
    CHECK_NOTHROW(PointerParams{}.validate());
    CHECK(PointerParams{}.gt() == 0.02);
    CHECK_THROWS_AS((PointerParams{0.0, 0.02, 1.0}.validate()), InvalidArgument);
    CHECK_THROWS_AS((PointerParams{1.0, -0.02, 1.0}.validate()), InvalidArgument);
}
