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
#include <numbers>

#include "test_support.hpp"

#include "weakdm/error.hpp"
#include "weakdm/oracle.hpp"

using namespace weakdm;
using weakdm::testing::close;
using weakdm::testing::mat2;
using weakdm::testing::max_abs_diff;
using weakdm::testing::vec;

TEST_CASE("pure-state weak values") {
    const OperatorMatrix pi0 = projector(standard_ket(2, 0));
    const StateVector plus = fourier_ket(2, 0);
    CHECK(close(oracle::weak_value_pure(pi0, plus, plus), 0.5, 1e-15));

    const double theta = std::numbers::pi / 3.0;
    const StateVector psi(vec({std::cos(theta), std::sin(theta)}));
    const Complex anomalous = oracle::weak_value_pure(pi0, psi, fourier_ket(2, 1));
    CHECK(close(anomalous, std::cos(theta) / (std::cos(theta) - std::sin(theta)), 1e-12));
    CHECK(anomalous.real() < 0.0);

    const OperatorMatrix a(vec({0.3, -2.0, 1.1}).asDiagonal().toDenseMatrix());
    CHECK(close(oracle::weak_value_pure(a, standard_ket(3, 1), random_state(3, 4)), -2.0, 1e-12));
    CHECK_THROWS_AS(oracle::weak_value_pure(pi0, standard_ket(2, 0), standard_ket(2, 1)),
                    PostSelectionError);
}

TEST_CASE("mixed-state weak values") {
    const OperatorMatrix h = random_hermitian(3, 5);
    const StateVector c = random_state(3, 6);
    CHECK(close(oracle::weak_value_mixed(h, DensityMatrix::maximally_mixed(3), c),
                c.amps().dot(h.entries() * c.amps()), 1e-12));

    const OperatorMatrix pi0 = projector(standard_ket(2, 0));
    CHECK(close(oracle::weak_value_mixed(pi0, DensityMatrix(mat2(0.7, 0, 0, 0.3)), fourier_ket(2, 0)),
                0.7, 1e-12));
    CHECK_THROWS_AS(oracle::weak_value_mixed(pi0, DensityMatrix::pure(standard_ket(2, 0)),
                                             standard_ket(2, 1)),
                    PostSelectionError);

    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + trial % 7;
        const StateVector psi = random_state(n, 1000 + trial);
        const StateVector post = random_state(n, 2000 + trial);
        const OperatorMatrix op(Matrix::Random(n, n));
        CHECK(close(oracle::weak_value_mixed(op, DensityMatrix::pure(psi), post),
                    oracle::weak_value_pure(op, psi, post), 1e-12 * std::max(1.0, std::abs(oracle::weak_value_pure(op, psi, post)))));
    }
}

TEST_CASE("weak averages") {
    const DensityMatrix zero = DensityMatrix::pure(standard_ket(2, 0));
    CHECK(close(oracle::weak_average(projector(standard_ket(2, 0)), zero), 1.0, 1e-15));
    CHECK(close(oracle::weak_average(s_ab_operator(2, 0, 0), zero), 0.5, 1e-15));
    CHECK(close(oracle::weak_average(triple_projector(2, 0, 0, fourier_ket(2, 0)),
                                     DensityMatrix::maximally_mixed(2)),
                0.25, 1e-15));
}

TEST_CASE("exact Dirac distributions") {
    CHECK(max_abs_diff(oracle::dirac_exact(DensityMatrix::pure(standard_ket(2, 0))),
                       mat2(0.5, 0.5, 0, 0)) < 1e-15);
    CHECK(max_abs_diff(oracle::dirac_exact(DensityMatrix::pure(fourier_ket(2, 0))),
                       mat2(0.5, 0, 0.5, 0)) < 1e-15);
    CHECK(max_abs_diff(oracle::dirac_exact(DensityMatrix::maximally_mixed(2)),
                       mat2(0.25, 0.25, 0.25, 0.25)) < 1e-15);

    for (int n = 2; n <= 8; ++n) {
        const DensityMatrix rho = random_density(n, 70 + n, std::max(1, n - 1));
        const Matrix s = oracle::dirac_exact(rho);
        CHECK(close(s.sum(), 1.0, 1e-12));
        for (int a = 0; a < n; ++a) {
            CHECK(close(s.row(a).sum(), rho(a, a), 1e-12));
            CHECK(close(s(a, 0), expectation(s_ab_operator(n, a, 0), rho), 1e-12));
        }
        for (int b = 0; b < n; ++b) {
            const StateVector kb = fourier_ket(n, b);
            CHECK(close(s.col(b).sum(), kb.amps().dot(rho.entries() * kb.amps()), 1e-12));
        }
    }
}

TEST_CASE("triple-projector oracle") {
    const StateVector b0 = fourier_ket(2, 0);
    CHECK(max_abs_diff(oracle::density_from_triple_exact(DensityMatrix::maximally_mixed(2), b0),
                       mat2(0.25, 0, 0, 0.25)) < 1e-15);
    CHECK(max_abs_diff(oracle::density_from_triple_exact(DensityMatrix::pure(standard_ket(2, 0)), b0),
                       mat2(0.5, 0, 0, 0)) < 1e-15);
    const DensityMatrix rho = random_density(4, 11, 4);
    const Matrix t = oracle::density_from_triple_exact(rho, fourier_ket(4, 0));
    CHECK(max_abs_diff(t, rho.entries() / 4.0) < 1e-12);
    // other unbiased b0 carry the phase <a2|b0><b0|a1>
    const StateVector b3 = fourier_ket(4, 3);
    const Matrix t3 = oracle::density_from_triple_exact(rho, b3);
    for (int a1 = 0; a1 < 4; ++a1) {
        for (int a2 = 0; a2 < 4; ++a2) {
            CHECK(close(t3(a1, a2), b3[a2] * std::conj(b3[a1]) * rho(a1, a2), 1e-12));
        }
    }
    CHECK_THROWS_AS(oracle::density_from_triple_exact(rho, standard_ket(4, 0)), InvalidArgument);
}

TEST_CASE("weak-strong oracle") {
    const DensityMatrix half = DensityMatrix::maximally_mixed(2);
    const OperatorMatrix pi0 = projector(standard_ket(2, 0));
    CHECK(close(oracle::weak_strong_exact(half, pi0, OperatorMatrix(Matrix::Identity(2, 2))), 0.5,
                1e-15));

    const std::vector<StateVector> fourier = fourier_basis(2);
    const std::vector<double> signs = {1.0, -1.0};
    CHECK(close(oracle::weak_strong_exact(DensityMatrix::pure(standard_ket(2, 0)), pi0, fourier,
                                          signs),
                0.0, 1e-15));

    const int n = 3;
    const DensityMatrix rho = random_density(n, 12, 3);
    const StateVector b0 = fourier_ket(n, 0);
    for (int a1 = 0; a1 < n; ++a1) {
        for (int a2 = 0; a2 < n; ++a2) {
            const OperatorMatrix g(projector(b0).entries() * projector(standard_ket(n, a1)).entries());
            const OperatorMatrix c = projector(standard_ket(n, a2));
            CHECK(close(oracle::weak_strong_exact(rho, g, c), rho(a1, a2) / 3.0, 1e-12));
        }
    }
}

TEST_CASE("post-selected product oracles") {
    const DensityMatrix rho = random_density(3, 13, 2);
    const OperatorMatrix e = projector(fourier_ket(3, 1));
    const OperatorMatrix f = projector(standard_ket(3, 0));
    Complex s1(0.0, 0.0);
    Complex s2(0.0, 0.0);
    for (const auto &c : standard_basis(3)) {
        s1 += oracle::product_outcome_exact(rho, e, f, c);
        s2 += oracle::scheme2_outcome_exact(rho, e, f, c);
    }
    const Complex total = oracle::weak_average(OperatorMatrix(e.entries() * f.entries()), rho);
    CHECK(close(s1, total, 1e-12));
    CHECK(close(s2, total, 1e-12));
    // conditioned on a single outcome the two differ
    const StateVector c = standard_ket(3, 1);
    CHECK(std::abs(oracle::product_outcome_exact(rho, e, f, c) -
                   oracle::scheme2_outcome_exact(rho, e, f, c)) > 1e-3);
}
