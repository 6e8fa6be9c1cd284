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
#include "weakdm/oracle.hpp"
#include "weakdm/protocols.hpp"

using namespace weakdm;
using weakdm::testing::close;
using weakdm::testing::mat2;
using weakdm::testing::max_abs_diff;
using weakdm::testing::vec;

namespace {

ProtocolParams small_params(double gt = 0.02, Scheme scheme = Scheme::substitution) {
    ProtocolParams p;
    p.grid_points = 128;
    p.half_width = 16.0;
    p.g = gt;
    p.scheme = scheme;
    return p;
}

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const Complex kI(0.0, 1.0);

Complex oracle_product(const DensityMatrix &rho, const OperatorMatrix &e, const OperatorMatrix &f) {
    return oracle::weak_average(OperatorMatrix(e.entries() * f.entries()), rho);
}

} // namespace

TEST_CASE("scheme names") {
    CHECK(to_string(Scheme::scheme2) == "scheme2");
    CHECK(scheme_from_string("substitution") == Scheme::substitution);
    CHECK_THROWS_AS(scheme_from_string("scheme3"), InvalidArgument);
}

TEST_CASE("protocol parameter validation") {
    ProtocolParams p = small_params();
    CHECK_NOTHROW(p.validate());
    p.g = 0.0;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
    p = small_params();
    p.half_width = 4.0;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
    p = small_params();
    p.grid_points = 100;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
    CHECK(std::abs(small_params(0.02).kappa(2) - 1.0e4) < 1e-8);
}

TEST_CASE("direct wavefunction") {
    const ProtocolParams p = small_params();
    const WavefunctionEstimate uniform = direct_wavefunction(fourier_ket(2, 0), p);
    REQUIRE(uniform.weak_values.size() == 2);
    CHECK(close(uniform.weak_values[0].value, 0.5, 1e-10));
    CHECK(close(uniform.weak_values[1].value, 0.5, 1e-10));
    CHECK(max_abs_diff(uniform.normalized, vec({kInvSqrt2, kInvSqrt2})) < 1e-10);
    CHECK(uniform.weak_values[0].postselect_prob.has_value());

    const WavefunctionEstimate real = direct_wavefunction(StateVector(vec({0.6, 0.8})), p);
    CHECK(max_abs_diff(real.normalized, vec({0.6, 0.8})) < 1e-3);

    const WavefunctionEstimate phased =
        direct_wavefunction(StateVector(vec({kInvSqrt2, kI * kInvSqrt2})), p);
    CHECK(max_abs_diff(phased.normalized, vec({kInvSqrt2, kI * kInvSqrt2})) < 1e-3);
    CHECK(close(phased.normalized(1) / phased.normalized(0), kI, 1e-3));

    // random states, N = 4, against the weak-value oracle
    const StateVector psi = random_state(4, 3);
    const WavefunctionEstimate est = direct_wavefunction(psi, p);
    const StateVector b0 = fourier_ket(4, 0);
    for (int a = 0; a < 4; ++a) {
        const Complex exact = oracle::weak_value_pure(projector(standard_ket(4, a)), psi, b0);
        CHECK(close(est.weak_values[a].value, exact, 1e-3));
    }
    const Complex phase = psi[0] / std::abs(psi[0]);
    CHECK(max_abs_diff(est.normalized, psi.amps() / phase) < 1e-3);

    CHECK_THROWS_AS(direct_wavefunction(fourier_ket(2, 1), p), PostSelectionError);
}

TEST_CASE("wavefunction with a non-uniform unbiased b0") {
    ProtocolParams p = small_params();
    p.b0 = fourier_ket(3, 1);
    const StateVector psi = random_state(3, 8);
    const WavefunctionEstimate est = direct_wavefunction(psi, p);
    const Complex phase = psi[0] / std::abs(psi[0]);
    CHECK(max_abs_diff(est.normalized, psi.amps() / phase) < 1e-3);
    p.b0 = StateVector::normalized(vec({1.0, 2.0, 0.5}));
    CHECK_THROWS_AS(direct_wavefunction(psi, p), InvalidArgument);
}

TEST_CASE("mixed-state response cannot tell states apart") {
    for (int n = 2; n <= 8; ++n) {
        const StateVector b0 = fourier_ket(n, 0);
        const Vector mixed = mixed_state_response(DensityMatrix::maximally_mixed(n), b0);
        const Vector pure = mixed_state_response(DensityMatrix::pure(b0), b0);
        CHECK(max_abs_diff(mixed, pure) < 1e-12);
        CHECK(max_abs_diff(mixed, Vector::Constant(n, 1.0 / n)) < 1e-12);
    }
    const StateVector psi = random_state(3, 4);
    const StateVector b0 = fourier_ket(3, 0);
    const Vector pure = mixed_state_response(DensityMatrix::pure(psi), b0);
    const Complex ratio = pure(0) / psi[0];
    CHECK(max_abs_diff(pure, ratio * psi.amps()) < 1e-12);

    // the response depends on rho only through rho|b0>
    const DensityMatrix rho = random_density(3, 5, 3);
    const Vector first = mixed_state_response(rho, b0);
    const Matrix bump = projector(fourier_ket(3, 1)).entries() - projector(fourier_ket(3, 2)).entries();
    const DensityMatrix shifted(rho.entries() + 0.01 * bump);
    CHECK(max_abs_diff(first, mixed_state_response(shifted, b0)) < 1e-12);
    CHECK_THROWS_AS(mixed_state_response(DensityMatrix::pure(fourier_ket(2, 1)), fourier_ket(2, 0)),
                    PostSelectionError);
}

TEST_CASE("direct Dirac distribution") {
    const ProtocolParams p = small_params();
    const DiracDistribution zero = direct_dirac(DensityMatrix::pure(standard_ket(2, 0)), p);
    CHECK(max_abs_diff(zero.entries, mat2(0.5, 0.5, 0, 0)) < 1e-4);
    const DiracDistribution plus = direct_dirac(DensityMatrix::pure(fourier_ket(2, 0)), p);
    CHECK(max_abs_diff(plus.entries, mat2(0.5, 0, 0.5, 0)) < 1e-4);
    const DiracDistribution half = direct_dirac(DensityMatrix::maximally_mixed(2), p);
    CHECK(max_abs_diff(half.entries, mat2(0.25, 0.25, 0.25, 0.25)) < 1e-4);
    CHECK(half.settings.size() == 4);

    const DensityMatrix rho = random_density(3, 9, 2);
    const Matrix exact = oracle::dirac_exact(rho);
    for (Scheme s : {Scheme::substitution, Scheme::scheme1, Scheme::scheme2}) {
        const DiracDistribution d = direct_dirac(rho, small_params(0.02, s));
        CHECK(max_abs_diff(d.entries, exact) < 1e-3);
        CHECK(std::abs(d.total() - 1.0) < 5e-2);
    }
}

TEST_CASE("Dirac inversion") {
    CHECK(max_abs_diff(dirac_to_density(mat2(0.5, 0.5, 0, 0)), mat2(1, 0, 0, 0)) < 1e-15);
    CHECK(max_abs_diff(dirac_to_density(mat2(0.25, 0.25, 0.25, 0.25)), mat2(0.5, 0, 0, 0.5)) < 1e-15);
    for (int n = 2; n <= 16; ++n) {
        const DensityMatrix rho = random_density(n, 3, std::min(n, 3));
        CHECK(max_abs_diff(dirac_to_density(oracle::dirac_exact(rho)), rho.entries()) < 1e-12);
    }
}

TEST_CASE("direct density reconstruction") {
    const ProtocolParams p = small_params();
    const DensityEstimate half = direct_density(DensityMatrix::maximally_mixed(2), p);
    for (const auto &est : half.settings) {
        const Complex expected = *est.setting.a1 == *est.setting.a2 ? 0.25 : 0.0;
        CHECK(close(est.value, expected, 1e-4));
    }
    CHECK(max_abs_diff(half.normalized, mat2(0.5, 0, 0, 0.5)) < 1e-4);

    const DensityEstimate zero = direct_density(DensityMatrix::pure(standard_ket(2, 0)), p);
    CHECK(max_abs_diff(zero.normalized, mat2(1, 0, 0, 0)) < 1e-3);

    const DensityMatrix rho = random_density(4, 7, 2);
    double previous = 1.0;
    for (double gt : {0.08, 0.04, 0.02, 0.01}) {
        const double td = trace_distance(direct_density(rho, small_params(gt)).normalized,
                                         rho.entries());
        CHECK(td < previous);
        previous = td;
    }
    CHECK(previous < 1e-3);

    // three-pointer Scheme 1 route
    ProtocolParams triple = small_params(0.02, Scheme::scheme1);
    const DensityMatrix qubit = random_density(2, 17, 2);
    CHECK(trace_distance(direct_density(qubit, triple).normalized, qubit.entries()) < 1e-3);

    CHECK_THROWS_AS(direct_density(qubit, small_params(0.02, Scheme::scheme2)), InvalidArgument);
}

TEST_CASE("density with a non-uniform unbiased b0") {
    ProtocolParams p = small_params();
    p.b0 = fourier_ket(3, 2);
    const DensityMatrix rho = random_density(3, 23, 3);
    CHECK(trace_distance(direct_density(rho, p).normalized, rho.entries()) < 1e-3);
}

TEST_CASE("Scheme 1 and Scheme 2 products") {
    const DensityMatrix zero = DensityMatrix::pure(standard_ket(2, 0));
    const OperatorMatrix pi0 = projector(standard_ket(2, 0));
    const OperatorMatrix pb0 = projector(fourier_ket(2, 0));
    const OperatorMatrix pb1 = projector(fourier_ket(2, 1));
    const DensityMatrix tilted = DensityMatrix::pure(StateVector(vec({0.8, 0.6})));
    const ProtocolParams p = small_params();

    CHECK(close(scheme1_weak_product(zero, pi0, pi0, p).value, 1.0, 1e-10));
    CHECK(close(scheme1_weak_product(zero, pb0, pi0, p).value, 0.5, 1e-3));
    CHECK(close(scheme1_weak_product(tilted, pb1, pi0, p).value, oracle_product(tilted, pb1, pi0),
                1e-3));
    CHECK(close(scheme2_weak_product(zero, pi0, pi0, p).value, 1.0, 1e-3));
    CHECK(close(scheme2_weak_product(zero, pb0, pi0, p).value, 0.5, 1e-3));
    CHECK(close(scheme2_weak_product(tilted, pb1, pi0, p).value, oracle_product(tilted, pb1, pi0),
                1e-3));

    // complex values for non-commuting factors, both schemes against the oracle and each other
    const double combined = p.gt() * p.gt();
    for (int seed = 0; seed < 4; ++seed) {
        const DensityMatrix rho = random_density(3, 100 + seed, 2);
        const OperatorMatrix e = projector(fourier_ket(3, seed % 3));
        const OperatorMatrix f = projector(standard_ket(3, (seed + 1) % 3));
        const Complex exact = oracle_product(rho, e, f);
        if (std::abs(exact) < 0.05) {
            continue;
        }
        const ProtocolEstimate s1 = scheme1_weak_product(rho, e, f, p);
        const ProtocolEstimate s2 = scheme2_weak_product(rho, e, f, p);
        CHECK(std::abs(s1.value - exact) / std::abs(exact) < 10.0 * combined);
        CHECK(std::abs(s2.value - exact) / std::abs(exact) < 10.0 * combined);
        CHECK(std::abs(s1.value - s2.value) / std::abs(exact) < 10.0 * combined);
        CHECK(s1.scheme == Scheme::scheme1);
        CHECK(s2.gt_products.size() == 2);
    }
    CHECK_THROWS_AS(scheme1_weak_product(zero, OperatorMatrix(s_ab_operator(2, 0, 0)), pi0, p),
                    InvalidArgument);
}

TEST_CASE("three-pointer Scheme 1") {
    const DensityMatrix rho = random_density(3, 31, 3);
    const OperatorMatrix g = projector(standard_ket(3, 1));
    const OperatorMatrix e = projector(fourier_ket(3, 0));
    const OperatorMatrix f = projector(standard_ket(3, 2));
    const Complex exact =
        oracle::weak_average(OperatorMatrix(g.entries() * e.entries() * f.entries()), rho);
    CHECK(close(scheme1_triple_product(rho, g, e, f, small_params()).value, exact, 1e-4));
}

TEST_CASE("weak regime diagnostics") {
    const DensityMatrix zero = DensityMatrix::pure(standard_ket(2, 0));
    const OperatorMatrix pi0 = projector(standard_ket(2, 0));
    CHECK(scheme1_weak_product(zero, pi0, pi0, small_params(0.02)).diagnostics.empty());
    CHECK_FALSE(scheme1_weak_product(zero, pi0, pi0, small_params(0.5)).diagnostics.empty());
}

TEST_CASE("weak-strong substitution") {
    const ProtocolParams p = small_params();
    const OperatorMatrix pi0 = projector(standard_ket(2, 0));

    const MeasurementBasis identity = basis_with_eigenvalues(standard_basis(2), {1.0, 1.0});
    CHECK(close(weak_strong_product(DensityMatrix::maximally_mixed(2), pi0, identity, p).value, 0.5,
                1e-10));

    const MeasurementBasis signs = basis_with_eigenvalues(fourier_basis(2), {1.0, -1.0});
    CHECK(close(weak_strong_product(DensityMatrix::pure(standard_ket(2, 0)), pi0, signs, p).value,
                0.0, 1e-4));

    const int n = 3;
    const DensityMatrix rho = random_density(n, 41, 3);
    const StateVector b0 = fourier_ket(n, 0);
    for (int a1 = 0; a1 < n; ++a1) {
        for (int a2 = 0; a2 < n; ++a2) {
            std::vector<double> values(n, 0.0);
            values[a2] = 1.0;
            const ProtocolEstimate est = weak_strong_product(
                rho, ProductTarget{projector(b0), projector(standard_ket(n, a1))},
                basis_with_eigenvalues(standard_basis(n), values), p);
            CHECK(close(est.value, rho(a1, a2) / 3.0, 1e-4));
        }
    }

    // generic Hermitian G and C
    const OperatorMatrix g = random_hermitian(n, 42);
    const OperatorMatrix c = random_hermitian(n, 43);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(c.entries());
    std::vector<StateVector> kets;
    std::vector<double> values;
    for (int i = 0; i < n; ++i) {
        kets.push_back(StateVector::normalized(solver.eigenvectors().col(i)));
        values.push_back(solver.eigenvalues()(i));
    }
    const Complex exact = oracle::weak_strong_exact(rho, g, c);
    const Complex sim =
        weak_strong_product(rho, g, basis_with_eigenvalues(kets, values), p).value;
    CHECK(std::abs(sim - exact) < 1e-2 * std::max(1.0, std::abs(exact)));

    CHECK_THROWS_AS(weak_strong_product(rho, OperatorMatrix(s_ab_operator(3, 0, 1).entries()),
                                        basis_with_eigenvalues(standard_basis(3), {1, 1, 1}), p),
                    InvalidArgument);
    std::vector<StateVector> bad = {standard_ket(3, 0), standard_ket(3, 0), standard_ket(3, 1)};
    CHECK_THROWS_AS(weak_strong_product(rho, g, basis_with_eigenvalues(bad, {1, 1, 1}), p),
                    InvalidArgument);
    CHECK_THROWS_AS(basis_with_eigenvalues(standard_basis(3), {1.0}), InvalidArgument);
}

TEST_CASE("Scheme 1 calibration") {
    const std::vector<double> sweep = {0.08, 0.04, 0.02, 0.01};
    const CalibrationResult cal = calibrate_scheme1(small_params(), sweep);
    REQUIRE(cal.points.size() == 4);
    for (const auto &pt : cal.points) {
        CHECK(std::abs(pt.ratio - 1.0) < 1e-9);
    }
    CHECK(cal.relative_deviation() < 1e-2);
    const std::vector<double> one = {0.02};
    CHECK_THROWS_AS(calibrate_scheme1(small_params(), one), InvalidArgument);
}
