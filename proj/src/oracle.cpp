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

#include "weakdm/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "weakdm/error.hpp"

namespace weakdm::oracle {

namespace {

constexpr double kCrossCheckTol = 1e-12;

void require_dims(int expected, int got, const char *what) {
    if (expected != got) {
        throw InvalidArgument(std::string(what) + " dimension " + std::to_string(got) +
                              " does not match " + std::to_string(expected));
    }
}

// <a|b> for the Fourier ket |b>, written out rather than borrowed from hilbert.
Complex fourier_overlap(int n, int a, int b) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>((a * b) % n) / n;
    return std::polar(1.0 / std::sqrt(static_cast<double>(n)), angle);
}

double scale_of(const Matrix &m) { return std::max(1.0, m.cwiseAbs().maxCoeff()); }

} // namespace

Complex weak_value_pure(const OperatorMatrix &a, const StateVector &psi, const StateVector &c) {
    require_dims(a.dim(), psi.dim(), "state");
    require_dims(a.dim(), c.dim(), "post-selection ket");
    const Complex overlap = c.amps().dot(psi.amps());
    if (!(std::abs(overlap) > 1e-12)) {
        throw PostSelectionError("post-selection ket is orthogonal to the state",
                                 std::norm(overlap));
    }
    return c.amps().dot(a.entries() * psi.amps()) / overlap;
}

Complex weak_value_mixed(const OperatorMatrix &a, const DensityMatrix &rho, const StateVector &c) {
    require_dims(a.dim(), rho.dim(), "density matrix");
    require_dims(a.dim(), c.dim(), "post-selection ket");
    const Vector rho_c = rho.entries() * c.amps();
    const Complex prob = c.amps().dot(rho_c);
    if (!(prob.real() > 1e-12)) {
        throw PostSelectionError("post-selection probability vanishes", prob.real());
    }
    return c.amps().dot(a.entries() * rho_c) / prob;
}

Complex weak_average(const OperatorMatrix &a, const DensityMatrix &rho) {
    require_dims(a.dim(), rho.dim(), "density matrix");
    return (a.entries() * rho.entries()).trace();
}

Matrix dirac_exact(const DensityMatrix &rho) {
    const int n = rho.dim();
    Matrix s(n, n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            // <a|rho|b> = sum_x rho(a, x) <x|b>
            Complex row(0.0, 0.0);
            for (int x = 0; x < n; ++x) {
                row += rho(a, x) * fourier_overlap(n, x, b);
            }
            s(a, b) = row * std::conj(fourier_overlap(n, a, b));
        }
    }
    return s;
}

Matrix density_from_triple_exact(const DensityMatrix &rho, const StateVector &b0) {
    const int n = rho.dim();
    require_dims(n, b0.dim(), "b0");
    if (!is_unbiased(b0)) {
        throw InvalidArgument("b0 is not unbiased with respect to the standard basis");
    }
    Matrix out(n, n);
    for (int a1 = 0; a1 < n; ++a1) {
        for (int a2 = 0; a2 < n; ++a2) {
            Matrix pi(n, n);
            pi.setZero();
            pi(a2, a1) = b0[a2] * std::conj(b0[a1]);
            const Complex via_trace = (pi * rho.entries()).trace();
            // <a2|b0><b0|a1> rho_{a1 a2}; the prefactor is 1/N for a real uniform b0
            const Complex via_element = b0[a2] * std::conj(b0[a1]) * rho(a1, a2);
            if (std::abs(via_trace - via_element) > kCrossCheckTol) {
                throw std::logic_error("triple-projector identity violated at (" +
                                       std::to_string(a1) + ", " + std::to_string(a2) + ")");
            }
            out(a1, a2) = via_trace;
        }
    }
    return out;
}

Complex weak_strong_exact(const DensityMatrix &rho, const OperatorMatrix &g,
                          std::span<const StateVector> basis, std::span<const double> eigenvalues) {
    const int n = rho.dim();
    require_dims(n, g.dim(), "weak operator");
    if (static_cast<int>(basis.size()) != n || eigenvalues.size() != basis.size()) {
        throw InvalidArgument("strong basis needs one ket and one eigenvalue per dimension");
    }
    const Matrix g_rho = g.entries() * rho.entries();
    Matrix c(n, n);
    c.setZero();
    Complex eigen_sum(0.0, 0.0);
    for (int i = 0; i < n; ++i) {
        require_dims(n, basis[i].dim(), "strong basis ket");
        const Vector &ket = basis[i].amps();
        eigen_sum += eigenvalues[i] * ket.dot(g_rho * ket);
        c += eigenvalues[i] * ket * ket.adjoint();
    }
    const Complex via_trace = (c * g_rho).trace();
    if (std::abs(via_trace - eigen_sum) > kCrossCheckTol * scale_of(c) * scale_of(g.entries())) {
        throw std::logic_error("weak-strong identity violated");
    }
    return eigen_sum;
}

Complex weak_strong_exact(const DensityMatrix &rho, const OperatorMatrix &g,
                          const OperatorMatrix &c) {
    require_dims(rho.dim(), c.dim(), "strong observable");
    if ((c.entries() - c.entries().adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        throw InvalidArgument("strong observable must be Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitize(c.entries()));
    std::vector<StateVector> basis;
    std::vector<double> values;
    for (int i = 0; i < c.dim(); ++i) {
        basis.push_back(StateVector::normalized(solver.eigenvectors().col(i)));
        values.push_back(solver.eigenvalues()(i));
    }
    return weak_strong_exact(rho, g, basis, values);
}

Complex product_outcome_exact(const DensityMatrix &rho, const OperatorMatrix &e,
                              const OperatorMatrix &f, const StateVector &c) {
    require_dims(rho.dim(), e.dim(), "E");
    require_dims(rho.dim(), f.dim(), "F");
    require_dims(rho.dim(), c.dim(), "outcome ket");
    return c.amps().dot(e.entries() * f.entries() * rho.entries() * c.amps());
}

Complex scheme2_outcome_exact(const DensityMatrix &rho, const OperatorMatrix &e,
                              const OperatorMatrix &f, const StateVector &c) {
    require_dims(rho.dim(), e.dim(), "E");
    require_dims(rho.dim(), f.dim(), "F");
    require_dims(rho.dim(), c.dim(), "outcome ket");
    const Matrix sym = e.entries() * f.entries() * rho.entries() +
                       f.entries() * rho.entries() * e.entries();
    return 0.5 * c.amps().dot(sym * c.amps());
}

} // namespace weakdm::oracle
