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

#include "weakdm/hilbert.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "weakdm/error.hpp"

namespace weakdm {

namespace {

void require_index(int dim, int index, const char *what) {
    if (dim < 1) {
        throw InvalidArgument("dimension must be positive, got " + std::to_string(dim));
    }
    if (index < 0 || index >= dim) {
        throw InvalidArgument(std::string(what) + " index " + std::to_string(index) +
                              " outside [0, " + std::to_string(dim - 1) + "]");
    }
}

double max_abs(const Matrix &m) { return m.cwiseAbs().maxCoeff(); }

Complex standard_normal_complex(std::mt19937_64 &rng, std::normal_distribution<double> &n) {
    const double re = n(rng);
    const double im = n(rng);
    return {re, im};
}

} // namespace

StateVector::StateVector(Vector amps) : amps_(std::move(amps)) {
    if (amps_.size() == 0) {
        throw InvalidArgument("state vector must have positive dimension");
    }
    const double norm = amps_.norm();
    if (!(std::abs(norm - 1.0) <= kAlgebraTol)) {
        throw InvalidArgument("state vector is not normalised (norm " + std::to_string(norm) + ")");
    }
}

StateVector StateVector::normalized(Vector amps) {
    const double norm = amps.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw InvalidArgument("cannot normalise a zero or non-finite vector");
    }
    amps /= norm;
    return StateVector(std::move(amps));
}

DensityMatrix::DensityMatrix(Matrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
        throw InvalidArgument("density matrix must be square and non-empty");
    }
    if (max_abs(entries_ - entries_.adjoint()) > kAlgebraTol) {
        throw InvalidArgument("density matrix is not Hermitian");
    }
    const Complex tr = entries_.trace();
    if (std::abs(tr - 1.0) > kAlgebraTol) {
        throw InvalidArgument("density matrix trace is " + std::to_string(tr.real()) +
                              ", expected 1");
    }
    const double lowest = min_eigenvalue(entries_);
    if (lowest < -kPsdTol) {
        throw InvalidArgument("density matrix has negative eigenvalue " + std::to_string(lowest));
    }
}

DensityMatrix DensityMatrix::pure(const StateVector &psi) {
    return DensityMatrix(psi.amps() * psi.amps().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
    if (dim < 1) {
        throw InvalidArgument("dimension must be positive");
    }
    return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

double DensityMatrix::purity() const { return (entries_ * entries_).trace().real(); }

OperatorMatrix::OperatorMatrix(Matrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
        throw InvalidArgument("operator must be square and non-empty");
    }
    hermitian_ = max_abs(entries_ - entries_.adjoint()) <= kAlgebraTol;
}

StateVector standard_ket(int dim, int a) {
    require_index(dim, a, "standard basis");
    Vector v = Vector::Zero(dim);
    v(a) = 1.0;
    return StateVector(std::move(v));
}

StateVector fourier_ket(int dim, int b) {
    require_index(dim, b, "Fourier basis");
    Vector v(dim);
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    for (int a = 0; a < dim; ++a) {
        // (a*b) mod N keeps the phase argument small for large indices
        const double phase =
            2.0 * std::numbers::pi * static_cast<double>((a * b) % dim) / static_cast<double>(dim);
        v(a) = std::polar(scale, phase);
    }
    return StateVector::normalized(std::move(v));
}

StateVector basis_ket(int dim, BasisLabel label) {
    return label.kind == BasisKind::standard ? standard_ket(dim, label.index)
                                             : fourier_ket(dim, label.index);
}

std::vector<StateVector> standard_basis(int dim) {
    std::vector<StateVector> out;
    out.reserve(dim);
    for (int a = 0; a < dim; ++a) {
        out.push_back(standard_ket(dim, a));
    }
    return out;
}

std::vector<StateVector> fourier_basis(int dim) {
    std::vector<StateVector> out;
    out.reserve(dim);
    for (int b = 0; b < dim; ++b) {
        out.push_back(fourier_ket(dim, b));
    }
    return out;
}

OperatorMatrix projector(const StateVector &ket) {
    return OperatorMatrix(ket.amps() * ket.amps().adjoint());
}

OperatorMatrix projector(const Vector &ket) { return projector(StateVector(ket)); }

OperatorMatrix s_ab_operator(int dim, int a, int b) {
    require_index(dim, a, "standard basis");
    require_index(dim, b, "Fourier basis");
    const StateVector ket_b = fourier_ket(dim, b);
    Matrix m = Matrix::Zero(dim, dim);
    // <b|a> |b><a| : only column a is populated
    const Complex overlap = std::conj(ket_b[a]);
    m.col(a) = overlap * ket_b.amps();
    return OperatorMatrix(std::move(m));
}

bool is_unbiased(const StateVector &b0) {
    const double target = 1.0 / std::sqrt(static_cast<double>(b0.dim()));
    for (int a = 0; a < b0.dim(); ++a) {
        if (std::abs(std::abs(b0[a]) - target) > kUnbiasedTol) {
            return false;
        }
    }
    return true;
}

OperatorMatrix triple_projector(int dim, int a1, int a2, const StateVector &b0) {
    require_index(dim, a1, "a1");
    require_index(dim, a2, "a2");
    if (b0.dim() != dim) {
        throw InvalidArgument("b0 dimension does not match");
    }
    if (!is_unbiased(b0)) {
        throw InvalidArgument("b0 is not unbiased with respect to the standard basis");
    }
    Matrix m = Matrix::Zero(dim, dim);
    m(a2, a1) = b0[a2] * std::conj(b0[a1]);
    return OperatorMatrix(std::move(m));
}

Complex expectation(const OperatorMatrix &op, const DensityMatrix &rho) {
    if (op.dim() != rho.dim()) {
        throw InvalidArgument("operator and density matrix dimensions differ");
    }
    // Tr[A rho] = sum_ij A_ij rho_ji
    return (op.entries().cwiseProduct(rho.entries().transpose())).sum();
}

DensityMatrix random_density(int dim, std::uint64_t seed, int rank) {
    if (dim < 1) {
        throw InvalidArgument("dimension must be positive");
    }
    if (rank < 1 || rank > dim) {
        throw InvalidArgument("rank " + std::to_string(rank) + " outside [1, " +
                              std::to_string(dim) + "]");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix g(dim, rank);
    for (int j = 0; j < rank; ++j) {
        for (int i = 0; i < dim; ++i) {
            g(i, j) = standard_normal_complex(rng, normal);
        }
    }
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    // exact Hermiticity; the product is Hermitian only up to rounding
    return DensityMatrix(hermitize(rho));
}

StateVector random_state(int dim, std::uint64_t seed) {
    if (dim < 1) {
        throw InvalidArgument("dimension must be positive");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector v(dim);
    for (int i = 0; i < dim; ++i) {
        v(i) = standard_normal_complex(rng, normal);
    }
    return StateVector::normalized(std::move(v));
}

OperatorMatrix random_hermitian(int dim, std::uint64_t seed) {
    if (dim < 1) {
        throw InvalidArgument("dimension must be positive");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix g(dim, dim);
    for (int j = 0; j < dim; ++j) {
        for (int i = 0; i < dim; ++i) {
            g(i, j) = standard_normal_complex(rng, normal);
        }
    }
    return OperatorMatrix(hermitize(g));
}

Matrix hermitize(const Matrix &m) { return 0.5 * (m + m.adjoint()); }

double min_eigenvalue(const Matrix &hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double trace_distance(const Matrix &a, const Matrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw InvalidArgument("trace distance of matrices with different shapes");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitize(a - b), Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

} // namespace weakdm
