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
 * Finite-dimensional Hilbert space primitives: kets, density matrices,
 * operators, the standard/Fourier mutually unbiased pair, and the
 * projector products whose weak averages the protocols read out.
 *
 * Index convention: standard basis |a>, a = 0..N-1; Fourier basis
 * |b> = sum_a exp(i 2 pi a b / N) |a> / sqrt(N), so <b|a> = exp(-i 2 pi a b / N) / sqrt(N).
 */

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace weakdm {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kAlgebraTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kUnbiasedTol = 1e-10;

/// Unit-norm ket. Construction rejects anything whose norm is off by more than 1e-12.
class StateVector {
  public:
    explicit StateVector(Vector amps);

    /// Rescales to unit norm; rejects the zero vector.
    static StateVector normalized(Vector amps);

    [[nodiscard]] int dim() const noexcept { return static_cast<int>(amps_.size()); }
    [[nodiscard]] const Vector &amps() const noexcept { return amps_; }
    [[nodiscard]] Complex operator[](int index) const { return amps_(index); }

  private:
    Vector amps_;
};

/// Hermitian, unit trace, positive semidefinite up to kPsdTol.
class DensityMatrix {
  public:
    explicit DensityMatrix(Matrix entries);

    static DensityMatrix pure(const StateVector &psi);
    static DensityMatrix maximally_mixed(int dim);

    [[nodiscard]] int dim() const noexcept { return static_cast<int>(entries_.rows()); }
    [[nodiscard]] const Matrix &entries() const noexcept { return entries_; }
    [[nodiscard]] Complex operator()(int row, int col) const { return entries_(row, col); }
    [[nodiscard]] double purity() const;

  private:
    Matrix entries_;
};

/// Square operator. Non-Hermitian entries are allowed; the flag records whether
/// the matrix was Hermitian (within 1e-12) when it was built.
class OperatorMatrix {
  public:
    explicit OperatorMatrix(Matrix entries);

    [[nodiscard]] int dim() const noexcept { return static_cast<int>(entries_.rows()); }
    [[nodiscard]] const Matrix &entries() const noexcept { return entries_; }
    [[nodiscard]] bool hermitian() const noexcept { return hermitian_; }
    [[nodiscard]] Complex operator()(int row, int col) const { return entries_(row, col); }

  private:
    Matrix entries_;
    bool hermitian_;
};

enum class BasisKind { standard, fourier };

struct BasisLabel {
    BasisKind kind = BasisKind::standard;
    int index = 0;
};

StateVector standard_ket(int dim, int a);
StateVector fourier_ket(int dim, int b);
StateVector basis_ket(int dim, BasisLabel label);
std::vector<StateVector> standard_basis(int dim);
std::vector<StateVector> fourier_basis(int dim);

/// |ket><ket|.
OperatorMatrix projector(const StateVector &ket);
/// Same, for a raw vector; throws InvalidArgument unless the norm is 1 within 1e-12.
OperatorMatrix projector(const Vector &ket);

/// S_ab = |b><b|a><a| with |b> from the Fourier basis.
OperatorMatrix s_ab_operator(int dim, int a, int b);

/// True when |<a|b0>| = 1/sqrt(N) for every standard ket, within kUnbiasedTol.
bool is_unbiased(const StateVector &b0);

/// pi_{a2} pi_{b0} pi_{a1} = <a2|b0><b0|a1> |a2><a1|.
OperatorMatrix triple_projector(int dim, int a1, int a2, const StateVector &b0);

/// Tr[op rho].
Complex expectation(const OperatorMatrix &op, const DensityMatrix &rho);

/// Ginibre ensemble: G is dim x rank with standard complex normal entries,
/// rho = G G^dagger / Tr[G G^dagger]. Deterministic per seed.
DensityMatrix random_density(int dim, std::uint64_t seed, int rank);
StateVector random_state(int dim, std::uint64_t seed);
/// Hermitian with entries drawn from a seeded normal distribution (GUE-like, unnormalised).
OperatorMatrix random_hermitian(int dim, std::uint64_t seed);

Matrix hermitize(const Matrix &m);
/// (1/2) || a - b ||_1 for Hermitian a, b (the anti-Hermitian part of a - b is ignored).
double trace_distance(const Matrix &a, const Matrix &b);
double min_eigenvalue(const Matrix &hermitian);

} // namespace weakdm
