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
 * Exact von Neumann couplings between a finite-dimensional system and up to
 * three grid pointers.
 *
 * A mixed system state is carried as its eigen-ensemble: one pure joint branch
 * per eigenvector of rho, weighted by the eigenvalue. Every readout is the
 * weighted average over branches, which is exact because all readouts are
 * linear in rho.
 *
 * Branch amplitudes are laid out system-major: amps[s * R + r], where R is the
 * product of the pointer grid sizes and r runs row-major over the pointers
 * (pointer 0 slowest). Each branch has unit norm with respect to the product
 * grid measure.
 */

#include <optional>
#include <span>
#include <vector>

#include "weakdm/hilbert.hpp"
#include "weakdm/pointer.hpp"

namespace weakdm {

inline constexpr int kMaxPointers = 3;
/// Post-selection probabilities below this are treated as impossible.
inline constexpr double kMinPostselectProbability = 1e-14;

struct PointerSlot {
    PointerGrid grid;
    double sigma = 1.0;
};

class JointState {
  public:
    struct Branch {
        double weight = 1.0;
        std::vector<Complex> amps;
    };

    [[nodiscard]] int system_dim() const noexcept { return system_dim_; }
    [[nodiscard]] int pointer_count() const noexcept { return static_cast<int>(pointers_.size()); }
    [[nodiscard]] const PointerSlot &pointer(int index) const;
    [[nodiscard]] std::span<const Branch> branches() const noexcept { return branches_; }
    /// Number of amplitudes per system component (product of grid sizes).
    [[nodiscard]] std::size_t pointer_block() const noexcept { return block_; }
    /// Distance between neighbouring grid points of one pointer inside a block.
    [[nodiscard]] std::size_t stride(int pointer) const;
    /// Product of the pointer grid spacings.
    [[nodiscard]] double measure() const noexcept { return measure_; }
    /// Largest position shift (resp. momentum kick) any coupling has applied so far.
    [[nodiscard]] double position_excursion(int pointer) const;
    [[nodiscard]] double momentum_excursion(int pointer) const;

  private:
    friend struct JointAccess;

    int system_dim_ = 0;
    std::vector<PointerSlot> pointers_;
    std::vector<Branch> branches_;
    std::size_t block_ = 1;
    double measure_ = 1.0;
    std::vector<double> position_excursion_;
    std::vector<double> momentum_excursion_;
};

/// Spectral ensemble of rho (eigenvalues < 1e-12 dropped, weights renormalised),
/// each branch tensored with the initial Gaussian of every pointer.
JointState make_joint(const DensityMatrix &rho, std::vector<PointerSlot> pointers);
JointState make_joint(const StateVector &psi, std::vector<PointerSlot> pointers);

enum class PointerVariable { momentum, position };

struct CouplingSpec {
    OperatorMatrix observable;
    int pointer = 0;
    double g = 0.0;
    double t = 1.0;
    PointerVariable variable = PointerVariable::momentum;
};

/// exp(-i g t A D) with D = K (translates the pointer by g t a for eigenvalue a)
/// or D = Q (kicks its momentum by -g t a).
JointState apply_coupling(const JointState &joint, const CouplingSpec &spec);

/// exp(-i g2 t E K_dst Q_src): translates pointer dst by g2 t e q_src.
JointState apply_conditional_coupling(const JointState &joint, const OperatorMatrix &e, int src,
                                      int dst, double g2, double t);

struct PostSelection {
    double probability;
    JointState state;
};

/// Projects the system onto |c>; throws PostSelectionError below kMinPostselectProbability.
PostSelection postselect(const JointState &joint, const StateVector &c);

struct MeasurementOutcome {
    int index;
    double probability;
    /// Empty when the outcome has (numerically) zero probability.
    std::optional<JointState> state;
};

/// Projective measurement in an orthonormal basis of the system.
std::vector<MeasurementOutcome> strong_measure(const JointState &joint,
                                               std::span<const StateVector> basis);

struct PointerMoments {
    double q = 0.0;
    double k = 0.0;
};

PointerMoments pointer_moments(const JointState &joint, int pointer);

/// <a_1 a_2> with a = Q/2sigma + i sigma K, evaluated as an operator moment on the joint state.
Complex joint_ann_moment(const JointState &joint, int first, int second);
/// <a_i1 a_i2 ...> over distinct pointers.
Complex ann_product_moment(const JointState &joint, std::span<const int> pointers);

/// Readouts restricted to a strong-measurement outcome |c>, left unnormalised:
/// probability P(c), P(c)<Q>_c and P(c)<K>_c. Zero-probability outcomes are fine.
struct ProjectedMoments {
    double probability = 0.0;
    double q = 0.0;
    double k = 0.0;
};

double outcome_probability(const JointState &joint, const StateVector &c);
ProjectedMoments projected_moments(const JointState &joint, const StateVector &c, int pointer);
/// P(c) <a_i1 a_i2 ...>_c.
Complex projected_ann_moment(const JointState &joint, const StateVector &c,
                             std::span<const int> pointers);

/// qf / (g t) + i kf 2 sigma^2 / (g t)   (hbar = 1).
Complex weak_value_from_moments(double qf, double kf, double g, double t, double sigma);

} // namespace weakdm
