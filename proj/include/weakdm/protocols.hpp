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
 * Direct-measurement procedures built from the evolution primitives.
 *
 * Readout conventions (hbar = 1, Gaussian pointers of width sigma, coupling g
 * applied for time t on every pointer):
 *
 *  - single pointer: weak value = <Q>/(g t) + i <K> 2 sigma^2 / (g t);
 *  - Scheme 1 pair: Tr[E F rho] = kappa <a_1 a_2>, kappa = (2 sigma_1 / g_1 t)(2 sigma_2 / g_2 t),
 *    F coupled first to pointer 1, then E to pointer 2;
 *  - Scheme 1 triple: Tr[G E F rho] = (2 sigma / g t)^3 <a_1 a_2 a_3>;
 *  - Scheme 2, D = K run: Re Tr[E F rho] = <Q_2> / (g_K g_2 t^2);
 *  - Scheme 2, D = Q run: Im Tr[E F rho] = <Q_2> / (2 g_Q g_2 t^2 sigma_1^2). The second
 *    pointer's momentum carries nothing (<K_2> = 0 exactly, K_2 commutes with the evolution).
 *
 * Post-selected Scheme 1 readouts (kappa P(c) <a_1 a_2>_c) give <c|E F rho|c>, which is what
 * the weak-strong substitution needs. Scheme 2 does not: conditioned on c it yields
 * (1/2)<c|E F rho + F rho E|c>, so it is only offered without a strong readout.
 */

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "weakdm/evolution.hpp"
#include "weakdm/hilbert.hpp"
#include "weakdm/pointer.hpp"

namespace weakdm {

enum class Scheme { substitution, scheme1, scheme2 };

std::string_view to_string(Scheme scheme);
/// Accepts "substitution", "scheme1", "scheme2"; throws InvalidArgument otherwise.
Scheme scheme_from_string(std::string_view name);

/// Post-selection probabilities below this abort a setting.
inline constexpr double kMinProtocolPostselect = 1e-6;
/// g_1 g_2 (t / sigma)^2 at or above this is flagged as outside the weak regime.
inline constexpr double kWeakRegimeLimit = 0.1;

struct ProtocolParams {
    /// Grid for single- and two-pointer runs.
    int grid_points = 512;
    double half_width = 16.0;
    /// Grid for three-pointer runs (density via Scheme 1 without a strong readout).
    int triple_grid_points = 64;
    double triple_half_width = 8.0;
    double sigma = 1.0;
    double g = 0.02;
    double t = 1.0;
    Scheme scheme = Scheme::substitution;
    /// Post-selection / middle projector ket; Fourier b = 0 when absent.
    std::optional<StateVector> b0;
    /// Multiplies the analytic Scheme 1 constant; set from calibrate_scheme1.
    double kappa_scale = 1.0;

    [[nodiscard]] double gt() const noexcept { return g * t; }
    [[nodiscard]] PointerGrid grid() const { return {grid_points, half_width}; }
    [[nodiscard]] PointerGrid triple_grid() const { return {triple_grid_points, triple_half_width}; }
    /// Throws InvalidArgument for non-positive sigma, g, t or an unusable grid.
    void validate() const;
    /// b0 if set, else the Fourier b = 0 ket of dimension dim.
    [[nodiscard]] StateVector b0_or_default(int dim) const;
    /// (2 sigma / g t)^pointers * kappa_scale.
    [[nodiscard]] double kappa(int pointers = 2) const;
};

struct SettingLabels {
    std::optional<int> a;
    std::optional<int> b;
    std::optional<int> a1;
    std::optional<int> a2;
};

struct ProtocolEstimate {
    Complex value;
    SettingLabels setting;
    Scheme scheme = Scheme::substitution;
    std::vector<double> gt_products;
    std::optional<double> postselect_prob;
    /// Only set by the sampling module.
    std::optional<double> standard_error;
    std::vector<std::string> diagnostics;
};

struct WavefunctionEstimate {
    /// Post-selected weak values <pi_a^w>, one per a.
    std::vector<ProtocolEstimate> weak_values;
    /// The same values with the <b0|a> phase removed (identical for real uniform b0).
    Vector raw;
    /// raw scaled to unit norm, first amplitude above 1e-6 in magnitude made real positive.
    Vector normalized;
    double postselect_prob = 0.0;
};

/// v / |v| with the first entry above 1e-6 in magnitude rotated onto the positive real axis.
Vector fix_global_phase(const Vector &v);

/// Steps pi_a through the standard basis with post-selection on b0.
WavefunctionEstimate direct_wavefunction(const StateVector &psi, const ProtocolParams &params);

/// <b0|a><a|rho|b0> / <b0|rho|b0> for every a, in closed form.
Vector mixed_state_response(const DensityMatrix &rho, const StateVector &b0);

struct DiracDistribution {
    /// S(a, b), rows a (standard), columns b (Fourier).
    Matrix entries;
    std::vector<ProtocolEstimate> settings;

    [[nodiscard]] Complex total() const { return entries.sum(); }
};

/// Row a of the Dirac distribution (N estimates over b).
std::vector<ProtocolEstimate> dirac_row(const DensityMatrix &rho, int a, const ProtocolParams &params);
DiracDistribution direct_dirac(const DensityMatrix &rho, const ProtocolParams &params);

struct DensityEstimate {
    /// <Pi_{a1 a2}^w> / (<a2|b0><b0|a1>), i.e. N <Pi_{a1 a2}^w> for the uniform b0.
    Matrix raw;
    /// (raw + raw^dagger) / 2 divided by its trace. No positivity repair.
    Matrix normalized;
    /// <Pi_{a1 a2}^w> per setting.
    std::vector<ProtocolEstimate> settings;
    double min_eigenvalue = 0.0;
    std::vector<std::string> diagnostics;
};

/// Row a1: estimates of <Pi_{a1 a2}^w> for every a2. Scheme2 is rejected (see file comment).
std::vector<ProtocolEstimate> density_row(const DensityMatrix &rho, int a1,
                                          const ProtocolParams &params);
DensityEstimate direct_density(const DensityMatrix &rho, const ProtocolParams &params);
/// Assembles raw/normalized matrices from the N*N settings produced by density_row.
DensityEstimate assemble_density(const StateVector &b0, std::vector<ProtocolEstimate> settings);

/// rho_{a1 a2} = sum_b S(a1, b) exp(i 2 pi b (a1 - a2) / N).
Matrix dirac_to_density(const Matrix &s);
Matrix dirac_to_density(const DiracDistribution &s);

/// Tr[E F rho] from kappa <a_1 a_2>.
ProtocolEstimate scheme1_weak_product(const DensityMatrix &rho, const OperatorMatrix &e,
                                      const OperatorMatrix &f, const ProtocolParams &params);
/// Tr[E F rho] from the D = K and D = Q runs.
ProtocolEstimate scheme2_weak_product(const DensityMatrix &rho, const OperatorMatrix &e,
                                      const OperatorMatrix &f, const ProtocolParams &params);
/// Three-pointer Scheme 1: Tr[G E F rho] (F coupled first).
ProtocolEstimate scheme1_triple_product(const DensityMatrix &rho, const OperatorMatrix &g,
                                        const OperatorMatrix &e, const OperatorMatrix &f,
                                        const ProtocolParams &params);

/// Weak factor E F measured with a Scheme 1 pair.
struct ProductTarget {
    OperatorMatrix e;
    OperatorMatrix f;
};

/// Strong observable C = sum_c c |c><c|.
struct MeasurementBasis {
    std::vector<StateVector> kets;
    std::vector<double> eigenvalues;
};

MeasurementBasis basis_with_eigenvalues(std::vector<StateVector> kets, std::vector<double> values);

/// sum_c c P(c) <G^w>_c, which converges to Tr[C G rho]. A Hermitian G is coupled to one
/// pointer; a ProductTarget is coupled as a Scheme 1 pair.
ProtocolEstimate weak_strong_product(const DensityMatrix &rho,
                                     const std::variant<OperatorMatrix, ProductTarget> &weak,
                                     const MeasurementBasis &strong, const ProtocolParams &params);

struct CalibrationPoint {
    double gt = 0.0;
    Complex moment;
    /// 1 / <a_1 a_2> divided by (2 sigma / g t)^2.
    double ratio = 0.0;
};

struct CalibrationResult {
    std::vector<CalibrationPoint> points;
    /// Zero-coupling extrapolation of the ratio.
    double extrapolated_ratio = 0.0;
    [[nodiscard]] double relative_deviation() const { return std::abs(extrapolated_ratio - 1.0); }
};

/// Scheme 1 with E = F = pi_0 on |0><0| (exact answer 1) across the sweep.
CalibrationResult calibrate_scheme1(const ProtocolParams &params, std::span<const double> sweep);

} // namespace weakdm
