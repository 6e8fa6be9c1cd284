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

#include "weakdm/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "weakdm/analysis.hpp"
#include "weakdm/error.hpp"

namespace weakdm {

std::string_view to_string(Scheme scheme) {
    switch (scheme) {
    case Scheme::substitution:
        return "substitution";
    case Scheme::scheme1:
        return "scheme1";
    case Scheme::scheme2:
        return "scheme2";
    }
    return "unknown";
}

Scheme scheme_from_string(std::string_view name) {
    if (name == "substitution") {
        return Scheme::substitution;
    }
    if (name == "scheme1") {
        return Scheme::scheme1;
    }
    if (name == "scheme2") {
        return Scheme::scheme2;
    }
    throw InvalidArgument("unknown scheme '" + std::string(name) +
                          "' (expected substitution, scheme1 or scheme2)");
}

void ProtocolParams::validate() const {
    if (!(sigma > 0.0)) {
        throw InvalidArgument("sigma must be positive");
    }
    if (!(g > 0.0) || !(t > 0.0)) {
        throw InvalidArgument("protocols need g > 0 and t > 0");
    }
    if (!(kappa_scale > 0.0) || !std::isfinite(kappa_scale)) {
        throw InvalidArgument("kappa scale must be positive");
    }
    if (half_width < 8.0 * sigma) {
        throw InvalidArgument("grid half-width must be at least 8 sigma");
    }
    if (triple_half_width < 8.0 * sigma) {
        throw InvalidArgument("triple grid half-width must be at least 8 sigma");
    }
    (void)grid();
    (void)triple_grid();
}

StateVector ProtocolParams::b0_or_default(int dim) const {
    if (b0) {
        if (b0->dim() != dim) {
            throw InvalidArgument("b0 dimension " + std::to_string(b0->dim()) +
                                  " does not match the system dimension " + std::to_string(dim));
        }
        return *b0;
    }
    return fourier_ket(dim, 0);
}

double ProtocolParams::kappa(int pointers) const {
    return kappa_scale * std::pow(2.0 * sigma / gt(), pointers);
}

namespace {

std::vector<PointerSlot> slots(const PointerGrid &grid, double sigma, int count) {
    return std::vector<PointerSlot>(static_cast<std::size_t>(count), PointerSlot{grid, sigma});
}

void require_dim(int expected, int got, const char *what) {
    if (expected != got) {
        throw InvalidArgument(std::string(what) + " dimension " + std::to_string(got) +
                              " does not match the state dimension " + std::to_string(expected));
    }
}

void require_hermitian(const OperatorMatrix &op, const char *what) {
    if ((op.entries() - op.entries().adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        throw InvalidArgument(std::string(what) + " must be Hermitian to be coupled to a pointer");
    }
}

void add_weak_regime_note(ProtocolEstimate &est, const ProtocolParams &params) {
    const double strength = params.gt() * params.gt() / (params.sigma * params.sigma);
    if (strength >= kWeakRegimeLimit) {
        est.diagnostics.push_back("weak-regime condition violated: g1 g2 (t/sigma)^2 = " +
                                  std::to_string(strength));
    }
}

ProtocolEstimate make_estimate(Complex value, Scheme scheme, const ProtocolParams &params) {
    ProtocolEstimate est;
    est.value = value;
    est.scheme = scheme;
    est.gt_products = {params.gt()};
    return est;
}

CouplingSpec coupling(const OperatorMatrix &op, int pointer, const ProtocolParams &params,
                      PointerVariable variable = PointerVariable::momentum) {
    return {op, pointer, params.g, params.t, variable};
}

/// rho (x) phi (x) phi after exp(-i g E K_2 t) exp(-i g F K_1 t).
JointState scheme1_pair(const DensityMatrix &rho, const OperatorMatrix &e, const OperatorMatrix &f,
                        const ProtocolParams &params) {
    JointState joint = make_joint(rho, slots(params.grid(), params.sigma, 2));
    joint = apply_coupling(joint, coupling(f, 0, params));
    return apply_coupling(joint, coupling(e, 1, params));
}

void require_orthonormal(std::span<const StateVector> kets, int n) {
    for (int i = 0; i < n; ++i) {
        require_dim(n, kets[i].dim(), "strong basis ket");
        for (int j = 0; j < n; ++j) {
            const Complex overlap = kets[i].amps().dot(kets[j].amps());
            if (std::abs(overlap - (i == j ? 1.0 : 0.0)) > 1e-10) {
                throw InvalidArgument("strong measurement basis is not orthonormal");
            }
        }
    }
}

constexpr int kPair[] = {0, 1};
constexpr int kTriple[] = {0, 1, 2};

/// P(c) <G^w>_c from a projected single-pointer readout.
Complex projected_weak_value(const JointState &joint, const StateVector &c,
                             const ProtocolParams &params) {
    const ProjectedMoments m = projected_moments(joint, c, 0);
    return weak_value_from_moments(m.q, m.k, params.g, params.t, params.sigma);
}

} // namespace

Vector fix_global_phase(const Vector &v) {
    const double norm = v.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw InvalidArgument("all amplitudes vanished; the state cannot be normalised");
    }
    Vector out = v / norm;
    for (Eigen::Index a = 0; a < out.size(); ++a) {
        if (std::abs(out(a)) > 1e-6) {
            out /= out(a) / std::abs(out(a));
            out(a) = std::abs(out(a));
            break;
        }
    }
    return out;
}

WavefunctionEstimate direct_wavefunction(const StateVector &psi, const ProtocolParams &params) {
    params.validate();
    const int n = psi.dim();
    const StateVector b0 = params.b0_or_default(n);
    if (!is_unbiased(b0)) {
        throw InvalidArgument("b0 is not unbiased with respect to the standard basis");
    }
    const double overlap = std::norm(b0.amps().dot(psi.amps()));
    if (overlap < kMinProtocolPostselect) {
        throw PostSelectionError("state is (nearly) orthogonal to b0: |<b0|psi>|^2 = " +
                                     std::to_string(overlap),
                                 overlap);
    }
    const JointState initial = make_joint(psi, slots(params.grid(), params.sigma, 1));

    WavefunctionEstimate out;
    out.raw.resize(n);
    for (int a = 0; a < n; ++a) {
        const JointState coupled =
            apply_coupling(initial, coupling(projector(standard_ket(n, a)), 0, params));
        const double prob = outcome_probability(coupled, b0);
        if (!(prob >= kMinProtocolPostselect)) {
            throw PostSelectionError("post-selection on b0 has probability " +
                                         std::to_string(prob) + " at a = " + std::to_string(a),
                                     prob);
        }
        const PostSelection selected = postselect(coupled, b0);
        const PointerMoments m = pointer_moments(selected.state, 0);
        ProtocolEstimate est = make_estimate(
            weak_value_from_moments(m.q, m.k, params.g, params.t, params.sigma),
            Scheme::substitution, params);
        est.setting.a = a;
        est.postselect_prob = selected.probability;
        out.postselect_prob = selected.probability;
        // weak value = <b0|a><a|psi>/<b0|psi>; strip the a-dependent <b0|a> phase
        const Complex b0_a = std::conj(b0[a]) * std::sqrt(static_cast<double>(n));
        out.raw(a) = est.value / b0_a;
        out.weak_values.push_back(std::move(est));
    }

    out.normalized = fix_global_phase(out.raw);
    return out;
}

Vector mixed_state_response(const DensityMatrix &rho, const StateVector &b0) {
    require_dim(rho.dim(), b0.dim(), "b0");
    const Vector rho_b0 = rho.entries() * b0.amps();
    const double prob = b0.amps().dot(rho_b0).real();
    if (!(prob > 1e-12)) {
        throw PostSelectionError("<b0|rho|b0> vanishes", prob);
    }
    Vector out(rho.dim());
    for (int a = 0; a < rho.dim(); ++a) {
        out(a) = std::conj(b0[a]) * rho_b0(a) / prob;
    }
    return out;
}

std::vector<ProtocolEstimate> dirac_row(const DensityMatrix &rho, int a,
                                        const ProtocolParams &params) {
    params.validate();
    const int n = rho.dim();
    if (a < 0 || a >= n) {
        throw InvalidArgument("Dirac row index " + std::to_string(a) + " out of range");
    }
    const OperatorMatrix pi_a = projector(standard_ket(n, a));
    std::vector<ProtocolEstimate> row;
    row.reserve(n);

    if (params.scheme == Scheme::substitution) {
        const JointState coupled = apply_coupling(
            make_joint(rho, slots(params.grid(), params.sigma, 1)), coupling(pi_a, 0, params));
        for (int b = 0; b < n; ++b) {
            const StateVector ket_b = fourier_ket(n, b);
            ProtocolEstimate est =
                make_estimate(projected_weak_value(coupled, ket_b, params), params.scheme, params);
            est.setting.a = a;
            est.setting.b = b;
            est.postselect_prob = outcome_probability(coupled, ket_b);
            row.push_back(std::move(est));
        }
        return row;
    }

    for (int b = 0; b < n; ++b) {
        const OperatorMatrix pi_b = projector(fourier_ket(n, b));
        ProtocolEstimate est = params.scheme == Scheme::scheme1
                                   ? scheme1_weak_product(rho, pi_b, pi_a, params)
                                   : scheme2_weak_product(rho, pi_b, pi_a, params);
        est.setting.a = a;
        est.setting.b = b;
        row.push_back(std::move(est));
    }
    return row;
}

DiracDistribution direct_dirac(const DensityMatrix &rho, const ProtocolParams &params) {
    const int n = rho.dim();
    DiracDistribution out;
    out.entries.resize(n, n);
    for (int a = 0; a < n; ++a) {
        for (auto &est : dirac_row(rho, a, params)) {
            out.entries(a, *est.setting.b) = est.value;
            out.settings.push_back(std::move(est));
        }
    }
    return out;
}

std::vector<ProtocolEstimate> density_row(const DensityMatrix &rho, int a1,
                                          const ProtocolParams &params) {
    params.validate();
    const int n = rho.dim();
    if (a1 < 0 || a1 >= n) {
        throw InvalidArgument("density row index " + std::to_string(a1) + " out of range");
    }
    const StateVector b0 = params.b0_or_default(n);
    if (!is_unbiased(b0)) {
        throw InvalidArgument("b0 is not unbiased with respect to the standard basis");
    }
    const OperatorMatrix pi_a1 = projector(standard_ket(n, a1));
    const OperatorMatrix pi_b0 = projector(b0);
    std::vector<ProtocolEstimate> row;
    row.reserve(n);

    switch (params.scheme) {
    case Scheme::substitution: {
        const JointState joint = scheme1_pair(rho, pi_b0, pi_a1, params);
        const double kappa = params.kappa(2);
        for (int a2 = 0; a2 < n; ++a2) {
            const StateVector ket = standard_ket(n, a2);
            ProtocolEstimate est = make_estimate(kappa * projected_ann_moment(joint, ket, kPair),
                                                 params.scheme, params);
            est.gt_products = {params.gt(), params.gt()};
            est.postselect_prob = outcome_probability(joint, ket);
            add_weak_regime_note(est, params);
            row.push_back(std::move(est));
        }
        break;
    }
    case Scheme::scheme1:
        for (int a2 = 0; a2 < n; ++a2) {
            row.push_back(scheme1_triple_product(rho, projector(standard_ket(n, a2)), pi_b0, pi_a1,
                                                 params));
        }
        break;
    case Scheme::scheme2:
        throw InvalidArgument("scheme2 cannot be combined with a strong readout: the conditioned "
                              "second-pointer shift is biased; use substitution or scheme1");
    }
    for (int a2 = 0; a2 < n; ++a2) {
        row[a2].setting.a1 = a1;
        row[a2].setting.a2 = a2;
    }
    return row;
}

DensityEstimate assemble_density(const StateVector &b0, std::vector<ProtocolEstimate> settings) {
    const int dim = b0.dim();
    if (static_cast<int>(settings.size()) != dim * dim) {
        throw InvalidArgument("density assembly needs N*N settings");
    }
    DensityEstimate out;
    out.raw = Matrix::Zero(dim, dim);
    for (const auto &est : settings) {
        if (!est.setting.a1 || !est.setting.a2) {
            throw InvalidArgument("density setting lacks a1/a2 labels");
        }
        const int a1 = *est.setting.a1;
        const int a2 = *est.setting.a2;
        if (a1 < 0 || a1 >= dim || a2 < 0 || a2 >= dim) {
            throw InvalidArgument("density setting label out of range");
        }
        out.raw(a1, a2) = est.value / (b0[a2] * std::conj(b0[a1]));
        for (const auto &note : est.diagnostics) {
            if (std::find(out.diagnostics.begin(), out.diagnostics.end(), note) ==
                out.diagnostics.end()) {
                out.diagnostics.push_back(note);
            }
        }
    }
    const Matrix herm = hermitize(out.raw);
    const double trace = herm.trace().real();
    if (!(std::abs(trace) > 1e-12)) {
        throw InvalidArgument("reconstructed density matrix has vanishing trace");
    }
    out.normalized = herm / trace;
    out.min_eigenvalue = min_eigenvalue(out.normalized);
    if (out.min_eigenvalue < -kPsdTol) {
        out.diagnostics.push_back("reconstruction is not positive semidefinite: min eigenvalue " +
                                  std::to_string(out.min_eigenvalue));
    }
    out.settings = std::move(settings);
    return out;
}

DensityEstimate direct_density(const DensityMatrix &rho, const ProtocolParams &params) {
    const int n = rho.dim();
    std::vector<ProtocolEstimate> settings;
    settings.reserve(static_cast<std::size_t>(n) * n);
    for (int a1 = 0; a1 < n; ++a1) {
        for (auto &est : density_row(rho, a1, params)) {
            settings.push_back(std::move(est));
        }
    }
    return assemble_density(params.b0_or_default(n), std::move(settings));
}

Matrix dirac_to_density(const Matrix &s) {
    if (s.rows() != s.cols() || s.rows() == 0) {
        throw InvalidArgument("Dirac distribution must be a non-empty square matrix");
    }
    const int n = static_cast<int>(s.rows());
    Matrix rho(n, n);
    for (int a1 = 0; a1 < n; ++a1) {
        for (int a2 = 0; a2 < n; ++a2) {
            Complex sum(0.0, 0.0);
            for (int b = 0; b < n; ++b) {
                const int k = ((b * (a1 - a2)) % n + n) % n;
                sum += s(a1, b) * std::polar(1.0, 2.0 * std::numbers::pi * k / n);
            }
            rho(a1, a2) = sum;
        }
    }
    return rho;
}

Matrix dirac_to_density(const DiracDistribution &s) { return dirac_to_density(s.entries); }

ProtocolEstimate scheme1_weak_product(const DensityMatrix &rho, const OperatorMatrix &e,
                                      const OperatorMatrix &f, const ProtocolParams &params) {
    params.validate();
    require_dim(rho.dim(), e.dim(), "E");
    require_dim(rho.dim(), f.dim(), "F");
    require_hermitian(e, "E");
    require_hermitian(f, "F");
    const JointState joint = scheme1_pair(rho, e, f, params);
    ProtocolEstimate est =
        make_estimate(params.kappa(2) * ann_product_moment(joint, kPair), Scheme::scheme1, params);
    est.gt_products = {params.gt(), params.gt()};
    add_weak_regime_note(est, params);
    return est;
}

ProtocolEstimate scheme2_weak_product(const DensityMatrix &rho, const OperatorMatrix &e,
                                      const OperatorMatrix &f, const ProtocolParams &params) {
    params.validate();
    require_dim(rho.dim(), e.dim(), "E");
    require_dim(rho.dim(), f.dim(), "F");
    require_hermitian(e, "E");
    require_hermitian(f, "F");
    const JointState initial = make_joint(rho, slots(params.grid(), params.sigma, 2));
    const double g2t2 = params.g * params.g * params.t * params.t;

    JointState run_k = apply_coupling(initial, coupling(f, 0, params, PointerVariable::momentum));
    run_k = apply_conditional_coupling(run_k, e, 0, 1, params.g, params.t);
    const double re = pointer_moments(run_k, 1).q / g2t2;

    JointState run_q = apply_coupling(initial, coupling(f, 0, params, PointerVariable::position));
    run_q = apply_conditional_coupling(run_q, e, 0, 1, params.g, params.t);
    const double im = pointer_moments(run_q, 1).q / (2.0 * g2t2 * params.sigma * params.sigma);

    ProtocolEstimate est = make_estimate({re, im}, Scheme::scheme2, params);
    est.gt_products = {params.gt(), params.gt()};
    add_weak_regime_note(est, params);
    return est;
}

ProtocolEstimate scheme1_triple_product(const DensityMatrix &rho, const OperatorMatrix &g,
                                        const OperatorMatrix &e, const OperatorMatrix &f,
                                        const ProtocolParams &params) {
    params.validate();
    require_dim(rho.dim(), g.dim(), "G");
    require_dim(rho.dim(), e.dim(), "E");
    require_dim(rho.dim(), f.dim(), "F");
    JointState joint = make_joint(rho, slots(params.triple_grid(), params.sigma, 3));
    joint = apply_coupling(joint, coupling(f, 0, params));
    joint = apply_coupling(joint, coupling(e, 1, params));
    joint = apply_coupling(joint, coupling(g, 2, params));
    ProtocolEstimate est = make_estimate(params.kappa(3) * ann_product_moment(joint, kTriple),
                                         Scheme::scheme1, params);
    est.gt_products = {params.gt(), params.gt(), params.gt()};
    add_weak_regime_note(est, params);
    return est;
}

MeasurementBasis basis_with_eigenvalues(std::vector<StateVector> kets, std::vector<double> values) {
    if (kets.size() != values.size()) {
        throw InvalidArgument("strong basis needs one eigenvalue per ket");
    }
    return {std::move(kets), std::move(values)};
}

ProtocolEstimate weak_strong_product(const DensityMatrix &rho,
                                     const std::variant<OperatorMatrix, ProductTarget> &weak,
                                     const MeasurementBasis &strong, const ProtocolParams &params) {
    params.validate();
    const int n = rho.dim();
    if (static_cast<int>(strong.kets.size()) != n || strong.eigenvalues.size() != strong.kets.size()) {
        throw InvalidArgument("strong basis needs N kets and N eigenvalues");
    }

    JointState joint = [&] {
        if (const auto *g = std::get_if<OperatorMatrix>(&weak)) {
            require_dim(n, g->dim(), "weak operator");
            if ((g->entries() - g->entries().adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
                throw InvalidArgument("a non-Hermitian weak operator must be given as a product "
                                      "of Hermitian factors");
            }
            return apply_coupling(make_joint(rho, slots(params.grid(), params.sigma, 1)),
                                  coupling(*g, 0, params));
        }
        if (params.scheme == Scheme::scheme2) {
            throw InvalidArgument("scheme2 cannot be combined with a strong readout");
        }
        const auto &target = std::get<ProductTarget>(weak);
        require_dim(n, target.e.dim(), "E");
        require_dim(n, target.f.dim(), "F");
        return scheme1_pair(rho, target.e, target.f, params);
    }();
    require_orthonormal(strong.kets, n);

    const bool single = std::holds_alternative<OperatorMatrix>(weak);
    Complex total(0.0, 0.0);
    for (int i = 0; i < n; ++i) {
        const double c = strong.eigenvalues[i];
        if (c == 0.0) {
            continue;
        }
        const Complex signal = single ? projected_weak_value(joint, strong.kets[i], params)
                                      : params.kappa(2) *
                                            projected_ann_moment(joint, strong.kets[i], kPair);
        total += c * signal;
    }
    ProtocolEstimate est = make_estimate(total, single ? Scheme::substitution : Scheme::scheme1,
                                         params);
    if (!single) {
        est.gt_products = {params.gt(), params.gt()};
        add_weak_regime_note(est, params);
    }
    return est;
}

CalibrationResult calibrate_scheme1(const ProtocolParams &params, std::span<const double> sweep) {
    if (sweep.size() < 2) {
        throw InvalidArgument("calibration needs at least two coupling values");
    }
    const DensityMatrix rho = DensityMatrix::pure(standard_ket(2, 0));
    const OperatorMatrix pi0 = projector(standard_ket(2, 0));
    CalibrationResult out;
    std::vector<double> ratios;
    for (double gt : sweep) {
        ProtocolParams p = params;
        p.g = gt / p.t;
        p.kappa_scale = 1.0;
        p.validate();
        const JointState joint = scheme1_pair(rho, pi0, pi0, p);
        const Complex moment = ann_product_moment(joint, kPair);
        if (!(std::abs(moment) > 0.0)) {
            throw InvalidArgument("calibration moment vanished");
        }
        const double ratio = (1.0 / moment).real() / p.kappa(2);
        out.points.push_back({gt, moment, ratio});
        ratios.push_back(ratio);
    }
    out.extrapolated_ratio = extrapolate_to_zero(sweep, std::span<const double>(ratios));
    return out;
}

} // namespace weakdm
