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

#include "weakdm/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "weakdm/error.hpp"
#include "weakdm/fft.hpp"
#include "weakdm/kernels.hpp"

namespace weakdm {

struct JointAccess {
    static JointState blank(int system_dim, std::vector<PointerSlot> pointers) {
        if (system_dim < 1) {
            throw InvalidArgument("system dimension must be positive");
        }
        if (pointers.size() > static_cast<std::size_t>(kMaxPointers)) {
            throw InvalidArgument("at most " + std::to_string(kMaxPointers) +
                                  " pointers are supported");
        }
        JointState joint;
        joint.system_dim_ = system_dim;
        for (const auto &slot : pointers) {
            if (!(slot.sigma > 0.0)) {
                throw InvalidArgument("pointer width sigma must be positive");
            }
            joint.block_ *= static_cast<std::size_t>(slot.grid.size());
            joint.measure_ *= slot.grid.spacing();
        }
        constexpr std::size_t kMaxAmplitudes = std::size_t{1} << 27;
        if (joint.block_ * static_cast<std::size_t>(system_dim) > kMaxAmplitudes) {
            throw InvalidArgument("joint state too large; reduce pointer grid sizes");
        }
        joint.position_excursion_.assign(pointers.size(), 0.0);
        joint.momentum_excursion_.assign(pointers.size(), 0.0);
        joint.pointers_ = std::move(pointers);
        return joint;
    }

    static std::vector<JointState::Branch> &branches(JointState &j) { return j.branches_; }
    static double &position_excursion(JointState &j, int p) { return j.position_excursion_[p]; }
    static double &momentum_excursion(JointState &j, int p) { return j.momentum_excursion_[p]; }
};

namespace {

void require_pointer(const JointState &joint, int pointer) {
    if (pointer < 0 || pointer >= joint.pointer_count()) {
        throw InvalidArgument("pointer index " + std::to_string(pointer) + " out of range");
    }
}

struct Spectrum {
    std::vector<double> values;
    Matrix vectors;
};

Spectrum hermitian_spectrum(const OperatorMatrix &op) {
    const Matrix &a = op.entries();
    if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        throw InvalidArgument("coupled observables must be Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitize(a));
    Spectrum spectrum;
    spectrum.vectors = solver.eigenvectors();
    const Eigen::VectorXd &ev = solver.eigenvalues();
    spectrum.values.assign(ev.data(), ev.data() + ev.size());

    const bool projector = (a * a - a).cwiseAbs().maxCoeff() <= 1e-10;
    if (projector) {
        for (double &v : spectrum.values) {
            v = v > 0.5 ? 1.0 : 0.0;
        }
        return spectrum;
    }
    // eigenvalues arrive sorted; collapse near-degenerate runs onto their first member
    for (std::size_t i = 1; i < spectrum.values.size(); ++i) {
        if (std::abs(spectrum.values[i] - spectrum.values[i - 1]) <= 1e-10) {
            spectrum.values[i] = spectrum.values[i - 1];
        }
    }
    return spectrum;
}

double max_abs_eigenvalue(const Spectrum &s) {
    double out = 0.0;
    for (double v : s.values) {
        out = std::max(out, std::abs(v));
    }
    return out;
}

/// Lines of one pointer axis inside a block of R amplitudes.
struct Axis {
    std::size_t length;
    std::size_t stride;
    std::size_t block;
};

Axis axis_of(const JointState &joint, int pointer) {
    return {static_cast<std::size_t>(joint.pointer(pointer).grid.size()), joint.stride(pointer),
            joint.pointer_block()};
}

// fn(line, base) where base is the block offset of the line's first element.
template <class Fn>
void for_each_line(std::span<Complex> block, const Axis &ax, std::vector<Complex> &scratch,
                   Fn &&fn) {
    const std::size_t outer = ax.block / (ax.length * ax.stride);
    if (ax.stride == 1) {
        for (std::size_t o = 0; o < outer; ++o) {
            fn(block.subspan(o * ax.length, ax.length), o * ax.length);
        }
        return;
    }
    scratch.resize(ax.length);
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t in = 0; in < ax.stride; ++in) {
            const std::size_t base = o * ax.length * ax.stride + in;
            for (std::size_t j = 0; j < ax.length; ++j) {
                scratch[j] = block[base + j * ax.stride];
            }
            fn(std::span<Complex>(scratch), base);
            for (std::size_t j = 0; j < ax.length; ++j) {
                block[base + j * ax.stride] = scratch[j];
            }
        }
    }
}

template <class Fn>
void for_each_line_read(std::span<const Complex> block, const Axis &ax,
                        std::vector<Complex> &scratch, Fn &&fn) {
    const std::size_t outer = ax.block / (ax.length * ax.stride);
    if (ax.stride == 1) {
        for (std::size_t o = 0; o < outer; ++o) {
            fn(block.subspan(o * ax.length, ax.length));
        }
        return;
    }
    scratch.resize(ax.length);
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t in = 0; in < ax.stride; ++in) {
            const std::size_t base = o * ax.length * ax.stride + in;
            for (std::size_t j = 0; j < ax.length; ++j) {
                scratch[j] = block[base + j * ax.stride];
            }
            fn(std::span<const Complex>(scratch));
        }
    }
}

void fill_translation_phase(std::vector<Complex> &phase, const PointerGrid &grid, double a) {
    const auto k = grid.wavenumbers();
    const double inv_m = 1.0 / grid.size();
    phase.resize(k.size());
    for (std::size_t m = 0; m < k.size(); ++m) {
        phase[m] = std::polar(inv_m, -k[m] * a);
    }
}

/// Applies (Q/2sigma + i sigma K) along lines of one pointer.
class AnnApplier {
  public:
    AnnApplier(const PointerGrid &grid, double sigma)
        : kweights_(grid.size()), qscale_(grid.size()), kpart_(grid.size()) {
        const auto k = grid.wavenumbers();
        const auto q = grid.positions();
        const double m = grid.size();
        for (int i = 0; i < grid.size(); ++i) {
            kweights_[i] = Complex(0.0, sigma * k[i] / m);
            qscale_[i] = q[i] / (2.0 * sigma);
        }
    }

    void operator()(std::span<Complex> line) {
        std::copy(line.begin(), line.end(), kpart_.begin());
        fft::forward(kpart_);
        kernels::mul(kpart_, kweights_);
        fft::backward(kpart_);
        kernels::mul_real(line, qscale_);
        kernels::axpy(Complex(1.0, 0.0), kpart_, line);
    }

  private:
    std::vector<Complex> kweights_;
    std::vector<double> qscale_;
    std::vector<Complex> kpart_;
};

std::span<Complex> component(std::vector<Complex> &amps, std::size_t s, std::size_t block) {
    return std::span<Complex>(amps).subspan(s * block, block);
}

std::span<const Complex> component(const std::vector<Complex> &amps, std::size_t s,
                                   std::size_t block) {
    return std::span<const Complex>(amps).subspan(s * block, block);
}

/// <c|psi> for one branch: the pointer block left after projecting the system onto c.
void project_block(const JointState::Branch &branch, const StateVector &c, std::size_t block,
                   std::vector<Complex> &out) {
    out.assign(block, Complex(0.0, 0.0));
    for (int s = 0; s < c.dim(); ++s) {
        const Complex coef = std::conj(c[s]);
        if (coef != Complex(0.0, 0.0)) {
            kernels::axpy(coef, component(branch.amps, s, block), out);
        }
    }
}

/// psi <- psi + sum_i v_i (x) (T_{lambda_i} - 1) <v_i|psi>, for eigenpairs with lambda_i != 0.
template <class Transform>
JointState apply_spectral(const JointState &joint, const Spectrum &spectrum, Transform &&transform) {
    JointState out = joint;
    const std::size_t block = joint.pointer_block();
    const int n = joint.system_dim();
    std::vector<Complex> comp(block);
    std::vector<Complex> moved(block);
    auto &out_branches = JointAccess::branches(out);
    for (std::size_t b = 0; b < out_branches.size(); ++b) {
        const auto &src = joint.branches()[b].amps;
        auto &dst = out_branches[b].amps;
        for (int i = 0; i < n; ++i) {
            const double lambda = spectrum.values[i];
            if (lambda == 0.0) {
                continue;
            }
            std::fill(comp.begin(), comp.end(), Complex(0.0, 0.0));
            for (int s = 0; s < n; ++s) {
                const Complex coef = std::conj(spectrum.vectors(s, i));
                if (coef != Complex(0.0, 0.0)) {
                    kernels::axpy(coef, component(src, s, block), comp);
                }
            }
            std::copy(comp.begin(), comp.end(), moved.begin());
            transform(std::span<Complex>(moved), lambda);
            kernels::axpy(Complex(-1.0, 0.0), comp, moved);
            for (int s = 0; s < n; ++s) {
                const Complex coef = spectrum.vectors(s, i);
                if (coef != Complex(0.0, 0.0)) {
                    kernels::axpy(coef, moved, component(dst, s, block));
                }
            }
        }
    }
    return out;
}

void moments_of_block(std::span<const Complex> block, const JointState &joint, int pointer,
                      std::vector<Complex> &scratch, std::vector<Complex> &fftbuf, double &q,
                      double &k) {
    const auto &grid = joint.pointer(pointer).grid;
    const auto positions = grid.positions();
    const auto wavenumbers = grid.wavenumbers();
    const double inv_m = 1.0 / grid.size();
    fftbuf.resize(grid.size());
    for_each_line_read(block, axis_of(joint, pointer), scratch, [&](std::span<const Complex> line) {
        q += kernels::weighted_norm2(line, positions);
        std::copy(line.begin(), line.end(), fftbuf.begin());
        fft::forward(fftbuf);
        k += kernels::weighted_norm2(fftbuf, wavenumbers) * inv_m;
    });
}

void check_distinct(const JointState &joint, std::span<const int> pointers) {
    for (std::size_t i = 0; i < pointers.size(); ++i) {
        require_pointer(joint, pointers[i]);
        for (std::size_t j = 0; j < i; ++j) {
            if (pointers[i] == pointers[j]) {
                throw InvalidArgument("pointer indices must be distinct");
            }
        }
    }
}

/// chi <- prod_p a_p chi, over every system component held in chi.
void apply_ann_chain(std::vector<Complex> &chi, std::size_t components, const JointState &joint,
                     std::span<const int> pointers, std::vector<Complex> &scratch) {
    const std::size_t block = joint.pointer_block();
    for (int p : pointers) {
        AnnApplier ann(joint.pointer(p).grid, joint.pointer(p).sigma);
        const Axis ax = axis_of(joint, p);
        for (std::size_t s = 0; s < components; ++s) {
            for_each_line(component(chi, s, block), ax, scratch,
                          [&](std::span<Complex> line, std::size_t) { ann(line); });
        }
    }
}

} // namespace

const PointerSlot &JointState::pointer(int index) const {
    if (index < 0 || index >= pointer_count()) {
        throw InvalidArgument("pointer index " + std::to_string(index) + " out of range");
    }
    return pointers_[index];
}

std::size_t JointState::stride(int pointer) const {
    (void)this->pointer(pointer);
    std::size_t s = 1;
    for (int j = pointer + 1; j < pointer_count(); ++j) {
        s *= static_cast<std::size_t>(pointers_[j].grid.size());
    }
    return s;
}

double JointState::position_excursion(int pointer) const {
    (void)this->pointer(pointer);
    return position_excursion_[pointer];
}

double JointState::momentum_excursion(int pointer) const {
    (void)this->pointer(pointer);
    return momentum_excursion_[pointer];
}

namespace {

std::vector<Complex> initial_pointer_block(const std::vector<PointerSlot> &pointers) {
    std::vector<Complex> tensor{Complex(1.0, 0.0)};
    for (const auto &slot : pointers) {
        const PointerState phi = gaussian_pointer(slot.grid, slot.sigma);
        const auto amps = phi.amps();
        std::vector<Complex> next;
        next.reserve(tensor.size() * amps.size());
        for (const Complex &outer : tensor) {
            for (const Complex &a : amps) {
                next.push_back(outer * a);
            }
        }
        tensor = std::move(next);
    }
    return tensor;
}

JointState::Branch make_branch(const Vector &ket, double weight,
                               const std::vector<Complex> &pointer_block) {
    JointState::Branch branch;
    branch.weight = weight;
    const std::size_t block = pointer_block.size();
    branch.amps.assign(block * ket.size(), Complex(0.0, 0.0));
    for (Eigen::Index s = 0; s < ket.size(); ++s) {
        if (ket(s) != Complex(0.0, 0.0)) {
            kernels::axpy(ket(s), pointer_block, component(branch.amps, s, block));
        }
    }
    return branch;
}

} // namespace

JointState make_joint(const DensityMatrix &rho, std::vector<PointerSlot> pointers) {
    JointState joint = JointAccess::blank(rho.dim(), pointers);
    const std::vector<Complex> block = initial_pointer_block(pointers);

    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.entries());
    const Eigen::VectorXd &values = solver.eigenvalues();
    double kept = 0.0;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        if (values(i) >= 1e-12) {
            kept += values(i);
        }
    }
    auto &branches = JointAccess::branches(joint);
    // largest weight first
    for (Eigen::Index i = values.size() - 1; i >= 0; --i) {
        if (values(i) >= 1e-12) {
            branches.push_back(make_branch(solver.eigenvectors().col(i), values(i) / kept, block));
        }
    }
    return joint;
}

JointState make_joint(const StateVector &psi, std::vector<PointerSlot> pointers) {
    JointState joint = JointAccess::blank(psi.dim(), pointers);
    JointAccess::branches(joint).push_back(
        make_branch(psi.amps(), 1.0, initial_pointer_block(pointers)));
    return joint;
}

JointState apply_coupling(const JointState &joint, const CouplingSpec &spec) {
    require_pointer(joint, spec.pointer);
    if (spec.observable.dim() != joint.system_dim()) {
        throw InvalidArgument("coupled observable dimension does not match the system");
    }
    const Spectrum spectrum = hermitian_spectrum(spec.observable);
    const double gt = spec.g * spec.t;
    if (gt == 0.0) {
        return joint;
    }
    const auto &slot = joint.pointer(spec.pointer);
    const Axis ax = axis_of(joint, spec.pointer);
    const double reach = std::abs(gt) * max_abs_eigenvalue(spectrum);
    std::vector<Complex> scratch;
    std::vector<Complex> phase;

    if (spec.variable == PointerVariable::momentum) {
        const double total = joint.position_excursion(spec.pointer) + reach;
        if (total > slot.grid.half_width() / 4.0) {
            throw WrapAroundError("pointer " + std::to_string(spec.pointer) + " shift " +
                                  std::to_string(total) +
                                  " exceeds a quarter of the grid half-width");
        }
        JointState out = apply_spectral(joint, spectrum, [&](std::span<Complex> comp, double lambda) {
            fill_translation_phase(phase, slot.grid, gt * lambda);
            for_each_line(comp, ax, scratch, [&](std::span<Complex> line, std::size_t) {
                line::apply_momentum_phase(line, phase);
            });
        });
        JointAccess::position_excursion(out, spec.pointer) = total;
        return out;
    }

    const double total = joint.momentum_excursion(spec.pointer) + reach;
    if (total > slot.grid.max_wavenumber() / 4.0) {
        throw WrapAroundError("pointer " + std::to_string(spec.pointer) + " momentum kick " +
                              std::to_string(total) + " exceeds a quarter of the grid bandwidth");
    }
    const auto q = slot.grid.positions();
    JointState out = apply_spectral(joint, spectrum, [&](std::span<Complex> comp, double lambda) {
        phase.resize(q.size());
        for (std::size_t j = 0; j < q.size(); ++j) {
            phase[j] = std::polar(1.0, -gt * lambda * q[j]);
        }
        for_each_line(comp, ax, scratch,
                      [&](std::span<Complex> line, std::size_t) { kernels::mul(line, phase); });
    });
    JointAccess::momentum_excursion(out, spec.pointer) = total;
    return out;
}

JointState apply_conditional_coupling(const JointState &joint, const OperatorMatrix &e, int src,
                                      int dst, double g2, double t) {
    require_pointer(joint, src);
    require_pointer(joint, dst);
    if (src == dst) {
        throw InvalidArgument("conditional coupling needs two distinct pointers");
    }
    if (e.dim() != joint.system_dim()) {
        throw InvalidArgument("coupled observable dimension does not match the system");
    }
    const Spectrum spectrum = hermitian_spectrum(e);
    const double gt = g2 * t;
    if (gt == 0.0) {
        return joint;
    }
    const auto &src_slot = joint.pointer(src);
    const auto &dst_slot = joint.pointer(dst);
    // source support: its mean excursion plus eight widths of Gaussian tail
    const double src_extent = joint.position_excursion(src) + 8.0 * src_slot.sigma;
    const double total =
        joint.position_excursion(dst) + std::abs(gt) * max_abs_eigenvalue(spectrum) * src_extent;
    if (total > dst_slot.grid.half_width() / 4.0) {
        throw WrapAroundError("conditional shift " + std::to_string(total) + " on pointer " +
                              std::to_string(dst) +
                              " exceeds a quarter of the grid half-width");
    }

    const Axis ax = axis_of(joint, dst);
    const std::size_t src_stride = joint.stride(src);
    const std::size_t src_len = static_cast<std::size_t>(src_slot.grid.size());
    const auto q_src = src_slot.grid.positions();
    std::vector<Complex> scratch;
    std::vector<Complex> phase;
    JointState out = apply_spectral(joint, spectrum, [&](std::span<Complex> comp, double lambda) {
        for_each_line(comp, ax, scratch, [&](std::span<Complex> line, std::size_t base) {
            const double q = q_src[(base / src_stride) % src_len];
            fill_translation_phase(phase, dst_slot.grid, gt * lambda * q);
            line::apply_momentum_phase(line, phase);
        });
    });
    JointAccess::position_excursion(out, dst) = total;
    return out;
}

double outcome_probability(const JointState &joint, const StateVector &c) {
    if (c.dim() != joint.system_dim()) {
        throw InvalidArgument("outcome ket dimension does not match the system");
    }
    std::vector<Complex> chi;
    double prob = 0.0;
    for (const auto &branch : joint.branches()) {
        project_block(branch, c, joint.pointer_block(), chi);
        prob += branch.weight * kernels::norm2(chi);
    }
    return prob * joint.measure();
}

PostSelection postselect(const JointState &joint, const StateVector &c) {
    if (c.dim() != joint.system_dim()) {
        throw InvalidArgument("post-selection ket dimension does not match the system");
    }
    const std::size_t block = joint.pointer_block();
    JointState out = joint;
    auto &branches = JointAccess::branches(out);
    branches.clear();

    std::vector<Complex> chi;
    double total = 0.0;
    for (const auto &branch : joint.branches()) {
        project_block(branch, c, block, chi);
        const double p = kernels::norm2(chi) * joint.measure();
        const double w = branch.weight * p;
        if (!(w > 0.0)) {
            continue;
        }
        total += w;
        JointState::Branch projected;
        projected.weight = w;
        projected.amps.assign(block * c.dim(), Complex(0.0, 0.0));
        const double scale = 1.0 / std::sqrt(p);
        for (int s = 0; s < c.dim(); ++s) {
            if (c[s] != Complex(0.0, 0.0)) {
                kernels::axpy(c[s] * scale, chi, component(projected.amps, s, block));
            }
        }
        branches.push_back(std::move(projected));
    }
    if (!(total >= kMinPostselectProbability)) {
        throw PostSelectionError("post-selection probability " + std::to_string(total) +
                                     " is below the minimum",
                                 total);
    }
    for (auto &branch : branches) {
        branch.weight /= total;
    }
    return {total, std::move(out)};
}

std::vector<MeasurementOutcome> strong_measure(const JointState &joint,
                                               std::span<const StateVector> basis) {
    const int n = joint.system_dim();
    if (static_cast<int>(basis.size()) != n) {
        throw InvalidArgument("measurement basis must have one ket per system dimension");
    }
    Matrix gram(n, n);
    for (int i = 0; i < n; ++i) {
        if (basis[i].dim() != n) {
            throw InvalidArgument("measurement basis ket has the wrong dimension");
        }
        for (int j = 0; j < n; ++j) {
            gram(i, j) = basis[i].amps().dot(basis[j].amps());
        }
    }
    if ((gram - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-10) {
        throw InvalidArgument("measurement basis is not orthonormal");
    }
    std::vector<MeasurementOutcome> outcomes;
    outcomes.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double p = outcome_probability(joint, basis[i]);
        if (p >= kMinPostselectProbability) {
            auto selected = postselect(joint, basis[i]);
            outcomes.push_back({i, selected.probability, std::move(selected.state)});
        } else {
            outcomes.push_back({i, p, std::nullopt});
        }
    }
    return outcomes;
}

PointerMoments pointer_moments(const JointState &joint, int pointer) {
    require_pointer(joint, pointer);
    const std::size_t block = joint.pointer_block();
    std::vector<Complex> scratch;
    std::vector<Complex> fftbuf;
    PointerMoments out;
    for (const auto &branch : joint.branches()) {
        double q = 0.0;
        double k = 0.0;
        for (int s = 0; s < joint.system_dim(); ++s) {
            moments_of_block(component(branch.amps, s, block), joint, pointer, scratch, fftbuf, q, k);
        }
        out.q += branch.weight * q;
        out.k += branch.weight * k;
    }
    out.q *= joint.measure();
    out.k *= joint.measure();
    return out;
}

Complex ann_product_moment(const JointState &joint, std::span<const int> pointers) {
    check_distinct(joint, pointers);
    std::vector<Complex> scratch;
    Complex total(0.0, 0.0);
    for (const auto &branch : joint.branches()) {
        std::vector<Complex> chi = branch.amps;
        apply_ann_chain(chi, static_cast<std::size_t>(joint.system_dim()), joint, pointers, scratch);
        total += branch.weight * kernels::dot(branch.amps, chi);
    }
    return total * joint.measure();
}

Complex joint_ann_moment(const JointState &joint, int first, int second) {
    const int pointers[] = {first, second};
    return ann_product_moment(joint, pointers);
}

ProjectedMoments projected_moments(const JointState &joint, const StateVector &c, int pointer) {
    require_pointer(joint, pointer);
    if (c.dim() != joint.system_dim()) {
        throw InvalidArgument("outcome ket dimension does not match the system");
    }
    std::vector<Complex> chi;
    std::vector<Complex> scratch;
    std::vector<Complex> fftbuf;
    ProjectedMoments out;
    for (const auto &branch : joint.branches()) {
        project_block(branch, c, joint.pointer_block(), chi);
        double q = 0.0;
        double k = 0.0;
        moments_of_block(chi, joint, pointer, scratch, fftbuf, q, k);
        out.probability += branch.weight * kernels::norm2(chi);
        out.q += branch.weight * q;
        out.k += branch.weight * k;
    }
    out.probability *= joint.measure();
    out.q *= joint.measure();
    out.k *= joint.measure();
    return out;
}

Complex projected_ann_moment(const JointState &joint, const StateVector &c,
                             std::span<const int> pointers) {
    check_distinct(joint, pointers);
    if (c.dim() != joint.system_dim()) {
        throw InvalidArgument("outcome ket dimension does not match the system");
    }
    std::vector<Complex> chi;
    std::vector<Complex> scratch;
    Complex total(0.0, 0.0);
    for (const auto &branch : joint.branches()) {
        project_block(branch, c, joint.pointer_block(), chi);
        std::vector<Complex> moved = chi;
        apply_ann_chain(moved, 1, joint, pointers, scratch);
        total += branch.weight * kernels::dot(chi, moved);
    }
    return total * joint.measure();
}

Complex weak_value_from_moments(double qf, double kf, double g, double t, double sigma) {
    const double gt = g * t;
    if (!(gt > 0.0)) {
        throw InvalidArgument("weak value readout needs g*t > 0");
    }
    if (!(sigma > 0.0)) {
        throw InvalidArgument("pointer width sigma must be positive");
    }
    return {qf / gt, kf * 2.0 * sigma * sigma / (gt * kHbar)};
}

} // namespace weakdm
