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

#include "weakdm/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "weakdm/error.hpp"
#include "weakdm/evolution.hpp"
#include "weakdm/fft.hpp"
#include "weakdm/kernels.hpp"

namespace weakdm {

void ShotPlan::validate() const {
    if (shots < 2) {
        throw InvalidArgument("a complex estimate needs at least 2 shots");
    }
    if (!(readout_split >= 0.0 && readout_split <= 1.0)) {
        throw InvalidArgument("readout split must lie in [0, 1]");
    }
    if (threads < 1) {
        throw InvalidArgument("thread count must be positive");
    }
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

enum Stream : std::uint64_t { kQuadrature = 1, kOutcome = 2, kCell = 3, kOffset = 4 };

/// Cell-centred grid density with its cumulative distribution.
struct Density {
    std::vector<double> centres;
    std::vector<double> cdf;
    double width = 0.0;
    double mean = 0.0;

    [[nodiscard]] double draw(double u_cell, double u_offset) const {
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u_cell);
        std::size_t j = it == cdf.end() ? cdf.size() - 1 : static_cast<std::size_t>(it - cdf.begin());
        // a final cdf a hair below 1 must not land on a zero-probability tail cell
        while (j > 0 && cdf[j] == cdf[j - 1]) {
            --j;
        }
        return centres[j] - 0.5 * width + width * u_offset;
    }
};

Density make_density(std::vector<double> centres, std::vector<double> weights, double width) {
    Density d;
    d.width = width;
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    d.cdf.resize(weights.size());
    double run = 0.0;
    for (std::size_t j = 0; j < weights.size(); ++j) {
        run += weights[j] / total;
        d.cdf[j] = run;
        d.mean += centres[j] * weights[j] / total;
    }
    d.centres = std::move(centres);
    return d;
}

struct Outcome {
    double weight = 1.0;
    double probability = 0.0;
    bool rejected = false;
    std::optional<Density> position;
    std::optional<Density> momentum;
};

struct Model {
    std::vector<Outcome> outcomes;
    std::vector<double> outcome_cdf;
    double gt = 0.0;
    double sigma = 1.0;
};

/// Unnormalised position and momentum densities of the pointer after projecting the
/// system onto ket (or, with ket absent, tracing the system out).
void accumulate_densities(const JointState &joint, const StateVector *ket,
                          std::vector<double> &pos, std::vector<double> &mom) {
    const std::size_t m = joint.pointer_block();
    const int n = joint.system_dim();
    std::vector<Complex> chi(m);
    std::vector<Complex> spectrum(m);
    auto add = [&](double w) {
        for (std::size_t j = 0; j < m; ++j) {
            pos[j] += w * std::norm(chi[j]);
        }
        std::copy(chi.begin(), chi.end(), spectrum.begin());
        fft::forward(spectrum);
        for (std::size_t j = 0; j < m; ++j) {
            mom[j] += w * std::norm(spectrum[j]);
        }
    };
    for (const auto &branch : joint.branches()) {
        const std::span<const Complex> amps(branch.amps);
        if (ket != nullptr) {
            std::fill(chi.begin(), chi.end(), Complex(0.0, 0.0));
            for (int s = 0; s < n; ++s) {
                kernels::axpy(std::conj((*ket)[s]), amps.subspan(s * m, m), chi);
            }
            add(branch.weight);
        } else {
            for (int s = 0; s < n; ++s) {
                std::copy_n(amps.begin() + static_cast<std::ptrdiff_t>(s * m), m, chi.begin());
                add(branch.weight);
            }
        }
    }
}

Outcome make_outcome(const JointState &joint, const StateVector *ket, double weight) {
    const PointerGrid &grid = joint.pointer(0).grid;
    const std::size_t m = static_cast<std::size_t>(grid.size());
    std::vector<double> pos(m, 0.0);
    std::vector<double> mom(m, 0.0);
    accumulate_densities(joint, ket, pos, mom);

    Outcome out;
    out.weight = weight;
    out.probability = std::accumulate(pos.begin(), pos.end(), 0.0) * grid.spacing();
    if (!(out.probability > 0.0)) {
        out.probability = 0.0;
        return out;
    }
    const auto q = grid.positions();
    out.position = make_density({q.begin(), q.end()}, pos, grid.spacing());

    // momentum cells in ascending k order
    const auto k = grid.wavenumbers();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return k[a] < k[b]; });
    std::vector<double> ks(m);
    std::vector<double> ws(m);
    for (std::size_t i = 0; i < m; ++i) {
        ks[i] = k[order[i]];
        ws[i] = mom[order[i]];
    }
    const double dk = 2.0 * grid.max_wavenumber() / static_cast<double>(m);
    out.momentum = make_density(std::move(ks), std::move(ws), dk);
    return out;
}

Model build_model(const SampleSetting &setting) {
    if (!(setting.sigma > 0.0) || !(setting.g > 0.0) || !(setting.t > 0.0)) {
        throw InvalidArgument("sampling needs sigma, g and t positive");
    }
    if (setting.postselect && setting.strong) {
        throw InvalidArgument("a sample setting takes either a post-selection ket or a strong "
                              "basis, not both");
    }
    const int n = setting.rho.dim();
    if (setting.observable.dim() != n) {
        throw InvalidArgument("observable dimension does not match the state");
    }
    JointState joint = make_joint(setting.rho, {PointerSlot{setting.grid, setting.sigma}});
    joint = apply_coupling(joint, CouplingSpec{setting.observable, 0, setting.g, setting.t,
                                               PointerVariable::momentum});

    Model model;
    model.gt = setting.g * setting.t;
    model.sigma = setting.sigma;
    if (setting.postselect) {
        Outcome kept = make_outcome(joint, &*setting.postselect, 1.0);
        if (!(kept.probability >= kMinProtocolPostselect)) {
            throw PostSelectionError("post-selection probability " +
                                         std::to_string(kept.probability) + " is too small to sample",
                                     kept.probability);
        }
        Outcome rejected;
        rejected.rejected = true;
        rejected.probability = std::max(0.0, 1.0 - kept.probability);
        model.outcomes.push_back(std::move(kept));
        model.outcomes.push_back(std::move(rejected));
    } else if (setting.strong) {
        const auto &basis = *setting.strong;
        if (static_cast<int>(basis.kets.size()) != n || basis.eigenvalues.size() != basis.kets.size()) {
            throw InvalidArgument("strong basis needs N kets and N eigenvalues");
        }
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const Complex overlap = basis.kets[i].amps().dot(basis.kets[j].amps());
                if (std::abs(overlap - (i == j ? 1.0 : 0.0)) > 1e-10) {
                    throw InvalidArgument("strong measurement basis is not orthonormal");
                }
            }
            model.outcomes.push_back(make_outcome(joint, &basis.kets[i], basis.eigenvalues[i]));
        }
    } else {
        model.outcomes.push_back(make_outcome(joint, nullptr, 1.0));
    }

    double total = 0.0;
    for (const auto &o : model.outcomes) {
        total += o.probability;
    }
    double run = 0.0;
    for (const auto &o : model.outcomes) {
        run += o.probability / total;
        model.outcome_cdf.push_back(run);
    }
    return model;
}

double pairwise_sum(std::span<const double> x) {
    if (x.size() <= 8) {
        double s = 0.0;
        for (double v : x) {
            s += v;
        }
        return s;
    }
    const std::size_t half = x.size() / 2;
    return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

struct Stats {
    double mean = 0.0;
    double standard_error = 0.0;
};

Stats stats_of(std::span<const double> x) {
    const double n = static_cast<double>(x.size());
    Stats s;
    s.mean = pairwise_sum(x) / n;
    std::vector<double> dev(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        dev[i] = (x[i] - s.mean) * (x[i] - s.mean);
    }
    s.standard_error = std::sqrt(pairwise_sum(dev) / (n - 1.0) / n);
    return s;
}

enum class ShotKind : std::uint8_t { position, momentum, rejected };

} // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t counter, std::uint64_t stream) noexcept {
    const std::uint64_t h = splitmix64(seed ^ splitmix64(counter ^ splitmix64(stream)));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

SampledEstimate sample_protocol(const SampleSetting &setting, const ShotPlan &plan) {
    plan.validate();
    const Model model = build_model(setting);

    std::vector<double> values(plan.shots);
    std::vector<ShotKind> kinds(plan.shots);
    auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) {
            const bool position = counter_uniform(plan.seed, i, kQuadrature) < plan.readout_split;
            const double u = counter_uniform(plan.seed, i, kOutcome);
            auto it = std::upper_bound(model.outcome_cdf.begin(), model.outcome_cdf.end(), u);
            std::size_t c = it == model.outcome_cdf.end()
                                ? model.outcome_cdf.size() - 1
                                : static_cast<std::size_t>(it - model.outcome_cdf.begin());
            while (model.outcomes[c].probability == 0.0 && c > 0) {
                --c;
            }
            const Outcome &outcome = model.outcomes[c];
            if (outcome.rejected) {
                kinds[i] = ShotKind::rejected;
                values[i] = 0.0;
                continue;
            }
            const Density &density = position ? *outcome.position : *outcome.momentum;
            const double x = density.draw(counter_uniform(plan.seed, i, kCell),
                                          counter_uniform(plan.seed, i, kOffset));
            kinds[i] = position ? ShotKind::position : ShotKind::momentum;
            values[i] = outcome.weight * x;
        }
    };

    const auto threads = static_cast<std::uint64_t>(
        std::min<std::uint64_t>(static_cast<std::uint64_t>(plan.threads), plan.shots));
    if (threads <= 1) {
        run_range(0, plan.shots);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (plan.shots + threads - 1) / threads;
        for (std::uint64_t w = 0; w < threads; ++w) {
            const std::uint64_t begin = w * chunk;
            const std::uint64_t end = std::min(plan.shots, begin + chunk);
            if (begin < end) {
                pool.emplace_back(run_range, begin, end);
            }
        }
        for (auto &th : pool) {
            th.join();
        }
    }

    std::vector<double> pos;
    std::vector<double> mom;
    SampledEstimate out;
    for (std::uint64_t i = 0; i < plan.shots; ++i) {
        switch (kinds[i]) {
        case ShotKind::position:
            pos.push_back(values[i]);
            break;
        case ShotKind::momentum:
            mom.push_back(values[i]);
            break;
        case ShotKind::rejected:
            ++out.shots_rejected;
            break;
        }
    }
    if (pos.size() < 2 || mom.size() < 2) {
        throw InvalidArgument("too few shots to populate both quadratures (position " +
                              std::to_string(pos.size()) + ", momentum " +
                              std::to_string(mom.size()) + ")");
    }
    const Stats sq = stats_of(pos);
    const Stats sk = stats_of(mom);
    const double re_scale = 1.0 / model.gt;
    const double im_scale = 2.0 * model.sigma * model.sigma / model.gt;
    out.value = {sq.mean * re_scale, sk.mean * im_scale};
    out.stderr_re = sq.standard_error * re_scale;
    out.stderr_im = sk.standard_error * im_scale;
    out.shots_position = pos.size();
    out.shots_momentum = mom.size();
    return out;
}

Complex deterministic_value(const SampleSetting &setting) {
    const Model model = build_model(setting);
    double accepted = 0.0;
    double q = 0.0;
    double k = 0.0;
    for (const auto &o : model.outcomes) {
        if (o.rejected || o.probability == 0.0) {
            continue;
        }
        accepted += o.probability;
        q += o.weight * o.probability * o.position->mean;
        k += o.weight * o.probability * o.momentum->mean;
    }
    return {q / accepted / model.gt, k / accepted * 2.0 * model.sigma * model.sigma / model.gt};
}

} // namespace weakdm
