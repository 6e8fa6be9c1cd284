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

#include <atomic>
#include <cstdlib>
#include <string_view>

#include "weakdm/error.hpp"
#include "weakdm/kernels.hpp"

namespace weakdm::kernels {

namespace {

Isa probe() noexcept {
#if defined(WEAKDM_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
        return Isa::avx2;
    }
#endif
    return Isa::scalar;
}

/// WEAKDM_KERNELS=scalar pins the reference kernels.
Isa initial(Isa detected) noexcept {
    const char *env = std::getenv("WEAKDM_KERNELS");
    if (env != nullptr && std::string_view(env) == "scalar") {
        return Isa::scalar;
    }
    return detected;
}

const Isa g_detected = probe();
std::atomic<Isa> g_active{initial(g_detected)};

bool use_avx2() noexcept {
#if defined(WEAKDM_HAVE_AVX2_KERNELS)
    return g_active.load(std::memory_order_relaxed) == Isa::avx2;
#else
    return false;
#endif
}

} // namespace

std::string_view to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

Isa detected_isa() noexcept { return g_detected; }

Isa active_isa() noexcept { return g_active.load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
    if (isa == Isa::avx2 && g_detected != Isa::avx2) {
        throw InvalidArgument("AVX2 kernels are not supported on this CPU");
    }
    g_active.store(isa, std::memory_order_relaxed);
}

#if defined(WEAKDM_HAVE_AVX2_KERNELS)
#define WEAKDM_DISPATCH(call)                                                                      \
    if (use_avx2()) {                                                                              \
        return avx2::call;                                                                         \
    }                                                                                              \
    return scalar::call
#else
#define WEAKDM_DISPATCH(call) return scalar::call
#endif

void mul(std::span<Complex> x, std::span<const Complex> w) { WEAKDM_DISPATCH(mul(x, w)); }

void mul_real(std::span<Complex> x, std::span<const double> w) {
    WEAKDM_DISPATCH(mul_real(x, w));
}

void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y) {
    WEAKDM_DISPATCH(axpy(a, x, y));
}

double norm2(std::span<const Complex> x) { WEAKDM_DISPATCH(norm2(x)); }

double weighted_norm2(std::span<const Complex> x, std::span<const double> w) {
    WEAKDM_DISPATCH(weighted_norm2(x, w));
}

Complex dot(std::span<const Complex> x, std::span<const Complex> y) {
    WEAKDM_DISPATCH(dot(x, y));
}

#undef WEAKDM_DISPATCH

} // namespace weakdm::kernels
