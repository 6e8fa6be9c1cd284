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
 * Inner loops over pointer-grid amplitudes. Every routine has a scalar
 * reference implementation and, on x86-64, an AVX2+FMA variant; the active
 * variant is picked once from CPUID and can be overridden (tests force both
 * paths and compare them).
 *
 * Spans passed to the same call must have equal length.
 */

#include <complex>
#include <span>
#include <string_view>

namespace weakdm::kernels {

using Complex = std::complex<double>;

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

/// Best variant the running CPU supports.
Isa detected_isa() noexcept;
/// Variant currently used by the dispatching entry points below. Starts at
/// detected_isa() unless the environment sets WEAKDM_KERNELS=scalar.
Isa active_isa() noexcept;
/// Throws InvalidArgument when the CPU lacks the requested extension.
void force_isa(Isa isa);

/// Restores the previously active variant on destruction.
class ScopedIsa {
  public:
    explicit ScopedIsa(Isa isa) : previous_(active_isa()) { force_isa(isa); }
    ~ScopedIsa() { force_isa(previous_); }
    ScopedIsa(const ScopedIsa &) = delete;
    ScopedIsa &operator=(const ScopedIsa &) = delete;

  private:
    Isa previous_;
};

/// x[i] *= w[i]
void mul(std::span<Complex> x, std::span<const Complex> w);
/// x[i] *= w[i], real weights
void mul_real(std::span<Complex> x, std::span<const double> w);
/// y[i] += a * x[i]
void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y);
/// sum |x[i]|^2
double norm2(std::span<const Complex> x);
/// sum w[i] |x[i]|^2
double weighted_norm2(std::span<const Complex> x, std::span<const double> w);
/// sum conj(x[i]) y[i]
Complex dot(std::span<const Complex> x, std::span<const Complex> y);

namespace scalar {
void mul(std::span<Complex> x, std::span<const Complex> w);
void mul_real(std::span<Complex> x, std::span<const double> w);
void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y);
double norm2(std::span<const Complex> x);
double weighted_norm2(std::span<const Complex> x, std::span<const double> w);
Complex dot(std::span<const Complex> x, std::span<const Complex> y);
} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define WEAKDM_HAVE_AVX2_KERNELS 1
namespace avx2 {
void mul(std::span<Complex> x, std::span<const Complex> w);
void mul_real(std::span<Complex> x, std::span<const double> w);
void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y);
double norm2(std::span<const Complex> x);
double weighted_norm2(std::span<const Complex> x, std::span<const double> w);
Complex dot(std::span<const Complex> x, std::span<const Complex> y);
} // namespace avx2
#endif

} // namespace weakdm::kernels
