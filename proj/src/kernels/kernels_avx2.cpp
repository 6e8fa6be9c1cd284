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

// AVX2+FMA variants of the grid kernels. Compiled with per-function target
// attributes so the translation unit builds without -mavx2; dispatch.cpp only
// routes here after a CPUID check.

#include "weakdm/kernels.hpp"

#if defined(WEAKDM_HAVE_AVX2_KERNELS)

#include <cstddef>
#include <immintrin.h>

#define WEAKDM_AVX2 __attribute__((target("avx2,fma")))

namespace weakdm::kernels::avx2 {

namespace {

WEAKDM_AVX2 inline __m256d load(const Complex *p) {
    return _mm256_loadu_pd(reinterpret_cast<const double *>(p));
}

WEAKDM_AVX2 inline void store(Complex *p, __m256d v) {
    _mm256_storeu_pd(reinterpret_cast<double *>(p), v);
}

// (x0, x1) * (w0, w1) on interleaved re/im lanes
WEAKDM_AVX2 inline __m256d cmul(__m256d x, __m256d w) {
    const __m256d wr = _mm256_movedup_pd(w);
    const __m256d wi = _mm256_permute_pd(w, 0xF);
    const __m256d xs = _mm256_permute_pd(x, 0x5);
    return _mm256_fmaddsub_pd(x, wr, _mm256_mul_pd(xs, wi));
}

// [w0, w0, w1, w1] from two consecutive doubles
WEAKDM_AVX2 inline __m256d spread_pair(const double *w) {
    const __m256d v = _mm256_castpd128_pd256(_mm_loadu_pd(w));
    return _mm256_permute4x64_pd(v, 0b01010000);
}

WEAKDM_AVX2 inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

} // namespace

WEAKDM_AVX2 void mul(std::span<Complex> x, std::span<const Complex> w) {
    const std::size_t n = x.size();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        store(x.data() + i, cmul(load(x.data() + i), load(w.data() + i)));
    }
    for (; i < n; ++i) {
        x[i] *= w[i];
    }
}

WEAKDM_AVX2 void mul_real(std::span<Complex> x, std::span<const double> w) {
    const std::size_t n = x.size();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        store(x.data() + i, _mm256_mul_pd(load(x.data() + i), spread_pair(w.data() + i)));
    }
    for (; i < n; ++i) {
        x[i] = Complex(x[i].real() * w[i], x[i].imag() * w[i]);
    }
}

WEAKDM_AVX2 void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y) {
    const std::size_t n = x.size();
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = load(x.data() + i);
        const __m256d xs = _mm256_permute_pd(xv, 0x5);
        const __m256d prod = _mm256_fmaddsub_pd(xv, ar, _mm256_mul_pd(xs, ai));
        store(y.data() + i, _mm256_add_pd(load(y.data() + i), prod));
    }
    for (; i < n; ++i) {
        y[i] += a * x[i];
    }
}

WEAKDM_AVX2 double norm2(std::span<const Complex> x) {
    const std::size_t n = x.size();
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a = load(x.data() + i);
        const __m256d b = load(x.data() + i + 2);
        acc0 = _mm256_fmadd_pd(a, a, acc0);
        acc1 = _mm256_fmadd_pd(b, b, acc1);
    }
    for (; i + 2 <= n; i += 2) {
        const __m256d a = load(x.data() + i);
        acc0 = _mm256_fmadd_pd(a, a, acc0);
    }
    double out = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) {
        out += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    }
    return out;
}

WEAKDM_AVX2 double weighted_norm2(std::span<const Complex> x, std::span<const double> w) {
    const std::size_t n = x.size();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d a = load(x.data() + i);
        acc = _mm256_fmadd_pd(_mm256_mul_pd(a, a), spread_pair(w.data() + i), acc);
    }
    double out = hsum(acc);
    for (; i < n; ++i) {
        out += w[i] * (x[i].real() * x[i].real() + x[i].imag() * x[i].imag());
    }
    return out;
}

WEAKDM_AVX2 Complex dot(std::span<const Complex> x, std::span<const Complex> y) {
    const std::size_t n = x.size();
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = load(x.data() + i);
        const __m256d yv = load(y.data() + i);
        acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
        acc_im = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0x5), acc_im);
    }
    // acc_im lanes hold (xr*yi, xi*yr, ...); the imaginary part is the alternating sum
    alignas(32) double im_lanes[4];
    _mm256_store_pd(im_lanes, acc_im);
    double re = hsum(acc_re);
    double im = (im_lanes[0] - im_lanes[1]) + (im_lanes[2] - im_lanes[3]);
    for (; i < n; ++i) {
        re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
    }
    return {re, im};
}

} // namespace weakdm::kernels::avx2

#endif
