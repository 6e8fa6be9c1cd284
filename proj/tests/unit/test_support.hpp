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

#include <complex>

#include "catch_amalgamated.hpp"

#include "weakdm/hilbert.hpp"

namespace weakdm::testing {

inline bool close(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

inline double max_abs_diff(const Matrix &a, const Matrix &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

inline Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

inline Vector vec(std::initializer_list<Complex> values) {
    Vector v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (const auto &x : values) {
        v(i++) = x;
    }
    return v;
}

} // namespace weakdm::testing
