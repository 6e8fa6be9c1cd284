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
#include <span>

namespace weakdm::fft {

/// In-place unnormalised forward DFT, X[m] = sum_j x[j] exp(-2 pi i j m / n).
/// Plans are cached per length; safe to call from several threads.
void forward(std::span<std::complex<double>> data);

/// In-place unnormalised inverse DFT (no 1/n factor).
void backward(std::span<std::complex<double>> data);

} // namespace weakdm::fft
