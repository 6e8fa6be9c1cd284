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

#include "weakdm/fft.hpp"

#include <map>
#include <mutex>
#include <utility>

#include <fftw3.h>

namespace weakdm::fft {

namespace {

// FFTW's planner is not re-entrant; fftw_execute_dft on an existing plan is.
class PlanCache {
  public:
    ~PlanCache() {
        std::lock_guard lock(mutex_);
        for (auto &[key, plan] : plans_) {
            fftw_destroy_plan(plan);
        }
    }

    fftw_plan get(int n, int sign) {
        std::lock_guard lock(mutex_);
        const auto key = std::make_pair(n, sign);
        if (auto it = plans_.find(key); it != plans_.end()) {
            return it->second;
        }
        auto *scratch = fftw_alloc_complex(static_cast<std::size_t>(n));
        fftw_plan plan = fftw_plan_dft_1d(n, scratch, scratch, sign,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(scratch);
        plans_.emplace(key, plan);
        return plan;
    }

  private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache &cache() {
    static PlanCache instance;
    return instance;
}

void run(std::span<std::complex<double>> data, int sign) {
    if (data.empty()) {
        return;
    }
    fftw_plan plan = cache().get(static_cast<int>(data.size()), sign);
    auto *ptr = reinterpret_cast<fftw_complex *>(data.data());
    fftw_execute_dft(plan, ptr, ptr);
}

} // namespace

void forward(std::span<std::complex<double>> data) { run(data, FFTW_FORWARD); }

void backward(std::span<std::complex<double>> data) { run(data, FFTW_BACKWARD); }

} // namespace weakdm::fft
