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

#include <stdexcept>
#include <string>
#include <string_view>

namespace weakdm {

/// Broad failure classes. The CLI maps each one to its own exit code.
enum class ErrorCategory {
    invalid_argument,
    postselection,
    wraparound,
    config,
    io,
};

std::string_view to_string(ErrorCategory category);

class Error : public std::runtime_error {
  public:
    Error(ErrorCategory category, const std::string &what)
        : std::runtime_error(what), category_(category) {}

    [[nodiscard]] ErrorCategory category() const noexcept { return category_; }

  private:
    ErrorCategory category_;
};

class InvalidArgument : public Error {
  public:
    explicit InvalidArgument(const std::string &what)
        : Error(ErrorCategory::invalid_argument, what) {}
};

/// Post-selection onto an outcome whose probability is (numerically) zero.
class PostSelectionError : public Error {
  public:
    PostSelectionError(const std::string &what, double probability)
        : Error(ErrorCategory::postselection, what), probability_(probability) {}

    [[nodiscard]] double probability() const noexcept { return probability_; }

  private:
    double probability_;
};

/// A coupling would push pointer amplitude far enough to alias on the periodic grid.
class WrapAroundError : public Error {
  public:
    explicit WrapAroundError(const std::string &what)
        : Error(ErrorCategory::wraparound, what) {}
};

} // namespace weakdm
