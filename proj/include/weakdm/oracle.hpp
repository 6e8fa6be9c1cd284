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
 * Closed-form reference values. Dense linear algebra only; nothing here
 * touches a pointer grid.
 */

#include <span>

#include "weakdm/hilbert.hpp"

namespace weakdm::oracle {

/// <c|A|psi> / <c|psi>.
Complex weak_value_pure(const OperatorMatrix &a, const StateVector &psi, const StateVector &c);
/// <c|A rho|c> / <c|rho|c>.
Complex weak_value_mixed(const OperatorMatrix &a, const DensityMatrix &rho, const StateVector &c);
/// Tr[A rho], for any (possibly non-Hermitian) A.
Complex weak_average(const OperatorMatrix &a, const DensityMatrix &rho);

/// S(a, b) = <a|rho|b><b|a>, rows indexed by the standard label a, columns by the Fourier label b.
Matrix dirac_exact(const DensityMatrix &rho);

/// Entry (a1, a2) = Tr[Pi_{a1 a2} rho], which is rho_{a1 a2}/N for the uniform b0. Throws
/// InvalidArgument for a biased b0 and std::logic_error when the trace route and the matrix
/// element route <a2|b0><b0|a1> rho_{a1 a2} disagree beyond 1e-12.
Matrix density_from_triple_exact(const DensityMatrix &rho, const StateVector &b0);

/// sum_c c <c|G rho|c> over the eigenpairs of Hermitian C, cross-checked against Tr[C G rho].
Complex weak_strong_exact(const DensityMatrix &rho, const OperatorMatrix &g, const OperatorMatrix &c);
/// Same, with C given by an orthonormal basis and its eigenvalues.
Complex weak_strong_exact(const DensityMatrix &rho, const OperatorMatrix &g,
                          std::span<const StateVector> basis, std::span<const double> eigenvalues);

/// <c|E F rho|c>, the quantity a post-selected Scheme 1 run reports for outcome c.
Complex product_outcome_exact(const DensityMatrix &rho, const OperatorMatrix &e,
                              const OperatorMatrix &f, const StateVector &c);
/// (1/2) <c|E F rho + F rho E|c>, what the conditional Scheme 2 coupling yields after
/// post-selection on c. Differs from the Scheme 1 value unless E commutes with |c><c|.
Complex scheme2_outcome_exact(const DensityMatrix &rho, const OperatorMatrix &e,
                              const OperatorMatrix &f, const StateVector &c);

} // namespace weakdm::oracle
