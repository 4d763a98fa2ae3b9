// Copyright 2026 The qfit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

#include "qfit/fit_problem.hpp"
#include "qfit/types.hpp"

namespace qfit::testing {

/// Complex Gaussian matrix with entries of unit variance.
ComplexMatrix randomMatrix(Index rows, Index cols, std::uint64_t seed);
ComplexVector randomVector(Index n, std::uint64_t seed);
ComplexVector randomUnitVector(Index n, std::uint64_t seed);

/// F = (1, 1)^T / sqrt2, y = (0, 1).
fit::FitProblem workedInstance();
/// Normalized problem from raw F and y.
fit::FitProblem problemFrom(const ComplexMatrix &f, const ComplexVector &y);

ComplexMatrix pauliX();

}  // namespace qfit::testing
