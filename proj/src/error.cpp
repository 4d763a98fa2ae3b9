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

#include "qfit/error.hpp"

namespace qfit {

std::string_view errorCodeName(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::DimensionOverflow: return "dimension_overflow";
    case ErrorCode::Singular: return "singular";
    case ErrorCode::IllPosed: return "ill_posed";
    case ErrorCode::ConvergenceFailure: return "convergence_failure";
    case ErrorCode::Aliasing: return "aliasing";
    case ErrorCode::RotationBound: return "rotation_bound";
    case ErrorCode::EmptyPostselection: return "empty_postselection";
    case ErrorCode::Infeasible: return "infeasible";
    case ErrorCode::IllConditionedReference: return "ill_conditioned_reference";
    case ErrorCode::Io: return "io";
    case ErrorCode::Schema: return "schema";
    }
    return "unknown";
}

}  // namespace qfit
