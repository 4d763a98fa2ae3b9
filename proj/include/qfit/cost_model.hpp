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

#include <string>

namespace qfit::algorithms {

enum class CostAlgorithm { Alg1, Alg1LinearSparsity, Alg2, Alg3 };

struct CostQuery {
    double n = 2;
    double s = 1;
    double kappa = 1;
    double epsilon = 0.1;
    double delta = 0.1;
    double mPrime = 1;
    CostAlgorithm algorithm = CostAlgorithm::Alg1;
    bool amplitudeAmplification = true;
};

/// Attempt counts before a postselected stage succeeds, with and without
/// amplitude amplification.
struct RepetitionCounts {
    double hermitianApplyPlain = 1;      // kappa^2
    double hermitianApplyAmplified = 1;  // kappa
    double inversionPlain = 1;           // kappa^2 per I(F)^-1
    double inversionAmplified = 1;       // kappa per I(F)^-1
    double lambdaPrepAmplified = 1;      // kappa^5
    double lambdaPrepPlain = 1;          // kappa^6
    double selected = 1;
};

/// Asymptotic oracle-query counts with all constants set to one and log base
/// 2. This is a scaling model, not a gate count.
struct CostReport {
    CostQuery query;
    double queries = 0;
    double simulationPerAttempt = 0;   // log N s^3 kappa / eps
    RepetitionCounts repetitions;
    std::string formula;
};

CostReport costModel(const CostQuery &q);

std::string toString(CostAlgorithm a);
CostAlgorithm parseCostAlgorithm(const std::string &s);

}  // namespace qfit::algorithms
