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

#include "qfit/cost_model.hpp"

#include <cmath>

#include "qfit/error.hpp"

namespace qfit::algorithms {

namespace {

void validate(const CostQuery &q) {
    const auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(q.n) || q.n < 1.0 || !positive(q.s) || !positive(q.mPrime)) {
        throw Error(ErrorCode::InvalidArgument, "N, s and M' must be positive (N >= 1)");
    }
    if (!positive(q.kappa) || q.kappa < 1.0) {
        throw Error(ErrorCode::InvalidArgument, "kappa must be >= 1");
    }
    if (!positive(q.epsilon) || q.epsilon > 1.0 || !positive(q.delta) || q.delta > 1.0) {
        throw Error(ErrorCode::InvalidArgument, "epsilon and delta must lie in (0, 1]");
    }
}

}  // namespace

CostReport costModel(const CostQuery &q) {
    validate(q);
    const double logN = std::log2(q.n);
    const double s3 = std::pow(q.s, 3);
    const double k = q.kappa;
    const double eps = q.epsilon;
    const double del = q.delta;

    CostReport r;
    r.query = q;
    r.simulationPerAttempt = logN * s3 * k / eps;

    RepetitionCounts &rep = r.repetitions;
    rep.hermitianApplyPlain = k * k;
    rep.hermitianApplyAmplified = k;
    rep.inversionPlain = k * k;
    rep.inversionAmplified = k;
    // A^-1 gains nothing from amplification, so two plain inversions stack on
    // the (optionally amplified) I(F^dagger) preparation.
    rep.lambdaPrepAmplified = rep.hermitianApplyAmplified * rep.inversionPlain * rep.inversionPlain;
    rep.lambdaPrepPlain = rep.hermitianApplyPlain * rep.inversionPlain * rep.inversionPlain;
    rep.selected = q.amplitudeAmplification ? rep.lambdaPrepAmplified : rep.lambdaPrepPlain;

    switch (q.algorithm) {
    case CostAlgorithm::Alg1:
        r.queries = logN * s3 * std::pow(k, 6) / eps;
        r.formula = "log2(N) s^3 kappa^6 / eps";
        break;
    case CostAlgorithm::Alg1LinearSparsity:
        r.queries = logN * q.s * std::pow(k, 6) / (eps * eps);
        r.formula = "log2(N) s kappa^6 / eps^2";
        break;
    case CostAlgorithm::Alg2:
        r.queries = logN * s3 * std::pow(k, 4) / (eps * del * del);
        r.formula = "log2(N) s^3 kappa^4 / (eps delta^2)";
        break;
    case CostAlgorithm::Alg3:
        r.queries = logN * s3 *
                    (std::pow(k, 4) / (eps * del * del) +
                     q.mPrime * q.mPrime * std::pow(k, 6) / std::pow(eps, 3));
        r.formula = "log2(N) s^3 (kappa^4 / (eps delta^2) + M'^2 kappa^6 / eps^3)";
        break;
    }
    return r;
}

std::string toString(CostAlgorithm a) {
    switch (a) {
    case CostAlgorithm::Alg1: return "eq3";
    case CostAlgorithm::Alg1LinearSparsity: return "eq4";
    case CostAlgorithm::Alg2: return "alg2";
    case CostAlgorithm::Alg3: return "alg3";
    }
    return "?";
}

CostAlgorithm parseCostAlgorithm(const std::string &s) {
    if (s == "eq3" || s == "alg1" || s == "alg1_eq3") return CostAlgorithm::Alg1;
    if (s == "eq4" || s == "alg1_eq4") return CostAlgorithm::Alg1LinearSparsity;
    if (s == "alg2") return CostAlgorithm::Alg2;
    if (s == "alg3") return CostAlgorithm::Alg3;
    throw Error(ErrorCode::InvalidArgument, "unknown cost algorithm '" + s + "'");
}

}  // namespace qfit::algorithms
