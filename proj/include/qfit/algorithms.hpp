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
#include <optional>
#include <vector>

#include "qfit/cost_model.hpp"
#include "qfit/fit_problem.hpp"
#include "qfit/qsim.hpp"
#include "qfit/tomography.hpp"

namespace qfit::algorithms {

enum class PipelineVariant { ThreeStage, FusedInverse };

/// Knobs from which concrete stage configs are resolved against an operator.
struct PipelineOptions {
    PipelineVariant variant = PipelineVariant::ThreeStage;
    Index clockSize = 1024;
    std::optional<double> t0;    // nullopt = auto
    std::optional<double> c;     // nullopt = mode default
    qsim::ClockWindow window = qsim::ClockWindow::Sine;
    double epsilon = 0.01;       // target accuracy for auto t0
};

/// Ordered stages, all acting with H_F. Three-stage is
/// [Multiply, Invert, Invert]; fused is [Invert].
struct PipelineSpec {
    PipelineVariant variant = PipelineVariant::ThreeStage;
    std::vector<qsim::PhaseEstimationConfig> stages;
    /// Multiply pass mapping |lambda> to I(F)|lambda> for the fit-quality test.
    qsim::PhaseEstimationConfig fittingStage;
    double epsilon = 0.01;

    static PipelineSpec resolve(const PipelineOptions &options,
                                const qsim::SpectralOperator &op);
    /// Throws unless the stage modes match the variant and every config is
    /// valid for `op`.
    void validate(const qsim::SpectralOperator &op) const;
};

qsim::PhaseEstimationConfig resolveStage(qsim::PeMode mode,
                                         const PipelineOptions &options,
                                         const qsim::SpectralOperator &op);

struct StageSummary {
    qsim::PeMode mode = qsim::PeMode::Multiply;
    double t0 = 0.0;
    double c = 0.0;
    double flagProbability = 0.0;
    double clockReturnProbability = 0.0;
    double clockResidual = 0.0;
    double oracleFidelity = 0.0;
};

struct Algorithm1Result {
    qsim::QuantumState state;        // system register only
    ComplexVector lambdaState;       // normalized parameter-sector restriction
    double parameterSectorMass = 0.0;
    double fidelity = 0.0;           // |<lambda_exact|lambda_sim>|^2
    double totalSuccessProbability = 1.0;
    double maxClockResidual = 0.0;
    std::vector<StageSummary> stages;
};

Algorithm1Result algorithm1PrepareLambda(const fit::FitProblem &problem,
                                         const PipelineSpec &spec,
                                         const qsim::SpectralOperator &op);
Algorithm1Result algorithm1PrepareLambda(const fit::FitProblem &problem,
                                         const PipelineOptions &options);

struct FitReport {
    double exactOverlapSq = 0.0;       // |P_col(F) y|^2
    double simulatedOverlapSq = 0.0;   // from simulated amplitudes
    qsim::SwapTestResult swap;
    double overlapSqEstimate = 0.0;
    double stdError = 0.0;
    double eBound = 0.0;               // 2(1 - sqrt(overlapSqEstimate))
    double eBoundExact = 0.0;          // 2(1 - sqrt(exactOverlapSq))
    double eExactReference = 0.0;      // classical residual, normalized problem
    bool boundIdentityHolds = true;    // 2(1-ov) >= 1-ov^2 on the estimate
    double lambdaFidelity = 0.0;
    double fittedStateFidelity = 0.0;
    std::vector<StageSummary> stages;
    std::uint64_t totalShots = 0;
    std::uint64_t swapSeed = 0;
    /// y has no component in col(F): lambda = 0, no state can be prepared,
    /// and the swap test sees an orthogonal pair.
    bool degenerate = false;
    CostReport cost;
};

FitReport algorithm2FitQuality(const fit::FitProblem &problem,
                               const PipelineOptions &options,
                               const qsim::SwapTestPlan &plan);
FitReport algorithm2FitQuality(const fit::FitProblem &problem,
                               const PipelineSpec &spec,
                               const qsim::SpectralOperator &op,
                               const Algorithm1Result &alg1,
                               const qsim::SwapTestPlan &plan);

/// True when |F^dagger y| vanishes, so the optimum is lambda = 0.
bool dataOrthogonalToColumns(const fit::FitProblem &problem);

/// Fit report for the degenerate case, built without running Algorithm 1.
FitReport degenerateFitReport(const fit::FitProblem &problem, const PipelineSpec &spec,
                              const qsim::SwapTestPlan &plan);

struct LearnBudgets {
    double alpha = 20.0;
    double epsilon = 0.05;
    double settingsConstant = 1.0;
    double shotsConstant = 1.0;
    qsim::SwapTestPlan swap;
};

struct LearnReport {
    Index mPrime = 0;
    std::uint64_t supportShots = 0;
    std::vector<std::uint64_t> histogram;     // parameter-sector counts
    std::vector<Index> recoveredSupport;      // ascending
    fit::NormScale reducedScale;
    tomography::ReconstructedState reconstruction;
    ComplexVector oracleLambda;               // normalized reduced optimum
    double reconstructionFidelity = 0.0;      // vs oracle
    double preparedFidelity = 0.0;            // prepared state vs oracle
    FitReport fitQuality;
    double fullExactResidual = 0.0;
    double reducedExactResidual = 0.0;
    double fullExactEBound = 0.0;
    double reducedExactEBound = 0.0;
    bool qualityDegraded = false;
    std::uint64_t seed = 0;
};

/// Number of computational-basis samples used for support selection:
/// ceil(alpha m' ln(m' + 1)).
std::uint64_t supportShotCount(Index mPrime, double alpha);

/// Indices of the m' largest counts; equal counts go to the smaller index.
std::vector<Index> selectTopIndices(const std::vector<std::uint64_t> &counts,
                                    Index mPrime);

LearnReport algorithm3Learn(const fit::FitProblem &problem, Index mPrime,
                            const PipelineOptions &options,
                            const LearnBudgets &budgets, std::uint64_t seed);

CostQuery costQueryFor(const fit::FitProblem &problem, CostAlgorithm algorithm,
                       double epsilon, double delta, double mPrime);

std::string toString(PipelineVariant v);
PipelineVariant parsePipelineVariant(const std::string &s);

}  // namespace qfit::algorithms
