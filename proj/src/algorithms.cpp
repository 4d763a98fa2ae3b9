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

#include "qfit/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qfit/error.hpp"
#include "qfit/linalg.hpp"
#include "qfit/random.hpp"

namespace qfit::algorithms {

using qsim::PeMode;

qsim::PhaseEstimationConfig resolveStage(PeMode mode, const PipelineOptions &options,
                                         const qsim::SpectralOperator &op) {
    qsim::PhaseEstimationConfig cfg;
    cfg.mode = mode;
    cfg.clockSize = options.clockSize;
    cfg.window = options.window;
    if (options.t0) {
        cfg.t0 = *options.t0;
    } else {
        const double kappa = op.sigmaMin() > 0.0 ? op.sigmaMax() / op.sigmaMin() : 1.0;
        cfg.t0 = qsim::autoEvolutionTime(options.clockSize, kappa, options.epsilon,
                                         op.sigmaMax());
    }
    cfg.c = options.c ? *options.c : qsim::defaultRotationConstant(mode, op);
    return cfg;
}

PipelineSpec PipelineSpec::resolve(const PipelineOptions &options,
                                   const qsim::SpectralOperator &op) {
    PipelineSpec spec;
    spec.variant = options.variant;
    spec.epsilon = options.epsilon;
    if (options.variant == PipelineVariant::ThreeStage) {
        for (PeMode mode : {PeMode::Multiply, PeMode::Invert, PeMode::Invert}) {
            spec.stages.push_back(resolveStage(mode, options, op));
        }
    } else {
        spec.stages.push_back(resolveStage(PeMode::Invert, options, op));
    }
    spec.fittingStage = resolveStage(PeMode::Multiply, options, op);
    return spec;
}

void PipelineSpec::validate(const qsim::SpectralOperator &op) const {
    const std::vector<PeMode> expected =
        variant == PipelineVariant::ThreeStage
            ? std::vector<PeMode>{PeMode::Multiply, PeMode::Invert, PeMode::Invert}
            : std::vector<PeMode>{PeMode::Invert};
    if (stages.size() != expected.size()) {
        throw Error(ErrorCode::InvalidArgument, "pipeline stage count does not match variant");
    }
    for (std::size_t i = 0; i < stages.size(); ++i) {
        if (stages[i].mode != expected[i]) {
            throw Error(ErrorCode::InvalidArgument, "pipeline stage modes do not match variant");
        }
        qsim::validateConfig(stages[i], op);
    }
    if (fittingStage.mode != PeMode::Multiply) {
        throw Error(ErrorCode::InvalidArgument, "fitting stage must multiply");
    }
    qsim::validateConfig(fittingStage, op);
}

namespace {

StageSummary summarize(const qsim::PhaseEstimationConfig &cfg, const qsim::StageResult &r) {
    return {cfg.mode, cfg.t0, cfg.c, r.flagProbability, r.clockReturnProbability,
            r.clockResidual, r.oracleFidelity};
}

/// |P_col(F) y|^2 for unit y.
double projectedMass(const fit::FitProblem &problem) {
    const fit::FitSolution s = fit::classicalFit(problem);
    return s.fittedVector.squaredNorm() / problem.yVector.squaredNorm();
}

}  // namespace

Algorithm1Result algorithm1PrepareLambda(const fit::FitProblem &problem,
                                         const PipelineSpec &spec,
                                         const qsim::SpectralOperator &op) {
    if (op.op().paramDim != problem.m() || op.op().dataDim != problem.n()) {
        throw Error(ErrorCode::InvalidArgument, "operator does not belong to this problem");
    }
    spec.validate(op);
    if (dataOrthogonalToColumns(problem)) {
        throw Error(ErrorCode::EmptyPostselection,
                    "y is orthogonal to the column space of F, so lambda = 0");
    }

    Algorithm1Result r;
    ComplexVector psi = qsim::prepareDataState(problem).systemSlice();
    for (const auto &cfg : spec.stages) {
        const qsim::StageResult stage = qsim::applyHermitianViaPE(psi, op, cfg);
        psi = stage.output;
        r.stages.push_back(summarize(cfg, stage));
        r.totalSuccessProbability *= stage.flagProbability * stage.clockReturnProbability;
        r.maxClockResidual = std::max(r.maxClockResidual, stage.clockResidual);
    }
    const ComplexVector param = psi.head(problem.m());
    r.parameterSectorMass = param.squaredNorm();
    r.lambdaState = param / param.norm();
    r.fidelity = linalg::fidelity(fit::classicalFit(problem).lambda, r.lambdaState);
    r.state = qsim::QuantumState::fromSystem(psi);
    return r;
}

Algorithm1Result algorithm1PrepareLambda(const fit::FitProblem &problem,
                                         const PipelineOptions &options) {
    const qsim::SpectralOperator op(linalg::embed(problem.designMatrix));
    return algorithm1PrepareLambda(problem, PipelineSpec::resolve(options, op), op);
}

CostQuery costQueryFor(const fit::FitProblem &problem, CostAlgorithm algorithm,
                       double epsilon, double delta, double mPrime) {
    CostQuery q;
    q.n = static_cast<double>(problem.n());
    q.s = static_cast<double>(
        std::max<Index>(1, linalg::sparsityProfile(problem.designMatrix, 1e-12).s));
    q.kappa = linalg::conditionEstimate(problem.designMatrix).kappa;
    q.epsilon = epsilon;
    q.delta = delta;
    q.mPrime = mPrime;
    q.algorithm = algorithm;
    return q;
}

FitReport algorithm2FitQuality(const fit::FitProblem &problem, const PipelineSpec &spec,
                               const qsim::SpectralOperator &op,
                               const Algorithm1Result &alg1, const qsim::SwapTestPlan &plan) {
    if (plan.shots == 0) {
        throw Error(ErrorCode::InvalidArgument, "swap test needs at least one shot");
    }
    spec.validate(op);
    FitReport r;
    r.stages = alg1.stages;
    r.lambdaFidelity = alg1.fidelity;

    const ComplexVector lambdaSystem = alg1.state.systemSlice();
    const qsim::StageResult fitting =
        qsim::applyHermitianViaPE(lambdaSystem, op, spec.fittingStage);
    r.stages.push_back(summarize(spec.fittingStage, fitting));
    const ComplexVector &fitted = fitting.output;

    const ComplexVector yState = qsim::prepareDataState(problem).systemSlice();
    r.simulatedOverlapSq = linalg::fidelity(fitted, yState);

    const fit::FitSolution exact = fit::classicalFit(problem);
    ComplexVector exactFitted = ComplexVector::Zero(op.dim());
    exactFitted.tail(problem.n()) = exact.fittedVector;
    r.fittedStateFidelity = linalg::fidelity(exactFitted, fitted);
    r.exactOverlapSq = projectedMass(problem);
    r.eExactReference = exact.residualEnergy / problem.yVector.squaredNorm();

    r.swap = qsim::swapTest(fitted, yState, plan);
    r.overlapSqEstimate = r.swap.overlapSqEstimate;
    r.stdError = r.swap.stdError;
    const double ov = std::sqrt(r.overlapSqEstimate);
    r.eBound = 2.0 * (1.0 - ov);
    r.eBoundExact = 2.0 * (1.0 - std::sqrt(r.exactOverlapSq));
    r.boundIdentityHolds = r.eBound >= (1.0 - r.overlapSqEstimate) - 1e-15;
    r.totalShots = plan.shots;
    r.swapSeed = plan.seed;
    r.cost = costModel(costQueryFor(problem, CostAlgorithm::Alg2,
                                    std::min(spec.epsilon, 1.0), plan.delta, 1.0));
    return r;
}

bool dataOrthogonalToColumns(const fit::FitProblem &problem) {
    return (problem.designMatrix.adjoint() * problem.yVector).norm() <=
           linalg::kZeroEigenvalueTolerance * problem.yVector.norm();
}

FitReport degenerateFitReport(const fit::FitProblem &problem, const PipelineSpec &spec,
                              const qsim::SwapTestPlan &plan) {
    FitReport r;
    r.degenerate = true;
    r.exactOverlapSq = 0.0;
    r.simulatedOverlapSq = 0.0;
    r.eExactReference = 1.0;
    r.swap = qsim::swapTestFromOverlap(0.0, plan);
    r.overlapSqEstimate = r.swap.overlapSqEstimate;
    r.stdError = r.swap.stdError;
    r.eBound = 2.0 * (1.0 - std::sqrt(r.overlapSqEstimate));
    r.eBoundExact = 2.0;
    r.boundIdentityHolds = r.eBound >= (1.0 - r.overlapSqEstimate) - 1e-15;
    r.totalShots = plan.shots;
    r.swapSeed = plan.seed;
    r.cost = costModel(costQueryFor(problem, CostAlgorithm::Alg2,
                                    std::min(spec.epsilon, 1.0), plan.delta, 1.0));
    return r;
}

FitReport algorithm2FitQuality(const fit::FitProblem &problem, const PipelineOptions &options,
                               const qsim::SwapTestPlan &plan) {
    const qsim::SpectralOperator op(linalg::embed(problem.designMatrix));
    const PipelineSpec spec = PipelineSpec::resolve(options, op);
    if (dataOrthogonalToColumns(problem)) {
        return degenerateFitReport(problem, spec, plan);
    }
    const Algorithm1Result alg1 = algorithm1PrepareLambda(problem, spec, op);
    return algorithm2FitQuality(problem, spec, op, alg1, plan);
}

std::uint64_t supportShotCount(Index mPrime, double alpha) {
    if (mPrime < 1 || !(alpha > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "support sampling needs M' >= 1, alpha > 0");
    }
    const double m = static_cast<double>(mPrime);
    return static_cast<std::uint64_t>(std::max(1.0, std::ceil(alpha * m * std::log(m + 1.0) - 1e-9)));
}

std::vector<Index> selectTopIndices(const std::vector<std::uint64_t> &counts, Index mPrime) {
    if (mPrime < 1 || static_cast<std::size_t>(mPrime) > counts.size()) {
        throw Error(ErrorCode::InvalidArgument, "M' must lie in [1, M]");
    }
    std::vector<Index> order(counts.size());
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
        return counts[static_cast<std::size_t>(a)] > counts[static_cast<std::size_t>(b)];
    });
    order.resize(static_cast<std::size_t>(mPrime));
    std::sort(order.begin(), order.end());
    return order;
}

LearnReport algorithm3Learn(const fit::FitProblem &problem, Index mPrime,
                            const PipelineOptions &options, const LearnBudgets &budgets,
                            std::uint64_t seed) {
    if (mPrime < 1 || mPrime > problem.m()) {
        throw Error(ErrorCode::InvalidArgument, "M' must lie in [1, M]");
    }
    LearnReport r;
    r.mPrime = mPrime;
    r.seed = seed;

    const qsim::SpectralOperator op(linalg::embed(problem.designMatrix));
    const PipelineSpec spec = PipelineSpec::resolve(options, op);
    const Algorithm1Result full = algorithm1PrepareLambda(problem, spec, op);

    r.supportShots = supportShotCount(mPrime, budgets.alpha);
    const std::vector<std::uint64_t> counts = qsim::measureComputational(
        full.state, r.supportShots, deriveSeed(seed, SeedStream::SupportSampling));
    r.histogram.assign(counts.begin(), counts.begin() + problem.m());
    r.recoveredSupport = selectTopIndices(r.histogram, mPrime);

    fit::FitProblem reduced;
    try {
        reduced = fit::restrictColumns(problem, r.recoveredSupport);
    } catch (const Error &e) {
        throw Error(ErrorCode::Singular,
                    std::string("reduced problem is degenerate: ") + e.what());
    }
    r.reducedScale = reduced.normScale;

    const qsim::SpectralOperator reducedOp(linalg::embed(reduced.designMatrix));
    const PipelineSpec reducedSpec = PipelineSpec::resolve(options, reducedOp);
    const Algorithm1Result prepared = algorithm1PrepareLambda(reduced, reducedSpec, reducedOp);
    r.preparedFidelity = prepared.fidelity;

    const tomography::TomographyBudget budget = tomography::planBudget(
        mPrime, budgets.epsilon, budgets.settingsConstant, budgets.shotsConstant);
    // The simulator re-prepares the same state exactly on every request.
    const tomography::StateSource source = [&prepared] { return prepared.lambdaState; };
    r.reconstruction = tomography::reconstructPureState(
        source, budget, deriveSeed(seed, SeedStream::Tomography));

    const ComplexVector oracle = fit::classicalFit(reduced).lambda;
    r.oracleLambda = tomography::canonicalizePhase(oracle / oracle.norm());
    r.reconstructionFidelity = linalg::fidelity(r.oracleLambda, r.reconstruction.amplitudes);
    r.reconstruction.fidelityVsOracle = r.reconstructionFidelity;

    qsim::SwapTestPlan plan = budgets.swap;
    plan.seed = deriveSeed(seed, SeedStream::SwapTest);
    r.fitQuality = algorithm2FitQuality(reduced, reducedSpec, reducedOp, prepared, plan);

    r.fullExactResidual = 1.0 - projectedMass(problem);
    r.reducedExactResidual = 1.0 - projectedMass(reduced);
    r.fullExactEBound = 2.0 * (1.0 - std::sqrt(1.0 - r.fullExactResidual));
    r.reducedExactEBound = 2.0 * (1.0 - std::sqrt(1.0 - r.reducedExactResidual));
    r.qualityDegraded = r.reducedExactResidual > r.fullExactResidual + 1e-9;
    return r;
}

std::string toString(PipelineVariant v) {
    return v == PipelineVariant::ThreeStage ? "three-stage" : "fused";
}

PipelineVariant parsePipelineVariant(const std::string &s) {
    if (s == "three-stage" || s == "threeStage") return PipelineVariant::ThreeStage;
    if (s == "fused" || s == "fusedInverse") return PipelineVariant::FusedInverse;
    throw Error(ErrorCode::InvalidArgument, "unknown pipeline variant '" + s + "'");
}

}  // namespace qfit::algorithms
