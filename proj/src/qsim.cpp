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

#include "qfit/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <unsupported/Eigen/FFT>

#include "qfit/error.hpp"
#include "qfit/random.hpp"

namespace qfit::qsim {

namespace {

using std::numbers::pi;

bool isPowerOfTwo(Index t) { return t >= 1 && (t & (t - 1)) == 0; }

Eigen::Map<ComplexMatrix> flagBlock(ComplexVector &amps, const RegisterLayout &l,
                                    Index flag) {
    return {amps.data() + l.offset(flag, 0), l.systemDim, l.clockSize};
}

void requireClock(const QuantumState &state, Index clockSize) {
    if (state.layout().clockSize != clockSize) {
        throw Error(ErrorCode::InvalidArgument,
                    "state clock size " + std::to_string(state.layout().clockSize) +
                        " does not match config clock size " + std::to_string(clockSize));
    }
}

void requireSystem(const QuantumState &state, const SpectralOperator &op) {
    if (state.layout().systemDim != op.dim()) {
        throw Error(ErrorCode::InvalidArgument, "system dimension does not match operator");
    }
}

}  // namespace

QuantumState::QuantumState(RegisterLayout layout, Index maxAmplitudes) : layout_(layout) {
    if (layout.clockSize < 1 || !isPowerOfTwo(layout.clockSize)) {
        throw Error(ErrorCode::InvalidArgument, "clock size must be a power of two");
    }
    if (layout.systemDim < 1) {
        throw Error(ErrorCode::InvalidArgument, "system dimension must be positive");
    }
    if (layout.flagCount < 0 || layout.flagCount > 16) {
        throw Error(ErrorCode::InvalidArgument, "flag count out of range");
    }
    if (layout.amplitudeCount() > maxAmplitudes) {
        throw Error(ErrorCode::DimensionOverflow,
                    "state needs " + std::to_string(layout.amplitudeCount()) +
                        " amplitudes, cap is " + std::to_string(maxAmplitudes));
    }
    amps_ = ComplexVector::Zero(layout.amplitudeCount());
    amps_[0] = 1.0;
}

QuantumState::QuantumState(RegisterLayout layout, ComplexVector amplitudes)
    : QuantumState(layout) {
    if (amplitudes.size() != layout.amplitudeCount()) {
        throw Error(ErrorCode::InvalidArgument, "amplitude count does not match layout");
    }
    amps_ = std::move(amplitudes);
}

QuantumState QuantumState::fromSystem(const ComplexVector &psi, Index clockSize,
                                      int flagCount) {
    QuantumState s(RegisterLayout{clockSize, psi.size(), flagCount});
    s.amps_.setZero();
    s.amps_.segment(0, psi.size()) = psi;
    return s;
}

ComplexVector QuantumState::systemSlice(Index flag, Index tau) const {
    return amps_.segment(layout_.offset(flag, tau), layout_.systemDim);
}

RealVector QuantumState::systemProbabilities() const {
    RealVector p = RealVector::Zero(layout_.systemDim);
    for (Index f = 0; f < layout_.flagStates(); ++f) {
        for (Index t = 0; t < layout_.clockSize; ++t) {
            p += amps_.segment(layout_.offset(f, t), layout_.systemDim).cwiseAbs2();
        }
    }
    return p;
}

RealVector QuantumState::clockProbabilities() const {
    RealVector p = RealVector::Zero(layout_.clockSize);
    for (Index f = 0; f < layout_.flagStates(); ++f) {
        for (Index t = 0; t < layout_.clockSize; ++t) {
            p[t] += amps_.segment(layout_.offset(f, t), layout_.systemDim).squaredNorm();
        }
    }
    return p;
}

SpectralOperator::SpectralOperator(linalg::EmbeddedOperator op)
    : op_(std::move(op)), eig_(linalg::eigHermitian(op_)) {
    const RealVector mags = eig_.eigenvalues.cwiseAbs();
    sigmaMax_ = mags.maxCoeff();
    sigmaMin_ = 0.0;
    for (Index j = 0; j < mags.size(); ++j) {
        if (mags[j] > linalg::kZeroEigenvalueTolerance &&
            (sigmaMin_ == 0.0 || mags[j] < sigmaMin_)) {
            sigmaMin_ = mags[j];
        }
    }
}

void validateConfig(const PhaseEstimationConfig &config, const SpectralOperator &op) {
    if (config.clockSize < 2 || !isPowerOfTwo(config.clockSize)) {
        throw Error(ErrorCode::InvalidArgument, "clock size must be a power of two >= 2");
    }
    if (!std::isfinite(config.t0) || config.t0 < 0.0) {
        throw Error(ErrorCode::InvalidArgument, "t0 must be finite and non-negative");
    }
    if (!std::isfinite(config.c) || !(config.c > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "rotation constant must be positive");
    }
    const double halfClock = static_cast<double>(config.clockSize) / 2.0;
    if (op.sigmaMax() * config.t0 / (2.0 * pi) >= halfClock) {
        throw Error(ErrorCode::Aliasing,
                    "sigmaMax * t0 / 2pi must stay below T/2 for unambiguous decoding");
    }
    constexpr double slack = 1.0 + 1e-12;
    if (config.mode == PeMode::Multiply && op.sigmaMax() > 0.0 &&
        config.c > slack / op.sigmaMax()) {
        throw Error(ErrorCode::RotationBound,
                    "Multiply mode needs C <= 1/sigmaMax or the rotated state is unnormalizable");
    }
    if (config.mode == PeMode::Invert) {
        if (op.sigmaMin() == 0.0) {
            throw Error(ErrorCode::RotationBound, "operator has no nonzero eigenvalue to invert");
        }
        if (config.c > op.sigmaMin() * slack) {
            throw Error(ErrorCode::RotationBound,
                        "Invert mode needs C <= sigmaMin so that C/|E| <= 1 on the spectrum");
        }
    }
}

double defaultRotationConstant(PeMode mode, const SpectralOperator &op) {
    if (mode == PeMode::Multiply) {
        return op.sigmaMax() > 0.0 ? 1.0 / op.sigmaMax() : 1.0;
    }
    return op.sigmaMin();
}

double autoEvolutionTime(Index clockSize, double kappa, double epsilon, double sigmaMax) {
    if (!(epsilon > 0.0) || !(kappa >= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "auto t0 needs kappa >= 1 and eps > 0");
    }
    if (!(sigmaMax > 0.0)) {
        return 2.0 * pi * kappa / epsilon;
    }
    const double maxBins = std::max<double>(1.0, static_cast<double>(clockSize / 4));
    const double bins = std::clamp(std::round(kappa * sigmaMax / epsilon), 1.0, maxBins);
    return 2.0 * pi * bins / sigmaMax;
}

QuantumState prepareDataState(const fit::FitProblem &problem) {
    ComplexVector psi = ComplexVector::Zero(problem.m() + problem.n());
    psi.tail(problem.n()) = problem.yVector / problem.yVector.norm();
    return QuantumState::fromSystem(psi);
}

RealVector prepareSineClock(Index clockSize) {
    if (clockSize < 2 || !isPowerOfTwo(clockSize)) {
        throw Error(ErrorCode::InvalidArgument, "sine clock needs a power of two T >= 2");
    }
    const double t = static_cast<double>(clockSize);
    RealVector w(clockSize);
    for (Index tau = 0; tau < clockSize; ++tau) {
        w[tau] = std::sqrt(2.0 / t) * std::sin(pi * (static_cast<double>(tau) + 0.5) / t);
    }
    return w;
}

RealVector clockWindow(Index clockSize, ClockWindow window) {
    if (window == ClockWindow::Sine) {
        return prepareSineClock(clockSize);
    }
    if (clockSize < 1 || !isPowerOfTwo(clockSize)) {
        throw Error(ErrorCode::InvalidArgument, "clock size must be a power of two");
    }
    return RealVector::Constant(clockSize, 1.0 / std::sqrt(static_cast<double>(clockSize)));
}

QuantumState prepareClock(const QuantumState &state, ClockWindow window) {
    const RegisterLayout &l = state.layout();
    const RealVector w = clockWindow(l.clockSize, window);
    // Householder reflection with u = e_0 - w maps e_0 <-> w.
    RealVector u = -w;
    u[0] += 1.0;
    const double uu = u.squaredNorm();
    QuantumState out = state;
    if (uu == 0.0) {
        return out;
    }
    const ComplexVector uc = u.cast<Complex>();
    for (Index f = 0; f < l.flagStates(); ++f) {
        auto block = flagBlock(out.amplitudes(), l, f);
        const ComplexVector proj = block * uc;
        block.noalias() -= (2.0 / uu) * proj * uc.transpose();
    }
    return out;
}

QuantumState conditionalEvolution(const QuantumState &state, const SpectralOperator &op,
                                  double t0, int sign) {
    requireSystem(state, op);
    const RegisterLayout &l = state.layout();
    const auto &eig = op.eig();
    const double t = static_cast<double>(l.clockSize);
    ComplexMatrix phases(l.systemDim, l.clockSize);
    for (Index tau = 0; tau < l.clockSize; ++tau) {
        for (Index j = 0; j < l.systemDim; ++j) {
            const double angle = -static_cast<double>(sign) * eig.eigenvalues[j] *
                                 static_cast<double>(tau) * t0 / t;
            phases(j, tau) = std::polar(1.0, angle);
        }
    }
    QuantumState out = state;
    for (Index f = 0; f < l.flagStates(); ++f) {
        auto block = flagBlock(out.amplitudes(), l, f);
        ComplexMatrix inEigenbasis = eig.eigenvectors.adjoint() * block;
        inEigenbasis.array() *= phases.array();
        block.noalias() = eig.eigenvectors * inEigenbasis;
    }
    return out;
}

QuantumState qftClock(const QuantumState &state, QftDirection direction) {
    const RegisterLayout &l = state.layout();
    const double rootT = std::sqrt(static_cast<double>(l.clockSize));
    QuantumState out = state;
    Eigen::FFT<double> fft;
    ComplexVector in(l.clockSize);
    ComplexVector res(l.clockSize);
    for (Index f = 0; f < l.flagStates(); ++f) {
        auto block = flagBlock(out.amplitudes(), l, f);
        for (Index s = 0; s < l.systemDim; ++s) {
            in = block.row(s).transpose();
            // Eigen's inv carries exp(+2 pi i k tau / T) / T.
            if (direction == QftDirection::Forward) {
                fft.inv(res, in);
                block.row(s) = (res * rootT).transpose();
            } else {
                fft.fwd(res, in);
                block.row(s) = (res / rootT).transpose();
            }
        }
    }
    return out;
}

double decodeEigenvalue(Index k, Index clockSize, double t0) {
    if (k < 0 || k >= clockSize) {
        throw Error(ErrorCode::InvalidArgument, "clock index out of range");
    }
    if (!(t0 > 0.0)) {
        return 0.0;
    }
    const Index signedK = k < clockSize / 2 ? k : k - clockSize;
    return 2.0 * pi * static_cast<double>(signedK) / t0;
}

double rotationWeight(Index k, const PhaseEstimationConfig &config) {
    const double e = decodeEigenvalue(k, config.clockSize, config.t0);
    if (config.mode == PeMode::Multiply) {
        return std::clamp(config.c * e, -1.0, 1.0);
    }
    const double a = std::abs(e);
    const double c = config.c;
    if (a >= c) {
        return c / e;
    }
    if (a >= c / 2.0) {
        // Filter ramps smoothly from 0 at C/2 to 1 at C.
        return std::copysign(std::sin(pi / 2.0 * (a - c / 2.0) / (c / 2.0)), e);
    }
    return 0.0;
}

QuantumState controlledRotation(const QuantumState &state,
                                const PhaseEstimationConfig &config, int flagQubit) {
    requireClock(state, config.clockSize);
    const RegisterLayout &l = state.layout();
    if (flagQubit < 0 || flagQubit >= l.flagCount) {
        throw Error(ErrorCode::InvalidArgument, "rotation target flag qubit absent");
    }
    const Index bit = Index{1} << flagQubit;
    RealVector weights(l.clockSize);
    for (Index k = 0; k < l.clockSize; ++k) {
        weights[k] = rotationWeight(k, config);
    }
    QuantumState out = state;
    auto &amps = out.amplitudes();
    for (Index f0 = 0; f0 < l.flagStates(); ++f0) {
        if (f0 & bit) {
            continue;
        }
        const Index f1 = f0 | bit;
        for (Index k = 0; k < l.clockSize; ++k) {
            const double w = weights[k];
            const double keep = std::sqrt(std::max(0.0, 1.0 - w * w));
            auto zero = amps.segment(l.offset(f0, k), l.systemDim);
            auto one = amps.segment(l.offset(f1, k), l.systemDim);
            const ComplexVector a0 = zero;
            zero = keep * a0 - w * one;
            one = w * a0 + keep * one;
        }
    }
    return out;
}

QuantumState uncomputeClock(const QuantumState &state, const SpectralOperator &op,
                            const PhaseEstimationConfig &config) {
    requireClock(state, config.clockSize);
    QuantumState s = qftClock(state, QftDirection::Inverse);
    s = conditionalEvolution(s, op, config.t0, -1);
    return prepareClock(s, config.window);
}

Postselected postselectFlag(const QuantumState &state, int value, int flagQubit) {
    const RegisterLayout &l = state.layout();
    if (flagQubit < 0 || flagQubit >= l.flagCount) {
        throw Error(ErrorCode::InvalidArgument, "postselected flag qubit absent");
    }
    const Index bit = Index{1} << flagQubit;
    const Index block = l.clockSize * l.systemDim;
    Postselected r{state, 0.0};
    auto &amps = r.state.amplitudes();
    for (Index f = 0; f < l.flagStates(); ++f) {
        const bool keep = ((f & bit) != 0) == (value != 0);
        auto seg = amps.segment(l.offset(f, 0), block);
        if (keep) {
            r.successProbability += seg.squaredNorm();
        } else {
            seg.setZero();
        }
    }
    if (!(r.successProbability > 1e-300)) {
        throw Error(ErrorCode::EmptyPostselection, "postselected flag branch has zero probability");
    }
    amps /= std::sqrt(r.successProbability);
    return r;
}

Postselected postselectClockZero(const QuantumState &state) {
    const RegisterLayout &l = state.layout();
    RegisterLayout reduced{1, l.systemDim, l.flagCount};
    Postselected r{QuantumState(reduced), 0.0};
    for (Index f = 0; f < l.flagStates(); ++f) {
        const ComplexVector slice = state.systemSlice(f, 0);
        r.successProbability += slice.squaredNorm();
        r.state.amplitudes().segment(reduced.offset(f, 0), l.systemDim) = slice;
    }
    if (!(r.successProbability > 1e-300)) {
        throw Error(ErrorCode::EmptyPostselection, "clock never returns to |0>");
    }
    r.state.amplitudes() /= std::sqrt(r.successProbability);
    return r;
}

StageResult applyHermitianViaPE(const ComplexVector &psi, const SpectralOperator &op,
                                const PhaseEstimationConfig &config) {
    validateConfig(config, op);
    if (psi.size() != op.dim()) {
        throw Error(ErrorCode::InvalidArgument, "input state dimension does not match operator");
    }
    if (std::abs(psi.norm() - 1.0) > 1e-8) {
        throw Error(ErrorCode::InvalidArgument, "input state is not normalized");
    }

    QuantumState s = QuantumState::fromSystem(psi, config.clockSize, 1);
    s = prepareClock(s, config.window);
    s = conditionalEvolution(s, op, config.t0, +1);
    s = qftClock(s, QftDirection::Forward);
    s = controlledRotation(s, config);
    s = uncomputeClock(s, op, config);

    StageResult r;
    Postselected flagged = postselectFlag(s, 1);
    r.flagProbability = flagged.successProbability;
    Postselected reset = postselectClockZero(flagged.state);
    r.clockReturnProbability = reset.successProbability;
    r.clockResidual = std::max(0.0, 1.0 - reset.successProbability);
    r.output = reset.state.systemSlice(1, 0);
    r.output /= r.output.norm();
    r.finalState = std::move(flagged.state);

    const linalg::SpectralFunction f = config.mode == PeMode::Multiply
                                           ? linalg::spectral::linear()
                                           : linalg::spectral::pseudoInverse();
    ComplexVector exact = linalg::applyMatrixFunctionExact(op.eig(), f, psi);
    const double exactNorm = exact.norm();
    if (exactNorm > 0.0) {
        exact /= exactNorm;
        r.oracleFidelity = linalg::fidelity(exact, r.output);
        r.oracleDistance = (r.output - exact).norm();
    } else {
        r.oracleFidelity = 0.0;
        r.oracleDistance = r.output.norm();
    }
    return r;
}

std::uint64_t shotsForDelta(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "delta must lie in (0, 1)");
    }
    return static_cast<std::uint64_t>(std::ceil(1.0 / (delta * delta) - 1e-9));
}

SwapTestResult swapTest(const ComplexVector &a, const ComplexVector &b,
                        const SwapTestPlan &plan) {
    if (a.size() != b.size()) {
        throw Error(ErrorCode::InvalidArgument, "swap test states differ in dimension");
    }
    return swapTestFromOverlap(linalg::fidelity(a, b), plan);
}

SwapTestResult swapTestFromOverlap(double overlapSq, const SwapTestPlan &plan) {
    if (plan.shots == 0) {
        throw Error(ErrorCode::InvalidArgument, "swap test needs at least one shot");
    }
    if (!(overlapSq >= 0.0 && overlapSq <= 1.0 + 1e-12)) {
        throw Error(ErrorCode::InvalidArgument, "overlap must lie in [0, 1]");
    }
    SwapTestResult r;
    r.shots = plan.shots;
    r.exactPOne = std::max(0.0, (1.0 - overlapSq) / 2.0);
    Rng rng(plan.seed);
    for (std::uint64_t i = 0; i < plan.shots; ++i) {
        if (rng.uniform() < r.exactPOne) {
            ++r.onesObserved;
        }
    }
    const double shots = static_cast<double>(plan.shots);
    r.pOneEstimate = static_cast<double>(r.onesObserved) / shots;
    r.overlapSqEstimate = std::clamp(1.0 - 2.0 * r.pOneEstimate, 0.0, 1.0);
    r.stdError = 2.0 * std::sqrt(r.pOneEstimate * (1.0 - r.pOneEstimate) / shots);
    return r;
}

std::vector<std::uint64_t> sampleDistribution(const RealVector &probabilities,
                                              std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) {
        throw Error(ErrorCode::InvalidArgument, "sampling needs at least one shot");
    }
    std::vector<double> cumulative(static_cast<std::size_t>(probabilities.size()));
    double total = 0.0;
    for (Index i = 0; i < probabilities.size(); ++i) {
        total += std::max(0.0, probabilities[i]);
        cumulative[static_cast<std::size_t>(i)] = total;
    }
    if (!(total > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "distribution has no mass");
    }
    std::vector<std::uint64_t> counts(cumulative.size(), 0);
    Rng rng(seed);
    for (std::uint64_t i = 0; i < shots; ++i) {
        const double u = rng.uniform() * total;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        if (it == cumulative.end()) {
            --it;
        }
        ++counts[static_cast<std::size_t>(it - cumulative.begin())];
    }
    return counts;
}

std::vector<std::uint64_t> measureComputational(const QuantumState &state,
                                                std::uint64_t shots, std::uint64_t seed) {
    return sampleDistribution(state.systemProbabilities(), shots, seed);
}

std::string toString(PeMode mode) {
    return mode == PeMode::Multiply ? "multiply" : "invert";
}

std::string toString(ClockWindow window) {
    return window == ClockWindow::Sine ? "sine" : "rectangular";
}

PeMode parsePeMode(const std::string &s) {
    if (s == "multiply") return PeMode::Multiply;
    if (s == "invert") return PeMode::Invert;
    throw Error(ErrorCode::InvalidArgument, "unknown mode '" + s + "'");
}

ClockWindow parseClockWindow(const std::string &s) {
    if (s == "sine") return ClockWindow::Sine;
    if (s == "rectangular" || s == "rect") return ClockWindow::Rectangular;
    throw Error(ErrorCode::InvalidArgument, "unknown clock window '" + s + "'");
}

}  // namespace qfit::qsim
