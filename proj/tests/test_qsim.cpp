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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qfit/error.hpp"
#include "qfit/qsim.hpp"
#include "test_support.hpp"

namespace qfit::qsim {
namespace {

constexpr double kTol = 1e-10;
constexpr double pi = std::numbers::pi;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

SpectralOperator pauliOperator() {
    ComplexMatrix one(1, 1);
    one << 1.0;
    return SpectralOperator(linalg::embed(one));
}

ComplexVector basis(Index n, Index j) {
    ComplexVector v = ComplexVector::Zero(n);
    v[j] = 1.0;
    return v;
}

PhaseEstimationConfig exactConfig(PeMode mode, double c) {
    return {8, 4.0 * pi, c, mode, ClockWindow::Rectangular};
}

template <typename F>
ErrorCode codeOf(F &&f) {
    try {
        f();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "no qfit::Error thrown";
    return ErrorCode::Io;
}

TEST(QuantumState, LayoutAndLimits) {
    const QuantumState s(RegisterLayout{4, 3, 1});
    EXPECT_EQ(s.amplitudes().size(), 24);
    EXPECT_NEAR(s.norm(), 1.0, 0.0);
    EXPECT_EQ(s.at(0, 0, 0), Complex(1.0, 0.0));
    EXPECT_EQ(codeOf([] { QuantumState(RegisterLayout{3, 2, 0}); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(codeOf([] { QuantumState(RegisterLayout{1024, 1024, 1}, 1 << 20); }),
              ErrorCode::DimensionOverflow);
}

TEST(PrepareDataState, Placement) {
    ComplexMatrix f(2, 1);
    f << 1.0, 1.0;
    ComplexVector y(2);
    y << 1.0, 0.0;
    auto s = prepareDataState(qfit::testing::problemFrom(f, y));
    EXPECT_LE((s.systemSlice() - basis(3, 1)).norm(), kTol);
    y << 0.0, 1.0;
    s = prepareDataState(qfit::testing::problemFrom(f, y));
    EXPECT_LE((s.systemSlice() - basis(3, 2)).norm(), kTol);

    ComplexVector yy(2);
    yy << kInvSqrt2, kInvSqrt2;
    s = prepareDataState(qfit::testing::problemFrom(ComplexMatrix::Identity(2, 2), yy));
    ComplexVector expected(4);
    expected << 0.0, 0.0, kInvSqrt2, kInvSqrt2;
    EXPECT_LE((s.systemSlice() - expected).norm(), kTol);
}

TEST(SineClock, ClosedForm) {
    const RealVector t2 = prepareSineClock(2);
    EXPECT_NEAR(t2[0], 0.70711, 1e-5);
    EXPECT_NEAR(t2[1], 0.70711, 1e-5);
    const RealVector t4 = prepareSineClock(4);
    for (Index tau = 0; tau < 4; ++tau) {
        EXPECT_NEAR(t4[tau], std::sqrt(0.5) * std::sin(pi * (2.0 * tau + 1.0) / 8.0), 1e-15);
    }
    for (Index t = 2; t <= 4096; t *= 2) {
        EXPECT_NEAR(prepareSineClock(t).squaredNorm(), 1.0, 1e-12);
    }
    EXPECT_THROW(prepareSineClock(1), Error);
    EXPECT_THROW(prepareSineClock(6), Error);
}

TEST(PrepareClock, MapsZeroToWindowAndIsInvolution) {
    for (auto window : {ClockWindow::Sine, ClockWindow::Rectangular}) {
        const QuantumState s0 = QuantumState::fromSystem(basis(1, 0), 16, 0);
        const QuantumState s1 = prepareClock(s0, window);
        EXPECT_LE((s1.amplitudes().real() - clockWindow(16, window)).norm(), 1e-12);
        EXPECT_LE((prepareClock(s1, window).amplitudes() - s0.amplitudes()).norm(), 1e-12);
    }
}

TEST(ConditionalEvolution, Examples) {
    const auto op = pauliOperator();
    QuantumState s = prepareClock(
        QuantumState::fromSystem(qfit::testing::randomUnitVector(2, 1), 8, 0),
        ClockWindow::Sine);
    EXPECT_LE((conditionalEvolution(s, op, 0.0).amplitudes() - s.amplitudes()).norm(), kTol);

    SpectralOperator zero(linalg::embed(ComplexMatrix::Zero(1, 1)));
    EXPECT_LE((conditionalEvolution(s, zero, 3.7).amplitudes() - s.amplitudes()).norm(), kTol);

    ComplexVector plus(2);
    plus << kInvSqrt2, kInvSqrt2;
    const double t0 = 1.3;
    const QuantumState u = prepareClock(QuantumState::fromSystem(plus, 8, 0), ClockWindow::Sine);
    const QuantumState v = conditionalEvolution(u, op, t0);
    for (Index tau = 0; tau < 8; ++tau) {
        const Complex phase = std::polar(1.0, -static_cast<double>(tau) * t0 / 8.0);
        EXPECT_LE((v.systemSlice(0, tau) - phase * u.systemSlice(0, tau)).norm(), kTol);
    }
}

TEST(Qft, Examples) {
    const QuantumState uniform =
        prepareClock(QuantumState::fromSystem(basis(1, 0), 4, 0), ClockWindow::Rectangular);
    const QuantumState k = qftClock(uniform, QftDirection::Forward);
    EXPECT_NEAR(std::abs(k.at(0, 0, 0)), 1.0, kTol);
    EXPECT_NEAR(k.clockProbabilities()[0], 1.0, kTol);

    const QuantumState delta = QuantumState::fromSystem(basis(1, 0), 4, 0);
    const RealVector p = qftClock(delta, QftDirection::Forward).clockProbabilities();
    for (Index j = 0; j < 4; ++j) {
        EXPECT_NEAR(p[j], 0.25, kTol);
    }

    const QuantumState r(RegisterLayout{16, 3, 1},
                         qfit::testing::randomUnitVector(96, 5));
    const QuantumState back = qftClock(qftClock(r, QftDirection::Forward), QftDirection::Inverse);
    EXPECT_LE((back.amplitudes() - r.amplitudes()).norm(), 1e-12);
}

TEST(Qft, KernelSign) {
    // Forward kernel exp(+2 pi i k tau / T) / sqrt(T).
    QuantumState s(RegisterLayout{8, 1, 0});
    s.amplitudes().setZero();
    s.amplitudes()[1] = 1.0;
    const QuantumState k = qftClock(s, QftDirection::Forward);
    for (Index j = 0; j < 8; ++j) {
        const Complex expected = std::polar(1.0 / std::sqrt(8.0), 2.0 * pi * j / 8.0);
        EXPECT_LE(std::abs(k.at(0, j, 0) - expected), 1e-12);
    }
}

TEST(DecodeEigenvalue, Examples) {
    EXPECT_NEAR(decodeEigenvalue(2, 8, 4.0 * pi), 1.0, 1e-15);
    EXPECT_NEAR(decodeEigenvalue(6, 8, 4.0 * pi), -1.0, 1e-15);
    EXPECT_EQ(decodeEigenvalue(0, 8, 4.0 * pi), 0.0);
    EXPECT_EQ(decodeEigenvalue(0, 1024, 12.0), 0.0);
    EXPECT_THROW(decodeEigenvalue(8, 8, 1.0), Error);
}

TEST(ControlledRotation, Examples) {
    QuantumState s(RegisterLayout{8, 1, 1});
    s.amplitudes().setZero();
    s.amplitudes()[2] = 1.0;  // clock k = 2 decodes to +1
    const QuantumState r = controlledRotation(s, exactConfig(PeMode::Multiply, 0.5));
    EXPECT_NEAR(r.at(0, 2, 0).real(), 0.86603, 1e-5);
    EXPECT_NEAR(r.at(1, 2, 0).real(), 0.5, 1e-12);

    PhaseEstimationConfig inv{8, 8.0 * pi, 0.25, PeMode::Invert, ClockWindow::Rectangular};
    // k = 2 decodes to 0.5 at t0 = 8 pi.
    EXPECT_NEAR(rotationWeight(2, inv), 0.5, 1e-12);
    EXPECT_EQ(rotationWeight(0, inv), 0.0);
    EXPECT_NEAR(rotationWeight(6, inv), -0.5, 1e-12);
}

TEST(ControlledRotation, InvertFilterIsContinuous) {
    PhaseEstimationConfig c{1024, 2.0 * pi * 100.0, 0.1, PeMode::Invert, ClockWindow::Sine};
    double previous = 0.0;
    for (Index k = 0; k < 30; ++k) {
        const double w = rotationWeight(k, c);
        EXPECT_GE(w, 0.0);
        EXPECT_LE(w, 1.0 + 1e-15);
        EXPECT_LE(std::abs(w - previous), 0.35);
        previous = w;
    }
}

TEST(Postselection, Examples) {
    QuantumState s(RegisterLayout{1, 2, 1});
    s.amplitudes() << 0.0, 0.0, kInvSqrt2, kInvSqrt2;
    const auto all = postselectFlag(s, 1);
    EXPECT_NEAR(all.successProbability, 1.0, kTol);
    EXPECT_LE((all.state.amplitudes() - s.amplitudes()).norm(), kTol);

    const double a = std::sqrt(0.75) * kInvSqrt2;
    s.amplitudes() << a, a, 0.5 * kInvSqrt2, 0.5 * kInvSqrt2;
    EXPECT_NEAR(postselectFlag(s, 1).successProbability, 0.25, kTol);

    QuantumState none(RegisterLayout{1, 2, 1});
    EXPECT_EQ(codeOf([&] { postselectFlag(none, 1); }), ErrorCode::EmptyPostselection);
}

TEST(ApplyHermitianViaPE, ExactExamples) {
    const auto op = pauliOperator();
    const auto mul = applyHermitianViaPE(basis(2, 1), op, exactConfig(PeMode::Multiply, 1.0));
    EXPECT_LE((mul.output - basis(2, 0)).norm(), 1e-10);
    EXPECT_NEAR(mul.flagProbability, 1.0, 1e-10);
    EXPECT_LE(mul.clockResidual, 1e-10);

    const auto half = applyHermitianViaPE(basis(2, 1), op, exactConfig(PeMode::Multiply, 0.5));
    EXPECT_NEAR(half.flagProbability, 0.25, 1e-10);

    const auto inv = applyHermitianViaPE(basis(2, 0), op, exactConfig(PeMode::Invert, 1.0));
    EXPECT_LE((inv.output - basis(2, 1)).norm(), 1e-10);
    EXPECT_NEAR(inv.oracleFidelity, 1.0, 1e-10);
}

TEST(ApplyHermitianViaPE, EigenvectorInput) {
    ComplexMatrix f(2, 1);
    f << kInvSqrt2, kInvSqrt2;
    const SpectralOperator op(linalg::embed(f));
    const ComplexVector mu = op.eig().eigenvectors.col(2);  // eigenvalue +1
    const auto r = applyHermitianViaPE(mu, op, exactConfig(PeMode::Multiply, 0.75));
    EXPECT_NEAR(linalg::fidelity(r.output, mu), 1.0, 1e-10);
    EXPECT_NEAR(r.flagProbability, 0.75 * 0.75, 1e-10);
}

TEST(ApplyHermitianViaPE, ConfigErrors) {
    const auto op = pauliOperator();
    const ComplexVector e0 = basis(2, 0);
    EXPECT_EQ(codeOf([&] {
                  applyHermitianViaPE(e0, op, {8, 9.0 * pi, 1.0, PeMode::Multiply});
              }),
              ErrorCode::Aliasing);
    EXPECT_EQ(codeOf([&] { applyHermitianViaPE(e0, op, exactConfig(PeMode::Multiply, 1.5)); }),
              ErrorCode::RotationBound);
    EXPECT_EQ(codeOf([&] { applyHermitianViaPE(e0, op, exactConfig(PeMode::Invert, 1.5)); }),
              ErrorCode::RotationBound);
    EXPECT_EQ(codeOf([&] {
                  applyHermitianViaPE(ComplexVector(2 * e0), op, exactConfig(PeMode::Invert, 1.0));
              }),
              ErrorCode::InvalidArgument);
    EXPECT_EQ(codeOf([&] { applyHermitianViaPE(e0, op, {6, 1.0, 1.0, PeMode::Multiply}); }),
              ErrorCode::InvalidArgument);
    SpectralOperator zero(linalg::embed(ComplexMatrix::Zero(1, 1)));
    EXPECT_EQ(codeOf([&] { applyHermitianViaPE(e0, zero, exactConfig(PeMode::Invert, 1.0)); }),
              ErrorCode::RotationBound);
}

TEST(UncomputeClock, CommensurateDisentanglesAndZeroTimeRestores) {
    ComplexMatrix f(2, 1);
    f << kInvSqrt2, kInvSqrt2;
    const SpectralOperator op(linalg::embed(f));
    const ComplexVector psi = qfit::testing::randomUnitVector(3, 77);
    const auto r = applyHermitianViaPE(psi, op, exactConfig(PeMode::Multiply, 1.0));
    EXPECT_LE(r.clockResidual, 1e-10);

    const PhaseEstimationConfig idle{16, 0.0, 1.0, PeMode::Multiply, ClockWindow::Sine};
    QuantumState s = prepareClock(QuantumState::fromSystem(psi, 16, 1), ClockWindow::Sine);
    s = qftClock(conditionalEvolution(s, op, 0.0), QftDirection::Forward);
    s = uncomputeClock(s, op, idle);
    EXPECT_NEAR(s.clockProbabilities()[0], 1.0, 1e-10);
}

TEST(UncomputeClock, ResidualShrinksWithClockSize) {
    const auto p = fit::generateProblem({5, 3, fit::ProblemKind::Random}, 31);
    const SpectralOperator op(linalg::embed(p.designMatrix));
    const ComplexVector psi = prepareDataState(p).systemSlice();
    double previous = 1.0;
    for (Index t = 64; t <= 1024; t *= 2) {
        const double t0 = autoEvolutionTime(t, 1e9, 1e-3, op.sigmaMax());
        const auto r = applyHermitianViaPE(psi, op, {t, t0, 1.0, PeMode::Multiply, ClockWindow::Sine});
        EXPECT_LT(r.clockResidual, previous);
        previous = r.clockResidual;
    }
}

TEST(Unitarity, AllUnitaryStepsPreserveNorm) {
    const auto p = fit::generateProblem({4, 2, fit::ProblemKind::Random}, 3);
    const SpectralOperator op(linalg::embed(p.designMatrix));
    const PhaseEstimationConfig c{32, 2.0 * pi * 5.3, 0.9, PeMode::Multiply, ClockWindow::Sine};
    QuantumState s(RegisterLayout{32, 6, 1}, qfit::testing::randomUnitVector(384, 9));
    for (int step = 0; step < 6; ++step) {
        switch (step) {
        case 0: s = prepareClock(s, ClockWindow::Sine); break;
        case 1: s = conditionalEvolution(s, op, c.t0); break;
        case 2: s = qftClock(s, QftDirection::Forward); break;
        case 3: s = controlledRotation(s, c); break;
        case 4: s = uncomputeClock(s, op, c); break;
        default: s = prepareClock(s, ClockWindow::Rectangular); break;
        }
        EXPECT_NEAR(s.norm(), 1.0, 1e-10) << "step " << step;
    }
}

TEST(PhaseEstimation, CommensurateEigenstateGivesDeltaAtBin) {
    ComplexMatrix f(2, 1);
    f << kInvSqrt2, kInvSqrt2;
    const SpectralOperator op(linalg::embed(f));
    const double t0 = 4.0 * pi;
    for (Index j = 0; j < 3; ++j) {
        QuantumState s = QuantumState::fromSystem(op.eig().eigenvectors.col(j), 8, 0);
        s = prepareClock(s, ClockWindow::Rectangular);
        s = qftClock(conditionalEvolution(s, op, t0), QftDirection::Forward);
        const RealVector p = s.clockProbabilities();
        Index k = 0;
        EXPECT_NEAR(p.maxCoeff(&k), 1.0, 1e-10);
        EXPECT_NEAR(decodeEigenvalue(k, 8, t0), op.eig().eigenvalues[j], 1e-12);
    }
}

TEST(PhaseEstimation, GenericModalBinWithinResolution) {
    const auto p = fit::generateProblem({4, 3, fit::ProblemKind::Random}, 12);
    const SpectralOperator op(linalg::embed(p.designMatrix));
    const double t0 = 2.0 * pi * 37.3;
    for (Index j = 0; j < op.dim(); ++j) {
        QuantumState s = QuantumState::fromSystem(op.eig().eigenvectors.col(j), 256, 0);
        s = prepareClock(s, ClockWindow::Sine);
        s = qftClock(conditionalEvolution(s, op, t0), QftDirection::Forward);
        Index k = 0;
        s.clockProbabilities().maxCoeff(&k);
        EXPECT_LE(std::abs(decodeEigenvalue(k, 256, t0) - op.eig().eigenvalues[j]), 2.0 * pi / t0);
    }
}

TEST(AutoEvolutionTime, PlacesSigmaMaxOnBinInsideGuardBand) {
    const double t0 = autoEvolutionTime(1024, 4.0, 0.01, 0.8);
    const double bins = 0.8 * t0 / (2.0 * pi);
    EXPECT_NEAR(bins, std::round(bins), 1e-9);
    EXPECT_LE(bins, 256.0);
    EXPECT_NEAR(autoEvolutionTime(1024, 1.0, 0.1, 1.0), 2.0 * pi * 10.0, 1e-9);
    EXPECT_THROW(autoEvolutionTime(1024, 0.5, 0.1, 1.0), Error);
}

TEST(SwapTest, Examples) {
    const ComplexVector a = basis(2, 0);
    const auto same = swapTest(a, a, {1000, 0.1, 1});
    EXPECT_EQ(same.onesObserved, 0u);
    EXPECT_NEAR(same.exactPOne, 0.0, 1e-15);
    EXPECT_NEAR(same.overlapSqEstimate, 1.0, 1e-15);

    EXPECT_NEAR(swapTest(a, basis(2, 1), {10, 0.1, 1}).exactPOne, 0.5, 1e-15);
    ComplexVector h(2);
    h << kInvSqrt2, kInvSqrt2;
    EXPECT_NEAR(swapTest(a, h, {10, 0.1, 1}).exactPOne, 0.25, 1e-15);
    EXPECT_THROW(swapTest(a, basis(3, 0), {10, 0.1, 1}), Error);
    EXPECT_THROW(swapTest(a, a, {0, 0.1, 1}), Error);
}

TEST(SwapTest, UnbiasedAndConcentrates) {
    const ComplexVector a = qfit::testing::randomUnitVector(4, 1);
    const ComplexVector b = qfit::testing::randomUnitVector(4, 2);
    const double exact = std::norm(a.dot(b));
    double mean = 0.0;
    int within = 0;
    constexpr int runs = 200;
    for (int r = 0; r < runs; ++r) {
        const auto res = swapTest(a, b, {10000, 0.01, static_cast<std::uint64_t>(r)});
        mean += (1.0 - 2.0 * res.pOneEstimate) / runs;
        within += std::abs(res.overlapSqEstimate - exact) <= 0.03;
    }
    EXPECT_NEAR(mean, exact, 0.003);
    EXPECT_GE(within, 190);
}

TEST(SwapTest, StdErrorScalesAsInverseRootShots) {
    ComplexVector h(2);
    h << kInvSqrt2, kInvSqrt2;
    const auto small = swapTest(basis(2, 0), h, {2500, 0.02, 3});
    const auto large = swapTest(basis(2, 0), h, {40000, 0.005, 3});
    EXPECT_NEAR(small.stdError / large.stdError, 4.0, 0.4);
    EXPECT_EQ(shotsForDelta(0.01), 10000u);
    EXPECT_EQ(shotsForDelta(0.1), 100u);
    EXPECT_THROW(shotsForDelta(0.0), Error);
}

TEST(MeasureComputational, Examples) {
    const auto hist = measureComputational(QuantumState::fromSystem(basis(5, 3)), 100, 1);
    EXPECT_EQ(hist[3], 100u);

    ComplexVector u(2);
    u << kInvSqrt2, kInvSqrt2;
    const auto h = measureComputational(QuantumState::fromSystem(u), 10000, 2);
    EXPECT_LE(std::abs(static_cast<double>(h[0]) - 5000.0), 5.0 * 50.0);
    EXPECT_EQ(h[0] + h[1], 10000u);
}

TEST(MeasureComputational, PlantedSupportDominates) {
    fit::GeneratorSpec spec{16, 8, fit::ProblemKind::Random};
    spec.plantedSupport = {2, 5};
    spec.plantedMass = 0.98;
    const auto p = fit::generateProblem(spec, 7);
    ComplexVector lambda = ComplexVector::Zero(24);
    lambda.head(8) = fit::classicalFit(p).lambda.normalized();
    const auto h = measureComputational(QuantumState::fromSystem(lambda), 1000, 4);
    for (Index j = 0; j < 8; ++j) {
        if (j != 2 && j != 5) {
            EXPECT_LT(h[static_cast<std::size_t>(j)], h[2]);
            EXPECT_LT(h[static_cast<std::size_t>(j)], h[5]);
        }
    }
}

TEST(Names, RoundTrip) {
    EXPECT_EQ(parsePeMode(toString(PeMode::Invert)), PeMode::Invert);
    EXPECT_EQ(parseClockWindow(toString(ClockWindow::Rectangular)), ClockWindow::Rectangular);
    EXPECT_THROW(parseClockWindow("hann"), Error);
}

}  // namespace
}  // namespace qfit::qsim
