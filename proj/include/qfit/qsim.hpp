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
#include <vector>

#include "qfit/fit_problem.hpp"
#include "qfit/linalg.hpp"
#include "qfit/types.hpp"

namespace qfit::qsim {

/// Default cap on the total amplitude count of a simulated state.
inline constexpr Index kDefaultMaxAmplitudes = Index{1} << 24;

/// Registers are ordered flag (slowest), clock, system (fastest):
/// index = (flag * T + tau) * D + s. clockSize 1 means "no clock".
struct RegisterLayout {
    Index clockSize = 1;
    Index systemDim = 1;
    int flagCount = 0;

    [[nodiscard]] Index flagStates() const noexcept { return Index{1} << flagCount; }
    [[nodiscard]] Index amplitudeCount() const noexcept {
        return clockSize * systemDim * flagStates();
    }
    [[nodiscard]] Index offset(Index flag, Index tau) const noexcept {
        return (flag * clockSize + tau) * systemDim;
    }
    bool operator==(const RegisterLayout &) const = default;
};

class QuantumState {
  public:
    QuantumState() = default;
    /// All registers in |0>.
    explicit QuantumState(RegisterLayout layout,
                          Index maxAmplitudes = kDefaultMaxAmplitudes);
    QuantumState(RegisterLayout layout, ComplexVector amplitudes);

    /// |tau=0> (x) psi (x) |flags=0>.
    static QuantumState fromSystem(const ComplexVector &psi, Index clockSize = 1,
                                   int flagCount = 0);

    [[nodiscard]] const RegisterLayout &layout() const noexcept { return layout_; }
    [[nodiscard]] const ComplexVector &amplitudes() const noexcept { return amps_; }
    ComplexVector &amplitudes() noexcept { return amps_; }

    [[nodiscard]] Complex at(Index flag, Index tau, Index s) const {
        return amps_[layout_.offset(flag, tau) + s];
    }
    [[nodiscard]] double norm() const { return amps_.norm(); }

    /// Amplitudes of the system register for fixed flag and clock values.
    [[nodiscard]] ComplexVector systemSlice(Index flag = 0, Index tau = 0) const;
    /// Marginal probabilities of the system register.
    [[nodiscard]] RealVector systemProbabilities() const;
    /// Marginal probabilities of the clock register.
    [[nodiscard]] RealVector clockProbabilities() const;

  private:
    RegisterLayout layout_;
    ComplexVector amps_;
};

enum class PeMode { Multiply, Invert };
enum class ClockWindow { Sine, Rectangular };
enum class QftDirection { Forward, Inverse };

struct PhaseEstimationConfig {
    Index clockSize = 1024;
    double t0 = 0.0;
    double c = 1.0;
    PeMode mode = PeMode::Multiply;
    ClockWindow window = ClockWindow::Sine;
};

/// An embedded operator together with its spectral decomposition, computed
/// once and shared by every stage that evolves under it.
class SpectralOperator {
  public:
    explicit SpectralOperator(linalg::EmbeddedOperator op);

    [[nodiscard]] const linalg::EmbeddedOperator &op() const noexcept { return op_; }
    [[nodiscard]] const linalg::EigDecomposition &eig() const noexcept { return eig_; }
    [[nodiscard]] Index dim() const noexcept { return op_.dim(); }
    /// Largest and smallest nonzero |E_j|.
    [[nodiscard]] double sigmaMax() const noexcept { return sigmaMax_; }
    [[nodiscard]] double sigmaMin() const noexcept { return sigmaMin_; }

  private:
    linalg::EmbeddedOperator op_;
    linalg::EigDecomposition eig_;
    double sigmaMax_ = 0.0;
    double sigmaMin_ = 0.0;
};

/// Throws Error(Aliasing) or Error(RotationBound) when the config violates
/// the anti-aliasing or normalization constraints for `op`.
void validateConfig(const PhaseEstimationConfig &config, const SpectralOperator &op);

/// Mode-specific default: 1/sigmaMax for Multiply, sigmaMin for Invert.
double defaultRotationConstant(PeMode mode, const SpectralOperator &op);

/// t0 = 2 pi n / sigmaMax with n = round(kappa sigmaMax / eps) clamped to
/// [1, T/4], so sigmaMax sits on a bin and leakage stays clear of Nyquist.
double autoEvolutionTime(Index clockSize, double kappa, double epsilon,
                         double sigmaMax);

QuantumState prepareDataState(const fit::FitProblem &problem);

/// sqrt(2/T) sin(pi (tau + 1/2) / T), tau = 0..T-1.
RealVector prepareSineClock(Index clockSize);
RealVector clockWindow(Index clockSize, ClockWindow window);

/// Applies the unitary taking |0> to the window state on the clock register.
/// The unitary is a Householder reflection and so is its own adjoint.
QuantumState prepareClock(const QuantumState &state, ClockWindow window);

/// Clock branch tau gets exp(-i H tau t0 / T) (sign = +1) or its adjoint
/// (sign = -1) on the system register.
QuantumState conditionalEvolution(const QuantumState &state,
                                  const SpectralOperator &op, double t0,
                                  int sign = +1);

/// Forward kernel exp(2 pi i k tau / T) / sqrt(T); inverse is its adjoint.
QuantumState qftClock(const QuantumState &state, QftDirection direction);

/// Signed decode: k wraps to k - T for k >= T/2; returns 2 pi k / t0.
double decodeEigenvalue(Index k, Index clockSize, double t0);

/// Flag-|1> amplitude written for clock value k.
double rotationWeight(Index k, const PhaseEstimationConfig &config);

QuantumState controlledRotation(const QuantumState &state,
                                const PhaseEstimationConfig &config,
                                int flagQubit = 0);

/// Inverse QFT, inverse conditional evolution, inverse clock preparation.
QuantumState uncomputeClock(const QuantumState &state,
                            const SpectralOperator &op,
                            const PhaseEstimationConfig &config);

struct Postselected {
    QuantumState state;
    double successProbability = 0.0;
};

/// Projects flag qubit onto `value` and renormalizes. Throws
/// Error(EmptyPostselection) for a zero-probability branch.
Postselected postselectFlag(const QuantumState &state, int value = 1,
                            int flagQubit = 0);

/// Projects the clock onto |0>, renormalizes, and drops the clock register.
Postselected postselectClockZero(const QuantumState &state);

struct StageResult {
    ComplexVector output;             // normalized system state
    QuantumState finalState;          // after flag postselection, clock kept
    double flagProbability = 0.0;
    double clockReturnProbability = 0.0;
    double clockResidual = 0.0;       // 1 - clockReturnProbability
    double oracleFidelity = 0.0;      // vs normalized f(H) psi
    double oracleDistance = 0.0;
};

/// Full phase-estimation pass enacting f(H) psi / |f(H) psi|, f(E) = E
/// (Multiply) or the pseudo-inverse 1/E (Invert).
StageResult applyHermitianViaPE(const ComplexVector &psi,
                                const SpectralOperator &op,
                                const PhaseEstimationConfig &config);

struct SwapTestPlan {
    std::uint64_t shots = 10000;
    double delta = 0.01;
    std::uint64_t seed = 0;
};

struct SwapTestResult {
    std::uint64_t onesObserved = 0;
    std::uint64_t shots = 0;
    double exactPOne = 0.0;
    double pOneEstimate = 0.0;
    double overlapSqEstimate = 0.0;
    double stdError = 0.0;
};

/// Shots needed for accuracy delta: ceil(1/delta^2).
std::uint64_t shotsForDelta(double delta);

SwapTestResult swapTest(const ComplexVector &a, const ComplexVector &b,
                        const SwapTestPlan &plan);
/// Samples the ancilla outcome directly from a known |<a|b>|^2.
SwapTestResult swapTestFromOverlap(double overlapSq, const SwapTestPlan &plan);

/// Histogram of system-register outcomes.
std::vector<std::uint64_t> measureComputational(const QuantumState &state,
                                                std::uint64_t shots,
                                                std::uint64_t seed);
std::vector<std::uint64_t> sampleDistribution(const RealVector &probabilities,
                                              std::uint64_t shots,
                                              std::uint64_t seed);

std::string toString(PeMode mode);
std::string toString(ClockWindow window);
PeMode parsePeMode(const std::string &s);
ClockWindow parseClockWindow(const std::string &s);

}  // namespace qfit::qsim
