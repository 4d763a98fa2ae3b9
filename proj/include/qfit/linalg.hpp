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

#include <functional>
#include <optional>

#include "qfit/types.hpp"

namespace qfit::linalg {

/// Eigenvalue magnitudes below this (relative to 1) count as zero.
inline constexpr double kZeroEigenvalueTolerance = 1e-10;
/// Smallest singular value accepted as nonsingular.
inline constexpr double kSingularityTolerance = 1e-12;
/// Default cap on M+N for the embedded operator.
inline constexpr Index kDefaultMaxSystemDim = 256;

/// Hermitian operator [[0, F^dagger], [F, 0]] on C^{M+N}. Parameter sector
/// occupies indices [0, M), data sector [M, M+N).
struct EmbeddedOperator {
    ComplexMatrix matrix;
    Index paramDim = 0;
    Index dataDim = 0;

    [[nodiscard]] Index dim() const noexcept { return paramDim + dataDim; }
};

struct EigDecomposition {
    RealVector eigenvalues;        // ascending
    ComplexMatrix eigenvectors;    // columns, orthonormal
    std::optional<ComplexVector> inputCoefficients;
};

struct SparsityProfile {
    Index s = 0;    // max nonzeros in any row or column
    Index nnz = 0;
};

struct ConditionEstimate {
    double kappa = 1.0;
    double sigmaMax = 0.0;
    double sigmaMin = 0.0;
};

using SpectralFunction = std::function<double(double)>;

namespace spectral {
SpectralFunction identity();
SpectralFunction linear();
/// 1/E with zero eigenvalues mapped to 0.
SpectralFunction pseudoInverse(double tolerance = kZeroEigenvalueTolerance);
}  // namespace spectral

/// Throws Error(InvalidArgument) on empty or non-finite input.
void requireFinite(const ComplexMatrix &m, const char *what);

EmbeddedOperator embed(const ComplexMatrix &f,
                       Index maxSystemDim = kDefaultMaxSystemDim);

/// (F^dagger F)^{-1} F^dagger; throws Error(Singular) when F^dagger F is not
/// invertible.
ComplexMatrix pseudoinverse(const ComplexMatrix &f);

/// Eigenvalues ascending. Each eigenvector is rephased so its largest
/// magnitude component (lowest index on ties) is real and positive.
EigDecomposition eigHermitian(const ComplexMatrix &h);
EigDecomposition eigHermitian(const EmbeddedOperator &h);

/// Fills inputCoefficients with <mu_j|v>.
EigDecomposition decompose(EigDecomposition eig, const ComplexVector &v);

ComplexVector applyMatrixFunctionExact(const EigDecomposition &eig,
                                       const SpectralFunction &f,
                                       const ComplexVector &v);
ComplexVector applyMatrixFunctionExact(const EmbeddedOperator &h,
                                       const SpectralFunction &f,
                                       const ComplexVector &v);

RealVector singularValues(const ComplexMatrix &f);

/// Throws Error(IllPosed) when sigmaMin < kSingularityTolerance.
ConditionEstimate conditionEstimate(const ComplexMatrix &f);

SparsityProfile sparsityProfile(const ComplexMatrix &f, double tolerance = 0.0);

/// |<a|b>|^2 / (|a|^2 |b|^2).
double fidelity(const ComplexVector &a, const ComplexVector &b);

}  // namespace qfit::linalg
