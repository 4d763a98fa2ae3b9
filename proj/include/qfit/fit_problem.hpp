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
#include <string>
#include <vector>

#include "qfit/types.hpp"

namespace qfit::fit {

enum class BasisKind { Polynomial, Fourier, CustomMatrix };

/// Fit functions f_j, j = 0..M-1.
///   Polynomial: f_j(x) = x^j
///   Fourier:    f_j(x) = exp(2 pi i j x / period)
///   CustomMatrix: F supplied directly, no evaluation.
struct FitBasis {
    BasisKind kind = BasisKind::Polynomial;
    Index m = 1;
    double period = 1.0;

    [[nodiscard]] Complex evaluate(Index j, Complex x) const;
};

struct DataPoint {
    Complex x;
    Complex y;
};

struct DataSet {
    std::vector<DataPoint> points;

    [[nodiscard]] Index size() const noexcept {
        return static_cast<Index>(points.size());
    }
    [[nodiscard]] ComplexVector ordinates() const;
};

/// Factors applied during normalization: F_norm = cF * F, y_norm = cY * y.
struct NormScale {
    double cF = 1.0;
    double cY = 1.0;
};

enum class ProblemKind { Identity, Polynomial, Fourier, Random };

struct GeneratorSpec {
    Index n = 2;
    Index m = 2;
    ProblemKind kind = ProblemKind::Identity;
    /// 0-based column indices carrying the planted mass.
    std::vector<Index> plantedSupport;
    double plantedMass = 1.0;
    /// Upper bound on sigmaMax/sigmaMin. Random kind builds to it, other
    /// kinds are checked against it.
    std::optional<double> conditionTarget;
    /// Random kind only: snap singular values to multiples of 1/bins.
    std::optional<int> commensurateBins;
    /// Standard deviation of the complex Gaussian noise per data entry.
    double noise = 0.1;
};

struct FitProblem {
    DataSet dataSet;
    FitBasis basis;
    ComplexMatrix designMatrix;   // normalized F, N x M
    ComplexVector yVector;        // normalized y, unit norm
    NormScale normScale;
    std::optional<std::uint64_t> seed;
    std::optional<GeneratorSpec> generator;

    [[nodiscard]] Index n() const noexcept { return designMatrix.rows(); }
    [[nodiscard]] Index m() const noexcept { return designMatrix.cols(); }
};

struct FitSolution {
    ComplexVector lambda;
    double residualEnergy = 0.0;
    ComplexVector fittedVector;
};

ComplexMatrix buildDesignMatrix(const DataSet &data, const FitBasis &basis);

/// Scales F so that ||F^dagger F|| = 1 and y to unit norm.
FitProblem normalizeProblem(const ComplexMatrix &f, const ComplexVector &y);

/// Evaluates the basis on the data and normalizes.
FitProblem makeProblem(const DataSet &data, const FitBasis &basis);

/// Least-squares optimum via the pseudoinverse.
FitSolution classicalFit(const ComplexMatrix &f, const ComplexVector &y);
FitSolution classicalFit(const FitProblem &problem);

/// Undoes normalization: lambda_orig = (cF/cY) lambda, E_orig = E / cY^2.
FitSolution denormalize(const FitSolution &normalized, const NormScale &scale,
                        const ComplexMatrix &rawF, const ComplexVector &rawY);

FitProblem generateProblem(const GeneratorSpec &spec, std::uint64_t seed);

/// Columns `columns` of the problem, renormalized. The returned scale maps
/// the original raw data to the reduced normalized problem.
FitProblem restrictColumns(const FitProblem &problem,
                           const std::vector<Index> &columns);

std::string toString(BasisKind kind);
std::string toString(ProblemKind kind);
BasisKind parseBasisKind(const std::string &s);
ProblemKind parseProblemKind(const std::string &s);

}  // namespace qfit::fit
