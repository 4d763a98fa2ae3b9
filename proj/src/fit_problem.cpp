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

#include "qfit/fit_problem.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "qfit/error.hpp"
#include "qfit/linalg.hpp"
#include "qfit/random.hpp"

namespace qfit::fit {

Complex FitBasis::evaluate(Index j, Complex x) const {
    switch (kind) {
    case BasisKind::Polynomial: {
        Complex v{1.0, 0.0};
        for (Index p = 0; p < j; ++p) {
            v *= x;
        }
        return v;
    }
    case BasisKind::Fourier:
        return std::exp(Complex{0.0, 2.0 * std::numbers::pi * static_cast<double>(j) / period} * x);
    case BasisKind::CustomMatrix:
        break;
    }
    throw Error(ErrorCode::InvalidArgument, "custom-matrix basis has no functional form");
}

ComplexVector DataSet::ordinates() const {
    ComplexVector y(size());
    for (Index i = 0; i < size(); ++i) {
        y[i] = points[static_cast<std::size_t>(i)].y;
    }
    return y;
}

ComplexMatrix buildDesignMatrix(const DataSet &data, const FitBasis &basis) {
    if (basis.m < 1) {
        throw Error(ErrorCode::InvalidArgument, "basis needs at least one function");
    }
    if (data.size() < 1) {
        throw Error(ErrorCode::InvalidArgument, "data set is empty");
    }
    if (basis.kind == BasisKind::Fourier && !(basis.period > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "Fourier period must be positive");
    }
    ComplexMatrix f(data.size(), basis.m);
    for (Index i = 0; i < data.size(); ++i) {
        const Complex x = data.points[static_cast<std::size_t>(i)].x;
        for (Index j = 0; j < basis.m; ++j) {
            const Complex v = basis.evaluate(j, x);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                throw Error(ErrorCode::InvalidArgument,
                            "non-finite basis evaluation at point " + std::to_string(i));
            }
            f(i, j) = v;
        }
    }
    return f;
}

FitProblem normalizeProblem(const ComplexMatrix &f, const ComplexVector &y) {
    linalg::requireFinite(f, "design matrix");
    if (y.size() != f.rows()) {
        throw Error(ErrorCode::InvalidArgument, "y length does not match F rows");
    }
    if (!y.allFinite()) {
        throw Error(ErrorCode::InvalidArgument, "y has non-finite entries");
    }
    const double yNorm = y.norm();
    if (!(yNorm > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "y is the zero vector");
    }
    const linalg::ConditionEstimate cond = linalg::conditionEstimate(f);

    FitProblem p;
    p.normScale.cF = 1.0 / cond.sigmaMax;
    p.normScale.cY = 1.0 / yNorm;
    p.designMatrix = f * p.normScale.cF;
    p.yVector = y * p.normScale.cY;
    p.basis.kind = BasisKind::CustomMatrix;
    p.basis.m = f.cols();
    p.dataSet.points.reserve(static_cast<std::size_t>(y.size()));
    for (Index i = 0; i < y.size(); ++i) {
        p.dataSet.points.push_back({Complex{static_cast<double>(i), 0.0}, y[i]});
    }
    return p;
}

FitProblem makeProblem(const DataSet &data, const FitBasis &basis) {
    FitProblem p = normalizeProblem(buildDesignMatrix(data, basis), data.ordinates());
    p.dataSet = data;
    p.basis = basis;
    return p;
}

FitSolution classicalFit(const ComplexMatrix &f, const ComplexVector &y) {
    if (y.size() != f.rows()) {
        throw Error(ErrorCode::InvalidArgument, "y length does not match F rows");
    }
    FitSolution s;
    s.lambda = linalg::pseudoinverse(f) * y;
    s.fittedVector = f * s.lambda;
    s.residualEnergy = (s.fittedVector - y).squaredNorm();
    return s;
}

FitSolution classicalFit(const FitProblem &problem) {
    return classicalFit(problem.designMatrix, problem.yVector);
}

FitSolution denormalize(const FitSolution &normalized, const NormScale &scale,
                        const ComplexMatrix &rawF, const ComplexVector &rawY) {
    FitSolution s;
    s.lambda = normalized.lambda * (scale.cF / scale.cY);
    s.fittedVector = rawF * s.lambda;
    s.residualEnergy = (s.fittedVector - rawY).squaredNorm();
    return s;
}

namespace {

/// Orthonormal columns from the QR of a complex Gaussian matrix, with the
/// R-diagonal phases divided out so the distribution is Haar.
ComplexMatrix randomIsometry(Index rows, Index cols, Rng &rng) {
    ComplexMatrix g(rows, cols);
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) {
            g(i, j) = rng.complexNormal();
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(rows, cols);
    const ComplexMatrix r = qr.matrixQR();
    for (Index j = 0; j < cols; ++j) {
        const Complex d = r(j, j);
        if (std::abs(d) > 0.0) {
            q.col(j) *= d / std::abs(d);
        }
    }
    return q;
}

ComplexVector plantedParameters(const GeneratorSpec &spec, Rng &rng) {
    const Index m = spec.m;
    ComplexVector lambda(m);
    if (spec.plantedSupport.empty()) {
        for (Index j = 0; j < m; ++j) {
            lambda[j] = rng.complexNormal();
        }
        return lambda;
    }
    std::vector<bool> inSupport(static_cast<std::size_t>(m), false);
    for (Index j : spec.plantedSupport) {
        inSupport[static_cast<std::size_t>(j)] = true;
    }
    // Weights in [0.5, 1.5] keep every in-support probability within a factor
    // 3 of the others, so the support stands clear of the rest.
    RealVector weight(m);
    double inTotal = 0.0;
    double outTotal = 0.0;
    for (Index j = 0; j < m; ++j) {
        weight[j] = 0.5 + rng.uniform();
        (inSupport[static_cast<std::size_t>(j)] ? inTotal : outTotal) += weight[j];
    }
    const bool fullSupport = outTotal == 0.0;
    const double inMass = fullSupport ? 1.0 : spec.plantedMass;
    for (Index j = 0; j < m; ++j) {
        const bool in = inSupport[static_cast<std::size_t>(j)];
        const double prob = in ? inMass * weight[j] / inTotal
                               : (1.0 - inMass) * weight[j] / outTotal;
        const double phase = 2.0 * std::numbers::pi * rng.uniform();
        lambda[j] = std::polar(std::sqrt(prob), phase);
    }
    return lambda;
}

void validateSpec(const GeneratorSpec &spec) {
    if (spec.m < 1 || spec.n < spec.m) {
        throw Error(ErrorCode::InvalidArgument, "generator needs N >= M >= 1");
    }
    if (!(spec.noise >= 0.0) || !std::isfinite(spec.noise)) {
        throw Error(ErrorCode::InvalidArgument, "noise must be finite and non-negative");
    }
    if (!spec.plantedSupport.empty()) {
        std::set<Index> unique(spec.plantedSupport.begin(), spec.plantedSupport.end());
        if (unique.size() != spec.plantedSupport.size()) {
            throw Error(ErrorCode::InvalidArgument, "planted support has duplicates");
        }
        if (*unique.begin() < 0 || *unique.rbegin() >= spec.m) {
            throw Error(ErrorCode::InvalidArgument, "planted support index out of range");
        }
        if (!(spec.plantedMass > 0.0 && spec.plantedMass <= 1.0)) {
            throw Error(ErrorCode::InvalidArgument, "planted mass must lie in (0, 1]");
        }
    }
    if (spec.conditionTarget && !(*spec.conditionTarget >= 1.0)) {
        throw Error(ErrorCode::Infeasible, "condition target must be at least 1");
    }
    if (spec.commensurateBins) {
        if (spec.kind != ProblemKind::Random) {
            throw Error(ErrorCode::InvalidArgument, "commensurate bins need the random kind");
        }
        if (*spec.commensurateBins < 1) {
            throw Error(ErrorCode::InvalidArgument, "commensurate bins must be positive");
        }
    }
}

}  // namespace

FitProblem generateProblem(const GeneratorSpec &spec, std::uint64_t seed) {
    validateSpec(spec);
    Rng rng(deriveSeed(seed, SeedStream::Problem));
    const Index n = spec.n;
    const Index m = spec.m;

    DataSet data;
    data.points.resize(static_cast<std::size_t>(n));
    FitBasis basis{BasisKind::CustomMatrix, m, 1.0};
    ComplexMatrix f;

    switch (spec.kind) {
    case ProblemKind::Identity:
        f = ComplexMatrix::Identity(n, m);
        for (Index i = 0; i < n; ++i) {
            data.points[static_cast<std::size_t>(i)].x = static_cast<double>(i);
        }
        break;
    case ProblemKind::Polynomial:
    case ProblemKind::Fourier:
        basis.kind = spec.kind == ProblemKind::Polynomial ? BasisKind::Polynomial
                                                         : BasisKind::Fourier;
        for (Index i = 0; i < n; ++i) {
            const double di = static_cast<double>(i);
            const double x = spec.kind == ProblemKind::Polynomial
                                 ? (n == 1 ? 0.0 : -1.0 + 2.0 * di / static_cast<double>(n - 1))
                                 : di / static_cast<double>(n);
            data.points[static_cast<std::size_t>(i)].x = x;
        }
        f = buildDesignMatrix(data, basis);
        break;
    case ProblemKind::Random: {
        const double kappa = spec.conditionTarget.value_or(4.0);
        RealVector sigma(m);
        for (Index j = 0; j < m; ++j) {
            sigma[j] = std::exp(-std::log(kappa) * rng.uniform());
        }
        sigma[0] = 1.0;
        if (m > 1) {
            sigma[m - 1] = 1.0 / kappa;
        }
        if (spec.commensurateBins) {
            const double bins = *spec.commensurateBins;
            for (Index j = 0; j < m; ++j) {
                sigma[j] = std::max(1.0, std::round(sigma[j] * bins)) / bins;
            }
        }
        const ComplexMatrix u = randomIsometry(n, m, rng);
        const ComplexMatrix v = randomIsometry(m, m, rng);
        f = u * sigma.cast<Complex>().asDiagonal() * v.adjoint();
        for (Index i = 0; i < n; ++i) {
            data.points[static_cast<std::size_t>(i)].x = static_cast<double>(i);
        }
        break;
    }
    }

    const linalg::ConditionEstimate cond = linalg::conditionEstimate(f);
    if (spec.conditionTarget && cond.kappa > *spec.conditionTarget * (1.0 + 1e-9)) {
        throw Error(ErrorCode::Infeasible,
                    "achieved condition number " + std::to_string(cond.kappa) +
                        " exceeds target " + std::to_string(*spec.conditionTarget));
    }

    const ComplexVector lambda = plantedParameters(spec, rng);
    ComplexVector noise(n);
    for (Index i = 0; i < n; ++i) {
        noise[i] = spec.noise * rng.complexNormal();
    }
    if (!spec.plantedSupport.empty()) {
        // Residual-only noise keeps the planted parameters the exact optimum.
        noise -= f * (linalg::pseudoinverse(f) * noise);
    }
    ComplexVector y = f * lambda + noise;
    if (y.norm() == 0.0) {
        y[0] = 1.0;
    }
    for (Index i = 0; i < n; ++i) {
        data.points[static_cast<std::size_t>(i)].y = y[i];
    }

    FitProblem p = normalizeProblem(f, y);
    p.dataSet = std::move(data);
    p.basis = basis;
    p.seed = seed;
    p.generator = spec;
    return p;
}

FitProblem restrictColumns(const FitProblem &problem, const std::vector<Index> &columns) {
    if (columns.empty()) {
        throw Error(ErrorCode::InvalidArgument, "no columns selected");
    }
    ComplexMatrix sub(problem.n(), static_cast<Index>(columns.size()));
    for (std::size_t k = 0; k < columns.size(); ++k) {
        const Index j = columns[k];
        if (j < 0 || j >= problem.m()) {
            throw Error(ErrorCode::InvalidArgument, "column index out of range");
        }
        sub.col(static_cast<Index>(k)) = problem.designMatrix.col(j);
    }
    FitProblem reduced = normalizeProblem(sub, problem.yVector);
    reduced.normScale.cF *= problem.normScale.cF;
    reduced.normScale.cY *= problem.normScale.cY;
    reduced.dataSet = problem.dataSet;
    reduced.seed = problem.seed;
    return reduced;
}

std::string toString(BasisKind kind) {
    switch (kind) {
    case BasisKind::Polynomial: return "polynomial";
    case BasisKind::Fourier: return "fourier";
    case BasisKind::CustomMatrix: return "customMatrix";
    }
    return "?";
}

std::string toString(ProblemKind kind) {
    switch (kind) {
    case ProblemKind::Identity: return "identity";
    case ProblemKind::Polynomial: return "poly";
    case ProblemKind::Fourier: return "fourier";
    case ProblemKind::Random: return "random";
    }
    return "?";
}

BasisKind parseBasisKind(const std::string &s) {
    if (s == "polynomial" || s == "poly") return BasisKind::Polynomial;
    if (s == "fourier") return BasisKind::Fourier;
    if (s == "customMatrix" || s == "custom") return BasisKind::CustomMatrix;
    throw Error(ErrorCode::InvalidArgument, "unknown basis kind '" + s + "'");
}

ProblemKind parseProblemKind(const std::string &s) {
    if (s == "identity") return ProblemKind::Identity;
    if (s == "poly" || s == "polynomial") return ProblemKind::Polynomial;
    if (s == "fourier") return ProblemKind::Fourier;
    if (s == "random") return ProblemKind::Random;
    throw Error(ErrorCode::InvalidArgument, "unknown problem kind '" + s + "'");
}

}  // namespace qfit::fit
