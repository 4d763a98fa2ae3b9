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

#include "qfit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qfit/error.hpp"

namespace qfit::linalg {

namespace spectral {

SpectralFunction identity() {
    return [](double) { return 1.0; };
}

SpectralFunction linear() {
    return [](double e) { return e; };
}

SpectralFunction pseudoInverse(double tolerance) {
    return [tolerance](double e) { return std::abs(e) < tolerance ? 0.0 : 1.0 / e; };
}

}  // namespace spectral

void requireFinite(const ComplexMatrix &m, const char *what) {
    if (m.rows() < 1 || m.cols() < 1) {
        throw Error(ErrorCode::InvalidArgument, std::string(what) + " is empty");
    }
    if (!m.allFinite()) {
        throw Error(ErrorCode::InvalidArgument,
                    std::string(what) + " has non-finite entries");
    }
}

EmbeddedOperator embed(const ComplexMatrix &f, Index maxSystemDim) {
    requireFinite(f, "design matrix");
    const Index n = f.rows();
    const Index m = f.cols();
    if (m + n > maxSystemDim) {
        throw Error(ErrorCode::DimensionOverflow,
                    "embedded dimension " + std::to_string(m + n) +
                        " exceeds cap " + std::to_string(maxSystemDim));
    }
    EmbeddedOperator h;
    h.paramDim = m;
    h.dataDim = n;
    h.matrix = ComplexMatrix::Zero(m + n, m + n);
    h.matrix.topRightCorner(m, n) = f.adjoint();
    h.matrix.bottomLeftCorner(n, m) = f;
    return h;
}

RealVector singularValues(const ComplexMatrix &f) {
    requireFinite(f, "matrix");
    Eigen::JacobiSVD<ComplexMatrix> svd(f);
    return svd.singularValues();
}

ConditionEstimate conditionEstimate(const ComplexMatrix &f) {
    const RealVector sv = singularValues(f);
    ConditionEstimate c;
    c.sigmaMax = sv.maxCoeff();
    // With N < M, F^dagger F has rank <= N and a zero eigenvalue.
    c.sigmaMin = f.rows() < f.cols() ? 0.0 : sv.minCoeff();
    if (c.sigmaMin < kSingularityTolerance) {
        throw Error(ErrorCode::IllPosed,
                    "smallest singular value " + std::to_string(c.sigmaMin) +
                        " is below tolerance; the fit has a degenerate direction");
    }
    c.kappa = c.sigmaMax / c.sigmaMin;
    return c;
}

ComplexMatrix pseudoinverse(const ComplexMatrix &f) {
    requireFinite(f, "matrix");
    const RealVector sv = singularValues(f);
    if (f.rows() < f.cols() || sv.minCoeff() < kSingularityTolerance) {
        throw Error(ErrorCode::Singular,
                    "F^dagger F is singular: degenerate direction of the quadratic form");
    }
    const ComplexMatrix gram = f.adjoint() * f;
    Eigen::LDLT<ComplexMatrix> ldlt(gram);
    if (ldlt.info() != Eigen::Success) {
        throw Error(ErrorCode::Singular, "F^dagger F factorization failed");
    }
    return ldlt.solve(f.adjoint());
}

namespace {

void fixPhases(ComplexMatrix &vectors) {
    for (Index j = 0; j < vectors.cols(); ++j) {
        auto col = vectors.col(j);
        const double maxAbs = col.cwiseAbs().maxCoeff();
        Index pivot = 0;
        // Lowest index within rounding of the max keeps the choice stable.
        for (Index i = 0; i < col.size(); ++i) {
            if (std::abs(col[i]) >= maxAbs * (1.0 - 1e-9)) {
                pivot = i;
                break;
            }
        }
        const Complex a = col[pivot];
        if (std::abs(a) > 0.0) {
            col *= std::conj(a) / std::abs(a);
            col[pivot] = std::abs(col[pivot]);
        }
    }
}

}  // namespace

EigDecomposition eigHermitian(const ComplexMatrix &h) {
    requireFinite(h, "operator");
    if (h.rows() != h.cols()) {
        throw Error(ErrorCode::InvalidArgument, "operator is not square");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::ConvergenceFailure, "Hermitian eigensolver did not converge");
    }
    EigDecomposition eig;
    eig.eigenvalues = solver.eigenvalues();
    eig.eigenvectors = solver.eigenvectors();
    fixPhases(eig.eigenvectors);
    return eig;
}

EigDecomposition eigHermitian(const EmbeddedOperator &h) {
    return eigHermitian(h.matrix);
}

EigDecomposition decompose(EigDecomposition eig, const ComplexVector &v) {
    eig.inputCoefficients = eig.eigenvectors.adjoint() * v;
    return eig;
}

ComplexVector applyMatrixFunctionExact(const EigDecomposition &eig,
                                       const SpectralFunction &f,
                                       const ComplexVector &v) {
    ComplexVector beta = eig.eigenvectors.adjoint() * v;
    for (Index j = 0; j < beta.size(); ++j) {
        beta[j] *= f(eig.eigenvalues[j]);
    }
    return eig.eigenvectors * beta;
}

ComplexVector applyMatrixFunctionExact(const EmbeddedOperator &h,
                                       const SpectralFunction &f,
                                       const ComplexVector &v) {
    return applyMatrixFunctionExact(eigHermitian(h), f, v);
}

SparsityProfile sparsityProfile(const ComplexMatrix &f, double tolerance) {
    SparsityProfile p;
    Eigen::ArrayXi rowCount = Eigen::ArrayXi::Zero(f.rows());
    Eigen::ArrayXi colCount = Eigen::ArrayXi::Zero(f.cols());
    for (Index i = 0; i < f.rows(); ++i) {
        for (Index j = 0; j < f.cols(); ++j) {
            if (std::abs(f(i, j)) > tolerance) {
                ++rowCount[i];
                ++colCount[j];
                ++p.nnz;
            }
        }
    }
    p.s = std::max(rowCount.maxCoeff(), colCount.maxCoeff());
    return p;
}

double fidelity(const ComplexVector &a, const ComplexVector &b) {
    const double na = a.squaredNorm();
    const double nb = b.squaredNorm();
    if (na == 0.0 || nb == 0.0) {
        return 0.0;
    }
    return std::norm(a.dot(b)) / (na * nb);
}

}  // namespace qfit::linalg
