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

#include "qfit/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qfit/error.hpp"
#include "qfit/qsim.hpp"
#include "qfit/random.hpp"

namespace qfit::tomography {

namespace {

std::uint64_t ceilCount(double x) {
    // Absorbs rounding in products such as 2 / 0.1^2.
    return static_cast<std::uint64_t>(std::max(1.0, std::ceil(x - 1e-9)));
}

}  // namespace

TomographyBudget planBudget(Index mPrime, double epsilon, double settingsConstant,
                            double shotsConstant) {
    if (mPrime < 1) {
        throw Error(ErrorCode::InvalidArgument, "M' must be at least 1");
    }
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "epsilon must lie in (0, 1)");
    }
    if (!(settingsConstant > 0.0) || !(shotsConstant > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "budget constants must be positive");
    }
    const double m = static_cast<double>(mPrime);
    const double logTerm = std::log2(m) + 1.0;
    TomographyBudget b;
    b.epsilon = epsilon;
    b.settings = ceilCount(settingsConstant * m * logTerm * logTerm);
    b.shotsPerSetting = ceilCount(shotsConstant * m / (epsilon * epsilon));
    return b;
}

ComplexVector canonicalizePhase(const ComplexVector &v, double tolerance) {
    ComplexVector out = v;
    for (Index i = 0; i < out.size(); ++i) {
        const double mag = std::abs(out[i]);
        if (mag > tolerance) {
            out *= std::conj(out[i]) / mag;
            out[i] = mag;
            break;
        }
    }
    return out;
}

ReconstructedState reconstructPureState(const StateSource &source,
                                        const TomographyBudget &budget, std::uint64_t seed) {
    if (budget.shotsPerSetting == 0 || budget.settings == 0) {
        throw Error(ErrorCode::InvalidArgument, "tomography budget is empty");
    }
    const Index m = source().size();
    if (m < 1) {
        throw Error(ErrorCode::InvalidArgument, "state source yields an empty state");
    }

    // Setting types: computational basis, then (j, 0) and (j, pi/2) for every
    // j other than the reference. Settings are dealt round-robin over types.
    const std::uint64_t typeCount = 1 + 2 * static_cast<std::uint64_t>(m - 1);
    const std::uint64_t total = std::max<std::uint64_t>(budget.settings, typeCount);
    const auto repeatsOf = [&](std::uint64_t t) {
        return total / typeCount + (t < total % typeCount ? 1 : 0);
    };

    ReconstructedState r;
    r.budget = budget;
    r.budget.settings = total;
    std::uint64_t settingCounter = 0;

    const auto freshProbabilities = [&](const ComplexVector &psi) {
        RealVector p = psi.cwiseAbs2();
        return RealVector(p / p.sum());
    };

    // Computational-basis settings.
    RealVector zCounts = RealVector::Zero(m);
    for (std::uint64_t rep = 0; rep < repeatsOf(0); ++rep) {
        const ComplexVector psi = source();
        SettingRecord rec;
        rec.kind = SettingKind::Computational;
        rec.counts = qsim::sampleDistribution(freshProbabilities(psi), budget.shotsPerSetting,
                                              deriveSeed(seed, ++settingCounter));
        for (Index i = 0; i < m; ++i) {
            zCounts[i] += static_cast<double>(rec.counts[static_cast<std::size_t>(i)]);
        }
        r.settings.push_back(std::move(rec));
    }
    const RealVector pHat = zCounts / zCounts.sum();
    Index ref = 0;
    for (Index i = 1; i < m; ++i) {
        if (pHat[i] > pHat[ref]) {
            ref = i;
        }
    }
    r.referenceIndex = ref;
    if (std::sqrt(pHat[ref]) < 10.0 * budget.epsilon) {
        throw Error(ErrorCode::IllConditionedReference,
                    "reference amplitude below 10 eps; phase readout is ill-conditioned");
    }

    // Relative phases against the reference: c_j ~ conj(a_ref) a_j.
    ComplexVector correlation = ComplexVector::Zero(m);
    std::uint64_t typeIndex = 1;
    for (Index j = 0; j < m; ++j) {
        if (j == ref) {
            continue;
        }
        for (double phase : {0.0, std::numbers::pi / 2.0}) {
            double diff = 0.0;
            double shots = 0.0;
            for (std::uint64_t rep = 0; rep < repeatsOf(typeIndex); ++rep) {
                const ComplexVector raw = source();
                const ComplexVector psi = raw / raw.norm();
                const Complex rotated = std::polar(1.0, -phase) * psi[j];
                RealVector outcome(3);
                outcome[0] = std::norm(psi[ref] + rotated) / 2.0;
                outcome[1] = std::norm(psi[ref] - rotated) / 2.0;
                outcome[2] = std::max(0.0, 1.0 - outcome[0] - outcome[1]);
                SettingRecord rec;
                rec.kind = SettingKind::Interference;
                rec.index = j;
                rec.reference = ref;
                rec.phase = phase;
                rec.counts = qsim::sampleDistribution(outcome, budget.shotsPerSetting,
                                                      deriveSeed(seed, ++settingCounter));
                diff += static_cast<double>(rec.counts[0]) - static_cast<double>(rec.counts[1]);
                shots += static_cast<double>(budget.shotsPerSetting);
                r.settings.push_back(std::move(rec));
            }
            const double mean = diff / shots;
            correlation[j] += phase == 0.0 ? Complex{mean / 2.0, 0.0} : Complex{0.0, mean / 2.0};
            ++typeIndex;
        }
    }

    ComplexVector amps(m);
    for (Index j = 0; j < m; ++j) {
        const double mag = std::sqrt(pHat[j]);
        if (j == ref) {
            amps[j] = mag;
        } else if (std::abs(correlation[j]) > 0.0) {
            amps[j] = std::polar(mag, std::arg(correlation[j]));
        } else {
            amps[j] = mag;
        }
    }
    r.amplitudes = canonicalizePhase(amps / amps.norm());
    return r;
}

std::string toString(SettingKind kind) {
    return kind == SettingKind::Computational ? "computational" : "interference";
}

}  // namespace qfit::tomography
